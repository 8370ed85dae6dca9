"""Rewrite tests/golden/*.out from the current CLI.

Usage: python3 scripts/regen_goldens.py [name ...]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from golden import GOLDEN_DIR, load_commands, run_command  # noqa: E402


def main(names):
    for cmd in load_commands():
        if names and cmd["name"] not in names:
            continue
        code, out = run_command(cmd)
        if code != cmd.get("exit", 0):
            print(f"{cmd['name']}: exit {code}, expected {cmd.get('exit', 0)}", file=sys.stderr)
            return 1
        (GOLDEN_DIR / f"{cmd['name']}.out").write_bytes(out)
        print(f"wrote {cmd['name']}.out ({len(out)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
