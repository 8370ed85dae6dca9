"""JSON encodings shared by the CLI.

Complex numbers are ``[re, im]`` pairs, kets are lists of complex numbers and
operators are row-major matrices of complex numbers. Operators are also read
from ``{"trace": t, "bloch": [x, y, z]}``. Floats are written with 15
significant digits; magnitudes below ``SNAP`` print as 0 so that outputs do
not depend on last-bit rounding.
"""

import json
import math
import re

import numpy as np

from .errors import WeakGeomError
from .hermitian import HermitianOp, Ket, make_ket

SNAP = 1e-14

STATE_SHORTHANDS = {
    "0": (1, 0),
    "1": (0, 1),
    "+": (1, 1),
    "-": (1, -1),
    "−": (1, -1),
    "+i": (1, 1j),
    "-i": (1, -1j),
    "−i": (1, -1j),
}


def fmt_float(x: float):
    """Round for output; non-finite values become None (JSON null)."""
    x = float(x)
    if not math.isfinite(x):
        return None
    if abs(x) < SNAP:
        return 0.0
    return float(f"{x:.15g}") + 0.0  # + 0.0 turns -0.0 into 0.0


def complex_to_json(z) -> list:
    z = complex(z)
    return [fmt_float(z.real), fmt_float(z.imag)]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise WeakGeomError(f"cannot read complex number from {obj!r}")


def ket_to_json(k: Ket) -> list:
    return [complex_to_json(c) for c in k.amplitudes]


def ket_from_json(obj) -> Ket:
    if isinstance(obj, str):
        return parse_state(obj)
    if not isinstance(obj, (list, tuple)):
        raise WeakGeomError(f"cannot read ket from {obj!r}")
    return make_ket([complex_from_json(c) for c in obj])


def parse_state(name: str) -> Ket:
    try:
        return make_ket(STATE_SHORTHANDS[name.strip()])
    except KeyError:
        known = ", ".join(k for k in STATE_SHORTHANDS if k.isascii())
        raise WeakGeomError(f"unknown state {name!r}; expected one of {known}") from None


def op_to_json(op: HermitianOp) -> list:
    return [[complex_to_json(c) for c in row] for row in op.matrix]


def op_from_json(obj) -> HermitianOp:
    if isinstance(obj, dict):
        if set(obj) != {"trace", "bloch"}:
            raise WeakGeomError("operator object needs exactly 'trace' and 'bloch'")
        return HermitianOp.from_bloch(float(obj["trace"]), [float(b) for b in obj["bloch"]])
    if not isinstance(obj, (list, tuple)) or not obj:
        raise WeakGeomError(f"cannot read operator from {obj!r}")
    rows = [[complex_from_json(c) for c in row] for row in obj]
    if len({len(r) for r in rows}) != 1:
        raise WeakGeomError("operator rows have unequal length")
    return HermitianOp(np.array(rows))


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}\"]*?)\s+\]")
_LIST_OF_FLAT = re.compile(r"\[\s+((?:\[[^\[\]]*\],?\s*)+?)\s*\]")


def _join(body: str) -> str:
    return "[" + re.sub(r",\s+", ", ", body.strip()) + "]"


def dumps(obj) -> str:
    """Indented JSON; scalar arrays and arrays of them (kets, matrix rows) stay on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False)
    text = _FLAT_LIST.sub(lambda m: _join(m.group(1)), text)
    text = _LIST_OF_FLAT.sub(lambda m: _join(m.group(1)), text)
    return text + "\n"


def error_doc(code: str, message: str) -> dict:
    return {"error": {"code": code, "message": message}}
