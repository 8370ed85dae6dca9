"""Command-line interface.

Every subcommand writes one JSON document (or a CSV table for ``sweep``) to
stdout. Exit codes: 0 success, 1 invalid input (degenerate ensemble, bad
operator, ...), 2 usage error. Errors are reported on stdout as
``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import serialize as ser
from .errors import EmptyRange, WeakGeomError
from .extremal import extremal_imag_projectors, extremal_real_projectors
from .hermitian import HermitianOp, Ket, ket_from_bloch, projector
from .noise import (
    ChannelKind,
    Component,
    NoiseChannel,
    apply_channel,
    expected_noisy_weak,
    infer_p,
    optimal_noise_probe,
)
from .qunit import build_frame, conjecture_scan
from .sampling import random_pair
from .weak import PPSEnsemble, decompose_weak, k_line, make_ensemble, weak_value

NAMED_OPS = {
    "I": np.eye(2),
    "identity": np.eye(2),
    "X": [[0, 1], [1, 0]],
    "sigma_x": [[0, 1], [1, 0]],
    "Y": [[0, -1j], [1j, 0]],
    "sigma_y": [[0, -1j], [1j, 0]],
    "Z": [[1, 0], [0, -1]],
    "sigma_z": [[1, 0], [0, -1]],
}
ENSEMBLE_OPS = ("gamma", "gamma_perp", "h_plus", "h_minus")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input resolution ---------------------------------------------------------


def _load_input(args) -> dict:
    src = getattr(args, "input", None)
    if not src:
        return {}
    text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WeakGeomError(f"input is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise WeakGeomError("input document must be a JSON object")
    return doc


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise WeakGeomError(f"{what} is not valid JSON: {exc}") from None


def _state(args, doc, which: str, default: str | None = None) -> Ket:
    inline = getattr(args, f"{which}_json", None)
    if inline is not None:
        return ser.ket_from_json(_json_arg(inline, f"--{which}-json"))
    name = getattr(args, which, None)
    if name is not None:
        return ser.parse_state(name)
    if which in doc:
        return ser.ket_from_json(doc[which])
    if default is not None:
        return ser.parse_state(default)
    raise UsageError(f"missing --{which} (or --{which}-json)")


def _ensemble(args, doc) -> PPSEnsemble:
    return make_ensemble(_state(args, doc, "pre"), _state(args, doc, "post"))


def resolve_op(name: str, e: PPSEnsemble | None = None) -> HermitianOp:
    if name in NAMED_OPS:
        return HermitianOp(np.array(NAMED_OPS[name], dtype=complex))
    if name.startswith("proj:"):
        return projector(ser.parse_state(name[5:]))
    if name in ENSEMBLE_OPS:
        if e is None:
            raise WeakGeomError(f"operator {name!r} needs a valid ensemble")
        if name == "gamma":
            return projector(e.gamma)
        if name == "gamma_perp":
            return projector(e.gamma_perp)
        rep = extremal_real_projectors(e)
        return rep.h_plus if name == "h_plus" else rep.h_minus
    known = ", ".join(list(NAMED_OPS) + list(ENSEMBLE_OPS) + ["proj:<state>"])
    raise WeakGeomError(f"unknown operator {name!r}; expected one of {known}")


def _op(args, doc, e=None, default=None) -> HermitianOp:
    if getattr(args, "op_json", None) is not None:
        return ser.op_from_json(_json_arg(args.op_json, "--op-json"))
    if getattr(args, "op", None) is not None:
        return resolve_op(args.op, e)
    if "op" in doc:
        obj = doc["op"]
        return resolve_op(obj, e) if isinstance(obj, str) else ser.op_from_json(obj)
    if default is not None:
        return resolve_op(default, e)
    raise UsageError("missing --op (or --op-json)")


# -- subcommands --------------------------------------------------------------


def _ensemble_doc(e: PPSEnsemble) -> dict:
    return {
        "pre": ser.ket_to_json(e.pre),
        "post": ser.ket_to_json(e.post),
        "overlap": ser.complex_to_json(e.overlap),
        "omega": ser.fmt_float(e.omega),
    }


def cmd_weak(args, doc):
    e = _ensemble(args, doc)
    m = _op(args, doc, e)
    out = {"weak_value": ser.complex_to_json(weak_value(e, m)), "op": ser.op_to_json(m)}
    out.update(_ensemble_doc(e))
    return out


def cmd_decompose(args, doc):
    e = _ensemble(args, doc)
    d = decompose_weak(e, _op(args, doc, e))
    return {
        "trace": ser.fmt_float(d.trace),
        "s": ser.fmt_float(d.s),
        "a": ser.fmt_float(d.a),
        "omega": ser.fmt_float(d.omega),
        "weak_value": ser.complex_to_json(d.weak_value),
    }


def cmd_extremal(args, doc):
    e = _ensemble(args, doc)
    rep = extremal_real_projectors(e)
    im = extremal_imag_projectors(e)
    return {
        "h_plus": ser.op_to_json(rep.h_plus),
        "h_minus": ser.op_to_json(rep.h_minus),
        "w_plus": ser.complex_to_json(rep.w_plus),
        "w_minus": ser.complex_to_json(rep.w_minus),
        "bound": ser.fmt_float(rep.bound),
        "gamma_proj": ser.op_to_json(im.gamma_proj),
        "gamma_perp_proj": ser.op_to_json(im.gamma_perp_proj),
        "w_gamma": ser.complex_to_json(im.w_gamma),
        "w_gamma_perp": ser.complex_to_json(im.w_gamma_perp),
        "imag_extreme": ser.fmt_float(im.w_gamma.imag),
        "imag_extreme_unhalved": ser.fmt_float(e.tan_half_omega),
        "imag_note": (
            "attained extreme of Im W over projectors is tan(omega/2)/2 (imag_extreme); "
            "the unhalved tan(omega/2) is not attained by any projector"
        ),
        "omega": ser.fmt_float(e.omega),
    }


def _channel(args, doc) -> NoiseChannel:
    chan = doc.get("channel", {})
    kind = args.kind or chan.get("kind")
    p = args.p if args.p is not None else chan.get("p")
    if kind is None or p is None:
        raise UsageError("need --kind and --p (or a 'channel' object in --input)")
    ground = _state(args, doc, "ground", default="0")
    return NoiseChannel(ChannelKind(kind), float(p), ground)


def cmd_noise_apply(args, doc):
    ch = _channel(args, doc)
    rho = apply_channel(ch, _state(args, doc, "pre"))
    return {
        "channel": {"kind": ch.kind.value, "p": ser.fmt_float(ch.p)},
        "physical": ch.is_physical,
        "rho": ser.op_to_json(rho.op),
        "eigen": {
            "p": ser.fmt_float(rho.p),
            "phi": ser.ket_to_json(rho.phi),
            "phi_perp": ser.ket_to_json(rho.phi_perp),
        },
    }


def cmd_noise_infer(args, doc):
    pre, post = _state(args, doc, "pre"), _state(args, doc, "post")
    e = make_ensemble(pre, post)
    m = _op(args, doc, e, default="gamma")
    kind = args.kind or doc.get("channel", {}).get("kind")
    if kind is None:
        raise UsageError("missing --kind")
    re_, im_ = args.observed_re, args.observed_im
    if "observed" in doc and re_ is None and im_ is None:
        z = ser.complex_from_json(doc["observed"])
        re_, im_ = z.real, z.imag
    if re_ is None and im_ is None:
        raise UsageError("need --observed-re and/or --observed-im")
    if re_ is not None and im_ is not None:
        component, observed = Component.FULL, complex(re_, im_)
    elif re_ is not None:
        component, observed = Component.REAL, complex(re_, 0.0)
    else:
        component, observed = Component.IMAG, complex(0.0, im_)
    ground = _state(args, doc, "ground", default="0")
    est = infer_p(ChannelKind(kind), pre, post, m, observed, component, ground)
    return {
        "p_hat": ser.fmt_float(est.p_hat),
        "residual": ser.fmt_float(est.residual),
        "component": est.component.value,
        "kind": ChannelKind(kind).value,
        "observable": ser.op_to_json(est.observable_used),
    }


def cmd_probe(args, doc):
    probe, why = optimal_noise_probe(_state(args, doc, "pre"), _state(args, doc, "post"), args.p)
    return {
        "probe": ser.op_to_json(probe),
        "preferred": why.preferred,
        "re_slope_h_plus": ser.fmt_float(why.re_slope_h_plus),
        "im_slope_gamma": ser.fmt_float(why.im_slope_gamma),
        "p": ser.fmt_float(why.p),
    }


def cmd_scan(args, doc):
    n = args.dim
    # independent of the stream that completes the bases inside build_frame
    rng = np.random.default_rng(np.random.SeedSequence(args.seed).spawn(1)[0])
    if args.pre_json is not None or args.post_json is not None or "pre" in doc:
        pre, post = _state(args, doc, "pre"), _state(args, doc, "post")
    else:
        pre, post = random_pair(rng, n, margin=1e-3)
    frame = build_frame(pre, post, n, seed=args.seed)
    rep = conjecture_scan(frame, args.trials, args.seed, args.threshold, args.pairs)
    return {
        "dim": rep.dim,
        "seed": rep.seed,
        "trials": rep.trials,
        "pairs": rep.pairs,
        "threshold": ser.fmt_float(rep.threshold),
        "pre": ser.ket_to_json(pre),
        "post": ser.ket_to_json(post),
        "r_dim": rep.r_dim,
        "real_locus_dim": rep.real_locus_dim,
        "orthogonal_pairs": rep.orthogonal_pairs,
        "skipped_near_r": rep.skipped_near_r,
        "max_imag_in_r": ser.fmt_float(rep.max_imag_in_r),
        "min_max_imag_off_r": ser.fmt_float(rep.min_max_imag_off_r),
        "candidate_count": len(rep.candidate_counterexamples),
        "candidate_counterexamples": [
            {"op": ser.op_to_json(op), "max_imag": ser.fmt_float(v), "source": src}
            for op, v, src in rep.candidate_counterexamples
        ],
    }


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid start, start+step, ..., stop."""
    if not step > 0 or stop < start:
        raise EmptyRange(f"empty range [{start}, {stop}] with step {step}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _rotated_pre(post: Ket, pre: Ket, angle: float) -> Ket:
    """State at Bloch angle ``angle`` from ``post``, in the plane of ``post`` and ``pre``."""
    r = post.bloch
    u = pre.bloch - (pre.bloch @ r) * r
    if np.linalg.norm(u) < 1e-9:
        u = np.cross(r, [0.0, 1.0, 0.0])
        if np.linalg.norm(u) < 1e-9:
            u = np.cross(r, [1.0, 0.0, 0.0])
    u /= np.linalg.norm(u)
    return ket_from_bloch(np.cos(angle) * r + np.sin(angle) * u)


def sweep_rows(args, doc) -> tuple[str, list[tuple[float, complex]]]:
    pre = _state(args, doc, "pre", default="+")
    post = _state(args, doc, "post", default="0")
    values = grid(args.start, args.stop, args.step)
    rows = []
    if args.param == "p":
        e = make_ensemble(pre, post)
        m = _op(args, doc, e, default="gamma")
        kind = ChannelKind(args.kind or "depolarizing")
        ground = _state(args, doc, "ground", default="0")
        for p in values:
            rows.append((p, expected_noisy_weak(NoiseChannel(kind, float(p), ground), pre, post, m)))
    elif args.param == "angle":
        for theta in values:
            e = make_ensemble(_rotated_pre(post, pre, float(theta)), post)
            rows.append((theta, weak_value(e, _op(args, doc, e, default="gamma"))))
    else:
        e = make_ensemble(pre, post)
        for v in values:
            s, a = (v, args.a) if args.param == "s" else (args.s, v)
            point = k_line(e, s, a).base.op
            rows.append((v, weak_value(e, point)))
    return args.param, rows


def cmd_sweep(args, doc):
    name, rows = sweep_rows(args, doc)
    if args.format == "json":
        return {
            "parameter": name,
            "rows": [[ser.fmt_float(x), *ser.complex_to_json(w)] for x, w in rows],
        }
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([name, "re", "im"])
    for x, w in rows:
        writer.writerow([repr(v) for v in (ser.fmt_float(x), *ser.complex_to_json(w))])
    return buf.getvalue()


# -- parser -------------------------------------------------------------------


def _add_ensemble(p):
    p.add_argument("--pre", help="pre-selected state shorthand: 0 1 + - +i -i")
    p.add_argument("--post", help="post-selected state shorthand")
    p.add_argument("--pre-json", help="pre-selected ket as JSON [[re, im], ...]")
    p.add_argument("--post-json", help="post-selected ket as JSON")
    p.add_argument("--input", help="JSON document file, or - for stdin")


def _add_op(p, flag_alias=None):
    names = ["--op"] + ([flag_alias] if flag_alias else [])
    p.add_argument(*names, dest="op", help="named operator (sigma_x, gamma, h_plus, proj:+, ...)")
    p.add_argument("--op-json", help="operator as JSON matrix or {trace, bloch}")


def _add_ground(p):
    p.add_argument("--ground", help="amplitude-damping fixed state (default 0)")
    p.add_argument("--ground-json", help="amplitude-damping fixed state as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weakgeom", description="Geometry of qubit weak values.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("weak", help="weak value of an operator")
    _add_ensemble(p)
    _add_op(p)
    p.set_defaults(func=cmd_weak)

    p = sub.add_parser("decompose", help="trace / s / a / omega decomposition")
    _add_ensemble(p)
    _add_op(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("extremal", help="projectors with extreme real and imaginary weak values")
    _add_ensemble(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("noise-apply", help="apply a noise channel to the pre-selected state")
    _add_ensemble(p)
    _add_ground(p)
    p.add_argument("--kind", choices=[k.value for k in ChannelKind])
    p.add_argument("--p", type=float)
    p.set_defaults(func=cmd_noise_apply)

    p = sub.add_parser("noise-infer", help="estimate the noise parameter from an observed weak value")
    _add_ensemble(p)
    _add_op(p, "--probe")
    _add_ground(p)
    p.add_argument("--kind", choices=[k.value for k in ChannelKind])
    p.add_argument("--observed-re", type=float)
    p.add_argument("--observed-im", type=float)
    p.set_defaults(func=cmd_noise_infer)

    p = sub.add_parser("probe", help="most noise-sensitive projector for depolarizing noise")
    _add_ensemble(p)
    p.add_argument("--p", type=float, default=0.0, help="noise level at which slopes are taken")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("scan", help="search for counterexamples to the qunit real-locus conjecture")
    _add_ensemble(p)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=1e-9)
    p.add_argument("--pairs", choices=["all", "origin"], default="all")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", help="tabulate a weak value over a parameter grid")
    _add_ensemble(p)
    _add_op(p, "--probe")
    _add_ground(p)
    p.add_argument("--param", choices=["p", "angle", "s", "a"], required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--kind", choices=[k.value for k in ChannelKind])
    p.add_argument("--s", type=float, default=0.0, help="fixed s when sweeping a")
    p.add_argument("--a", type=float, default=0.0, help="fixed a when sweeping s")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    out = sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args, _load_input(args))
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        out.write(ser.dumps(ser.error_doc("usage", str(exc))))
        return 2
    except (WeakGeomError, ValueError, OSError) as exc:
        code = getattr(exc, "code", "invalid_input")
        print(f"error: {exc}", file=sys.stderr)
        out.write(ser.dumps(ser.error_doc(code, str(exc))))
        return 1
    out.write(result if isinstance(result, str) else ser.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
