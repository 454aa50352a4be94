"""Command-line front end.

Exit codes: 0 when every check passed, 2 when checks ran and failed, 1 for
usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .cayley import pick_from_schur, schur_from_pick
from .config import RunConfig
from .demos import DEMOS, run_demo
from .errors import FacialError, VanishingConditionFailed
from .expr import PICK, SCHUR, decode_complex
from .geometry import FacePoint, Space
from .interp import Mode, solve, solve_schur, wellposedness_scan
from .julia import AngularData, angular_derivative, augment, predicted_derivative, reduce
from .verify import boundary_value, caratheodory_quotient, certify_c_point, face_report, verify_solution

OK, USAGE, FAILED = 0, 1, 2

DEFAULT_FACE_SAMPLES = {Space.DISK: (0.0, 0.5, -0.3j), Space.HALFPLANE: (1j, 2j, 1 + 1j)}


class UsageError(Exception):
    pass


def _config(args, mode=None) -> RunConfig:
    kw = {"mode": mode or getattr(args, "mode", None) or Mode.STRICT}
    for name in ("tol_value", "tol_slope", "t0", "ratio", "steps", "seed"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    try:
        return RunConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload) -> None:
    text = io.dumps(payload)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_dir(args) -> Path | None:
    if not getattr(args, "csv", None):
        return None
    d = Path(args.csv)
    d.mkdir(parents=True, exist_ok=True)
    return d


def parse_point(text: str) -> FacePoint:
    """``space:face:edge:interior``, e.g. ``disk:1:1:0.5`` or ``halfplane:2:0:1+2i``."""
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"--point expects space:face:edge:interior, got {text!r}")
    space, face, edge, interior = parts
    try:
        return FacePoint(Space(space), int(face), decode_complex(edge), decode_complex(interior))
    except ValueError as exc:
        raise UsageError(f"bad --point {text!r}: {exc}") from None


def _load_fn(text: str):
    """A function file path, or an inline spec such as ``ratex`` or ``log:x=0``."""
    return io.parse_fspec("@" + text if Path(text).is_file() else text)


def cmd_solve(args) -> int:
    problem, file_mode, file_f = io.load_problem(args.problem)
    mode = Mode(args.mode) if args.mode else file_mode
    cfg = _config(args, mode)
    fspec = args.f if args.f is not None else file_f
    if fspec is None:
        raise UsageError("no free parameter: pass --f or put 'f' in the problem file")
    f = io.parse_fspec(fspec)
    kw = dict(t0=cfg.t0, ratio=cfg.ratio, steps=cfg.steps, vanish_tol=cfg.vanish_tol)
    out = {"problem": io.problem_to_dict(problem, mode), "f": f, "config": cfg}
    try:
        if problem.space is Space.HALFPLANE:
            spec = solve(problem, f, mode, **kw)
            h = spec.h
            out["vanishing"] = list(spec.vanishing)
            out["max_im_r_minus_f"] = wellposedness_scan(spec, seed=cfg.seed)
        else:
            h = solve_schur(problem, f, mode, **kw)
    except VanishingConditionFailed as exc:
        out["error"] = {"kind": "VanishingConditionFailed", "node": exc.node_index,
                        "estimate": exc.estimate, "message": str(exc)}
        out["passed"] = False
        _emit(args, out)
        return FAILED
    report = verify_solution(problem, h, cfg, mode)
    out.update(solution=h, report=report, passed=report.passed)
    if (d := _csv_dir(args)) is not None:
        for rec in report.nodes:
            io.write_trace_csv(d / f"node{rec.index}.csv",
                               io.trace_rows(f"node{rec.index}", rec.quotient, rec.value_estimate))
    _emit(args, out)
    return OK if report.passed else FAILED


def cmd_verify(args) -> int:
    f = _load_fn(args.function)
    target = parse_point(args.point)
    cfg = _config(args)
    want = SCHUR if target.space is Space.DISK else PICK
    if f.family != want:
        raise UsageError(f"{target.space.value} points need a {want}-class function")
    if args.face:
        samples = [target.interior] + [s for s in DEFAULT_FACE_SAMPLES[target.space] if s != target.interior]
        rep = face_report(f, target.space, target.face, target.edge, samples[:3], cfg)
        _emit(args, {"function": f, "face_report": rep, "config": cfg, "passed": rep.passed})
        return OK if rep.passed else FAILED
    quot = caratheodory_quotient(f, target, cfg=cfg)
    value = boundary_value(f, target, cfg)
    fits = [certify_c_point(f, target, c, cfg) for c in cfg.apertures]
    passed = all(fit.c_point_passed for fit in fits)
    if (d := _csv_dir(args)) is not None:
        io.write_trace_csv(d / "perpendicular.csv", io.trace_rows("perpendicular", quot, value))
    _emit(args, {"function": f, "point": {"space": target.space, "face": int(target.face),
                                          "edge": target.edge, "interior": target.interior},
                 "value": value, "quotient": quot, "b_point": quot.converged and not quot.divergent,
                 "differential_fits": fits, "c_point_passed": passed, "config": cfg,
                 "note": "C-point evidence covers the sampled aperture cones only"})
    return OK if passed else FAILED


def cmd_transform(args) -> int:
    f = _load_fn(args.function)
    if args.to == "disk":
        out = schur_from_pick(f)
    else:
        out = pick_from_schur(f)
    _emit(args, out)
    return OK


def _one_variable(f):
    if f.arity != 1:
        raise UsageError("reduce/augment operate on one-variable functions")
    return f


def cmd_reduce(args) -> int:
    f = _one_variable(_load_fn(args.function))
    cfg = _config(args)
    if args.a0 is None or args.a1 is None:
        est = angular_derivative(f, args.x, cfg.t0, cfg.ratio, cfg.steps)
        data = AngularData(args.x, args.a0 if args.a0 is not None else est.data.a0,
                           args.a1 if args.a1 is not None else est.data.a1)
    else:
        data = AngularData(args.x, args.a0, args.a1)
    g = reduce(f, data)
    _emit(args, {"function": g, "data": {"x": data.x, "a0": data.a0, "a1": data.a1}})
    return OK


def cmd_augment(args) -> int:
    g = _one_variable(_load_fn(args.function))
    cfg = _config(args)
    f = augment(g, args.x, args.a0, args.a1)
    pred = predicted_derivative(g, args.x, args.a1, t0=cfg.t0, ratio=cfg.ratio, steps=cfg.steps)
    _emit(args, {"function": f, "data": {"x": args.x, "a0": args.a0, "a1": args.a1},
                 "predicted_derivative": pred})
    return OK


def cmd_demo(args) -> int:
    cfg = _config(args)
    names = list(DEMOS) if args.name == "all" else [args.name]
    reports, ok = [], True
    for name in names:
        rep, good = run_demo(name, cfg)
        reports.append(rep)
        ok = ok and good
    _emit(args, reports[0] if len(reports) == 1 else {"demos": reports, "ok": ok})
    return OK if ok else FAILED


def _add_config(p):
    p.add_argument("--tol-value", type=float)
    p.add_argument("--tol-slope", type=float)
    p.add_argument("--t0", type=float)
    p.add_argument("--ratio", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="facialnp", description="Facial boundary interpolation on the bidisk "
                                     "and the bi-upper-half-plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a facial interpolation problem file")
    p.add_argument("problem")
    p.add_argument("--f", help="free parameter: const:<c>, name:k=v,... or @file.json")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--csv", help="directory for per-node trace CSV files")
    _add_config(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify a function at a boundary point or along a face")
    p.add_argument("function", help="function file, or a catalog spec such as ratex:")
    p.add_argument("--point", required=True, help="space:face:edge:interior")
    p.add_argument("--face", action="store_true", help="report across face samples")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--csv")
    _add_config(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="Cayley image of a function")
    p.add_argument("function")
    p.add_argument("--to", required=True, choices=["disk", "halfplane"])
    _add_config(p)
    p.set_defaults(func=cmd_transform)

    for name, func, need in (("reduce", cmd_reduce, False), ("augment", cmd_augment, True)):
        p = sub.add_parser(name, help=f"Julia {name} of a one-variable Pick function")
        p.add_argument("function")
        p.add_argument("--x", type=float, required=True)
        p.add_argument("--a0", type=float, required=need)
        p.add_argument("--a1", type=float, required=need)
        _add_config(p)
        p.set_defaults(func=func)

    p = sub.add_parser("demo", help="run a built-in demonstration")
    p.add_argument("name", choices=list(DEMOS) + ["all"])
    _add_config(p)
    p.set_defaults(func=cmd_demo)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    try:
        return args.func(args)
    except (UsageError, FacialError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"facialnp {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
