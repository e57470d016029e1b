"""Command-line front end.

Every command reads exact rationals, runs in exact mode by default, and
emits either CSV (sequence windows, sweep columns) or a JSON report with a
stable schema version.  Exit codes: 0 success, 1 verification failure,
2 malformed input, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .duals import dual_membership
from .errors import DomainError, ParseError
from .exactreal import (
    DEFAULT_PRECISION,
    CertifiedReal,
    Exponent,
    format_rational,
    parse_rational,
)
from .golden import run_checks
from .matclasses import (
    class_check,
    compactness_verdict,
    noncompactness_estimate,
    operator_norm,
)
from .sequences import LambdaSeq, SeqWindow, parse_generator_spec
from .spaces import space_norm
from .triangles import (
    RowWindowedMatrix,
    basis_vector,
    e_inverse_matrix,
    e_matrix,
    fhat_matrix,
    forward_transform,
    identity_triangle,
    inverse_transform,
    invert_window,
    lambda_matrix,
    load_matrix,
)
from .witnesses import gen_witness

SCHEMA_VERSION = 1


_CONFIG_SKIP = ("fn", "out", "command")


def _report(command: str, config: dict, result) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": "fibspaces",
        "command": command,
        "config": {
            k: str(v)
            for k, v in config.items()
            if v is not None and k not in _CONFIG_SKIP
        },
        "result": result,
    }


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _render_value(v, mode: str) -> str:
    if isinstance(v, CertifiedReal):
        if mode == "float":
            return repr(float(v.value))
        if v.is_exact:
            return format_rational(v.value)
        return str(v)
    if isinstance(v, Fraction):
        return repr(float(v)) if mode == "float" else format_rational(v)
    return str(v)


def _window_csv(window, mode: str) -> str:
    return "\n".join(_render_value(v, mode) for v in window)


def _parse_seq_spec(spec: str, lam: LambdaSeq, n: int, p, precision: int) -> SeqWindow:
    spec = spec.strip()
    if spec.startswith("witness:"):
        return gen_witness(spec.split(":", 1)[1], lam, n, p=p, precision=precision)
    if spec.startswith("unit:"):
        return gen_witness(spec, lam, n)
    gen = parse_generator_spec(spec)
    return gen.prefix(n)


def _parse_matrix_arg(spec: str, lam: LambdaSeq):
    spec = spec.strip()
    builtin = {
        "E": lambda: e_matrix(lam),
        "E-inverse": lambda: e_inverse_matrix(lam),
        "fhat": fhat_matrix,
        "lambda-matrix": lambda: lambda_matrix(lam),
        "identity": identity_triangle,
    }
    if spec in builtin:
        return builtin[spec]()
    if spec.startswith("file:"):
        spec = spec.split(":", 1)[1]
    return load_matrix(spec)


def _parse_space(spec: str) -> tuple[str, Exponent | None]:
    spec = spec.strip()
    if spec in ("l1", "linf", "c", "c0"):
        return spec, None
    if spec.startswith("lp:"):
        return "lp", Exponent.parse(spec.split(":", 1)[1])
    raise ParseError(f"bad space spec {spec!r}")


# ---------------------------------------------------------------------------
# Commands


def cmd_transform(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    p = Exponent.parse(args.p) if args.p else None
    if args.inverse:
        if not args.y:
            raise ParseError("--inverse needs --y")
        y = _parse_seq_spec(args.y, lam, args.n, p, args.precision)
        window = inverse_transform(y, lam)
    else:
        if not args.x:
            raise ParseError("transform needs --x (or --inverse with --y)")
        x = _parse_seq_spec(args.x, lam, args.n, p, args.precision)
        window = forward_transform(x, lam)
    if args.json:
        result = {
            "window": [_render_value(v, args.mode) for v in window],
            "n": args.n,
            "direction": "inverse" if args.inverse else "forward",
        }
        _emit(json.dumps(_report("transform", vars(args), result), indent=2), args.out)
    else:
        _emit(_window_csv(window, args.mode), args.out)
    return 0


def cmd_invert(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    matrix = _parse_matrix_arg(args.matrix, lam)
    if isinstance(matrix, RowWindowedMatrix):
        matrix = matrix.as_triangle()
    window = invert_window(matrix, args.n)
    result = {
        "size": args.n,
        "rows": [[_render_value(v, args.mode) for v in row] for row in window.rows],
    }
    _emit(json.dumps(_report("invert", vars(args), result), indent=2), args.out)
    return 0


def cmd_norm(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    p = Exponent.parse(args.p)
    x = _parse_seq_spec(args.x, lam, args.n, p, args.precision)
    est = space_norm(x, lam, p, args.precision)
    result = est.to_json()
    result["value"] = _render_value(est.value, args.mode)
    _emit(json.dumps(_report("norm", vars(args), result), indent=2), args.out)
    return 0


def cmd_basis(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    window = basis_vector(args.k, lam, args.n)
    if args.json:
        result = {"k": args.k, "window": [_render_value(v, args.mode) for v in window]}
        _emit(json.dumps(_report("basis", vars(args), result), indent=2), args.out)
    else:
        _emit(_window_csv(window, args.mode), args.out)
    return 0


def cmd_dual(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    gen = parse_generator_spec(args.a)
    space, p = _parse_space(args.space)
    result = dual_membership(
        gen, lam, space, args.kind, p=p, window=args.window,
        subset_mode=args.subset_mode, seed=args.seed,
    )
    payload = {
        "space": result["space"],
        "kind": result["kind"],
        "p": result["p"],
        "verdict": result["verdict"].to_json(),
        "conditions": [r.to_json() for r in result["conditions"]],
    }
    _emit(json.dumps(_report("dual", vars(args), payload), indent=2), args.out)
    return 0


def cmd_class(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    matrix = _parse_matrix_arg(args.matrix, lam)
    source, p = _parse_space(args.source)
    target, tp = _parse_space(args.target)
    report = class_check(
        matrix, lam, source, target, p=p, target_p=tp,
        window=args.window, seed=args.seed,
    )
    _emit(json.dumps(_report("class", vars(args), report.to_json()), indent=2), args.out)
    return 0


def cmd_opnorm(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    matrix = _parse_matrix_arg(args.matrix, lam)
    p = Exponent.parse(args.p)
    result = operator_norm(
        matrix, lam, p, args.target, window=args.window,
        precision=args.precision, seed=args.seed,
    )
    _emit(json.dumps(_report("opnorm", vars(args), result.to_json()), indent=2), args.out)
    return 0


def cmd_mnc(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    matrix = _parse_matrix_arg(args.matrix, lam)
    p = Exponent.parse(args.p)
    est = noncompactness_estimate(
        matrix, lam, p, args.target, r_max=args.rmax,
        precision=args.precision, seed=args.seed,
    )
    verdict = compactness_verdict(
        matrix, lam, p, args.target, r_max=args.rmax,
        precision=args.precision, seed=args.seed,
    )
    payload = est.to_json()
    payload["compactness"] = verdict.to_json()
    _emit(json.dumps(_report("mnc", vars(args), payload), indent=2), args.out)
    return 0


def cmd_verify_paper(args) -> int:
    config = {"seed": args.seed}
    if args.n:
        config["n"] = args.n
    if args.p:
        config["p"] = parse_rational(args.p)
    results = run_checks(only=args.only, **config)
    if not results:
        raise ParseError(f"no checks match {args.only!r}")
    failed = [r for r in results if not r.passed]
    if args.json:
        payload = [
            {
                "id": r.check_id,
                "description": r.description,
                "passed": r.passed,
                "detail": r.detail,
            }
            for r in results
        ]
        _emit(json.dumps(_report("verify-paper", vars(args), payload), indent=2), args.out)
    else:
        lines = []
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"{mark}  {r.check_id:24s} {r.description} [{r.detail}]")
        lines.append(
            f"{len(results) - len(failed)}/{len(results)} golden checks passed"
        )
        _emit("\n".join(lines), args.out)
    return 1 if failed else 0


def cmd_plot_data(args) -> int:
    lam = LambdaSeq.from_spec(args.lam)
    rows = []
    if args.quantity == "norm":
        p = Exponent.parse(args.p)
        sweep = [int(tok) for tok in args.sweep.split(",") if tok.strip()]
        header = "n,value"
        for n in sweep:
            x = _parse_seq_spec(args.x, lam, n, p, args.precision)
            est = space_norm(x, lam, p, args.precision)
            rows.append(f"{n},{float(est.value.value)!r}")
    elif args.quantity == "mnc":
        p = Exponent.parse(args.p)
        matrix = _parse_matrix_arg(args.matrix, lam)
        est = noncompactness_estimate(
            matrix, lam, p, args.target, r_max=args.rmax,
            precision=args.precision, seed=args.seed,
        )
        header = "r,s"
        rows = [f"{int(r)},{v!r}" for r, v in est.sweep]
    else:
        raise ParseError(f"unknown quantity {args.quantity!r}")
    _emit("\n".join([header] + rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibspaces",
        description="Exact-arithmetic toolkit for Fibonacci-difference "
        "sequence spaces over weighted averaging triangles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, window=False, rmax=False, matrix=False, precision=True):
        p.add_argument("--lambda", dest="lam", default="linear:1,1",
                       help="weight family: linear:a,b | geometric:r,c | file:<path>")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--mode", choices=("exact", "float"), default="exact",
                       help="value rendering; computation is always exact")
        if precision:
            p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        if window:
            p.add_argument("--window", type=int, default=32)
        if rmax:
            p.add_argument("--rmax", type=int, default=32)
        if matrix:
            p.add_argument("--A", dest="matrix", required=True,
                           help="matrix: JSON file path, or E | fhat | "
                           "lambda-matrix | identity | E-inverse")

    p = sub.add_parser("transform", help="apply the composed triangle (or its inverse)")
    common(p)
    p.add_argument("--x", help="sequence spec: witness:<id> | unit:<k> | zero | e | "
                   "values:a,b,... | file:<path>")
    p.add_argument("--y", help="image spec for --inverse")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("-N", dest="n", type=int, default=32)
    p.add_argument("--p", default=None, help="exponent for the power-law witness")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("invert", help="forward-substitution inverse of a triangle window")
    common(p)
    p.add_argument("--A", dest="matrix", default="E")
    p.add_argument("-N", dest="n", type=int, default=16)
    p.set_defaults(fn=cmd_invert)

    p = sub.add_parser("norm", help="norm of a window in the weighted space")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--p", default="2")
    p.add_argument("-N", dest="n", type=int, default=32)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("basis", help="basis column of the weighted space")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-N", dest="n", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("dual", help="alpha/beta/gamma dual membership evidence")
    common(p, window=True)
    p.add_argument("--a", required=True, help="candidate sequence spec")
    p.add_argument("--space", default="lp:2", help="l1 | lp:<p> | linf")
    p.add_argument("--kind", choices=("alpha", "beta", "gamma"), default="beta")
    p.add_argument("--subset-mode", dest="subset_mode",
                   choices=("auto", "exact", "sample"), default="auto")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("class", help="matrix mapping-class membership check")
    common(p, window=True, matrix=True)
    p.add_argument("--X", dest="source", default="lp:2", help="source: l1 | lp:<p> | linf")
    p.add_argument("--Y", dest="target", default="c0",
                   help="target: linf | c | c0 | l1 | lp:<p>")
    p.set_defaults(fn=cmd_class)

    p = sub.add_parser("opnorm", help="operator norm (exact, bracket, or evidence)")
    common(p, window=True, matrix=True)
    p.add_argument("--p", default="2")
    p.add_argument("--Y", dest="target", default="linf", help="linf | c | c0 | l1")
    p.set_defaults(fn=cmd_opnorm)

    p = sub.add_parser("mnc", help="Hausdorff noncompactness sweep and compactness verdict")
    common(p, rmax=True, matrix=True)
    p.add_argument("--p", default="2")
    p.add_argument("--Y", dest="target", default="c0", help="c0 | c | l1")
    p.set_defaults(fn=cmd_mnc)

    p = sub.add_parser("verify-paper",
                       help="run the golden-identity suite (exit 1 on any failure)")
    p.add_argument("--only", default=None, help="substring filter on check ids")
    p.add_argument("-N", dest="n", type=int, default=None,
                   help="window size for the inverse-identity check")
    p.add_argument("--p", default=None,
                   help="restrict the parallelogram check to one exponent")
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify_paper)

    p = sub.add_parser("plot-data", help="CSV sweep columns for external plotting")
    common(p, rmax=True)
    p.add_argument("--quantity", choices=("norm", "mnc"), required=True)
    p.add_argument("--x", default="witness:t")
    p.add_argument("--p", default="2")
    p.add_argument("--sweep", default="8,16,24,32,48,64")
    p.add_argument("--A", dest="matrix", default="E")
    p.add_argument("--Y", dest="target", default="c0")
    p.set_defaults(fn=cmd_plot_data)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
