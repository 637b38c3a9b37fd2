"""Command-line entry point.

Subcommands: eval, table, apply, commutator, generate, spectrum,
transform, sht, verify. JSON is the only structured output (CSV for the
human-readable table). Exit codes: 0 success, 1 failed verification,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import (DIAGONAL_GENERATORS, GENERATORS, commutator,
                      generate_mode, generator, spectrum)
from .alp import eval_T, eval_T_derivative, gauss_legendre
from .modes import CoeffVector, Truncation, lattice
from .sphere import SphereGrid, field_from_json, field_to_json, sht_analyze, sht_synthesize
from .transforms import (analyze, grid_from_json, grid_to_json,
                         spectrum_from_json, spectrum_to_json, synthesize)
from .verify import SUITES, run_all, run_suite


def _dump(data: dict, path: str | None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_eval(args) -> int:
    value = eval_T(args.l, args.m, args.x)
    if args.deriv:
        value = eval_T_derivative(args.l, args.m, args.x)
    print(value)
    return 0


def _cmd_table(args) -> int:
    rule = gauss_legendre(args.nodes)
    lines = ["l,m,x,T,dT"]
    for mode in lattice(Truncation(args.lmax)):
        tvals = eval_T(mode.l, mode.m, rule.nodes)
        dvals = eval_T_derivative(mode.l, mode.m, rule.nodes)
        for x, t, dt in zip(rule.nodes, tvals, dvals):
            lines.append(f"{mode.l},{mode.m},{float(x)!r},{float(t)!r},{float(dt)!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_apply(args) -> int:
    vec = CoeffVector.load(getattr(args, "in"))
    op = generator(args.op, vec.trunc)
    result = op.apply(vec)
    if result.overflow:
        print("warning: amplitude left the truncation window; result flagged",
              file=sys.stderr)
    out = result.to_json_dict()
    out["overflow"] = result.overflow
    _dump(out, args.out)
    return 0


def _cmd_commutator(args) -> int:
    trunc = Truncation(args.lmax)
    op = commutator(generator(args.a, trunc), generator(args.b, trunc))
    entries = []
    for src in sorted(op.columns):
        for dst in sorted(op.columns[src]):
            entries.append({"src": {"l": src.l, "m": src.m},
                            "dst": {"l": dst.l, "m": dst.m},
                            "c": float(op.columns[src][dst])})
    report = {
        "a": args.a,
        "b": args.b,
        "l_max": args.lmax,
        "valid_l_max": op.valid_l_max,
        "shifts": sorted(list(s) for s in op.shifts),
        "entries": entries,
    }
    _dump(report, args.report)
    return 0


def _cmd_generate(args) -> int:
    trunc = Truncation(args.lmax)
    vec = generate_mode(args.l, args.m, trunc)
    deviation = (vec - CoeffVector.unit(args.l, args.m, trunc)).norm()
    if args.out:
        vec.save(args.out)
    print(f"max deviation from unit mode: {deviation:.3e}")
    return 0


def _cmd_spectrum(args) -> int:
    trunc = Truncation(args.lmax)
    values = spectrum(args.name, trunc, l=args.l, m=args.m, parity=args.parity)
    print(json.dumps(values))
    return 0


def _cmd_transform(args) -> int:
    if args.action == "analyze":
        grid = grid_from_json(_load(getattr(args, "in")))
        if args.m is not None and args.m != grid.m:
            raise ValueError(f"--m {args.m} does not match grid channel m={grid.m}")
        spec = analyze(grid, args.lmax)
        _dump(spectrum_to_json(spec), args.out)
    else:
        spec = spectrum_from_json(_load(getattr(args, "in")))
        rule = gauss_legendre(args.nodes)
        _dump(grid_to_json(synthesize(spec, rule)), args.out)
    return 0


def _cmd_sht(args) -> int:
    if args.action == "analyze":
        field = field_from_json(_load(getattr(args, "in")))
        n_theta, n_phi = field.grid.shape
        if args.ntheta is not None and args.ntheta != n_theta:
            raise ValueError(f"--ntheta {args.ntheta} does not match field grid ({n_theta})")
        if args.nphi is not None and args.nphi != n_phi:
            raise ValueError(f"--nphi {args.nphi} does not match field grid ({n_phi})")
        coeffs = sht_analyze(field, args.lmax)
        rows = [{"l": k.l, "m": k.m, "re": float(v.real), "im": float(v.imag)}
                for k, v in sorted(coeffs.items())]
        _dump({"l_max": args.lmax, "entries": rows}, args.out)
    else:
        if args.ntheta is None or args.nphi is None:
            raise ValueError("synthesize needs --ntheta and --nphi for the target grid")
        data = _load(getattr(args, "in"))
        coeffs = {(int(r["l"]), int(r["m"])): complex(float(r["re"]), float(r.get("im", 0.0)))
                  for r in data["entries"]}
        grid = SphereGrid(gauss_legendre(args.ntheta), args.nphi)
        _dump(field_to_json(sht_synthesize(coeffs, grid)), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "all":
        report = run_all(l_max=args.lmax, tol=args.tol, nodes=args.nodes)
        suites = report["suites"]
    else:
        report = run_suite(args.suite, l_max=args.lmax, tol=args.tol, nodes=args.nodes)
        suites = [report]
    if not args.quiet:
        for sub in suites:
            for check in sub["checks"]:
                status = "PASS" if check["pass"] else "FAIL"
                print(f"{status}  {sub['suite']}/{check['id']}  "
                      f"max_dev={check['max_deviation']:.3e}  "
                      f"tol={check['tolerance']:.1e}  [{check['window']}]")
    if args.report:
        _dump(report, args.report)
    return 0 if report["pass"] else 1


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legladder",
        description="Ladder-operator calculus on normalized associated "
                    "Legendre functions and spherical harmonics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate T_l^m or its derivative at x")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--deriv", action="store_true", help="print dT/dx instead")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("table", help="CSV table of T and dT on Gauss nodes")
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("apply", help="apply a generator to a coefficient file")
    p.add_argument("--op", choices=GENERATORS, required=True)
    p.add_argument("--in", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("commutator", help="sparse form of [a, b] on a window")
    p.add_argument("--a", choices=GENERATORS, required=True)
    p.add_argument("--b", choices=GENERATORS, required=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_commutator)

    p = sub.add_parser("generate", help="build a unit mode by repeated raising")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("spectrum", help="eigenvalues of a diagonal generator")
    p.add_argument("--name", choices=DIAGONAL_GENERATORS, required=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("transform", help="per-channel analysis or synthesis")
    p.add_argument("action", choices=("analyze", "synthesize"))
    p.add_argument("--m", type=int, default=None,
                   help="expected channel; must match the input file")
    p.add_argument("--lmax", type=int, default=16)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--in", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("sht", help="spherical analysis or synthesis")
    p.add_argument("action", choices=("analyze", "synthesize"))
    p.add_argument("--lmax", type=int, default=8)
    p.add_argument("--ntheta", type=int, default=None,
                   help="polar grid size (required for synthesize)")
    p.add_argument("--nphi", type=int, default=None,
                   help="azimuthal grid size (required for synthesize)")
    p.add_argument("--in", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sht)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--lmax", type=int, default=12)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--report", default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
