"""Command-line front end: experiment presets with CSV/JSON emission.

Exit codes: 0 all checks passed, 1 a check failed or a computation
refused (domain errors from the library), 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import acceptance
from .classical import (
    demo_lacunary_spec,
    lacunary_associate_probe,
    lacunary_circle_sup,
    lacunary_growth_probe,
    radial_log_weight,
)
from .errors import HypolibError
from .kernels import make_spectral, polyharmonic_kernel
from .regions import fatou_probe, maximal_inequality_probe
from .spherical import asymptotic_law, closed_form, radial_zeros, spherical_function
from .transforms import (
    Atoms,
    Mixture,
    convergence_probe,
    density_preset,
    dirichlet_solve,
    poisson_transform,
    riquier_solve,
)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _emit(path: str | None, header: list[str], rows: list[list]) -> None:
    sink = open(path, "w", newline="") if path else io.StringIO()
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        if path is None:
            sys.stdout.write(sink.getvalue())
    finally:
        if path:
            sink.close()


def _grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _ints(text: str) -> list[int]:
    out: list[int] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "-" in tok[1:]:
            lo, hi = tok.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(tok))
    return sorted(set(out))


def _lam(args) -> complex:
    return complex(args.lam[0], args.lam[1])


def _datum(args):
    density = density_preset(args.preset) if getattr(args, "preset", None) else None
    atoms = None
    if getattr(args, "atoms", None):
        pts = []
        for tok in args.atoms.split(";"):
            ang, wre, wim = (float(x) for x in tok.split(":"))
            pts.append((ang, complex(wre, wim)))
        atoms = Atoms(tuple(pts))
    if atoms is not None and density is not None:
        return Mixture(density=density, atoms=atoms)
    if atoms is not None:
        return atoms
    if density is not None:
        return density
    raise HypolibError("no boundary datum given: pass --preset and/or --atoms")


def _cmd_kernel(args) -> int:
    sp = make_spectral(_lam(args))
    z = args.z_r * complex(math.cos(args.z_angle), math.sin(args.z_angle))
    rows = []
    for ang in args.xi:
        val = complex(polyharmonic_kernel(args.n, z, ang, sp))
        rows.append([ang, val.real, val.imag])
    _emit(args.out, ["xi_angle", "value_re", "value_im"], rows)
    return 0


def _cmd_spherical(args) -> int:
    sp = make_spectral(_lam(args))
    rows = []
    for r in args.r_grid:
        v = spherical_function(args.n, float(r), sp)
        closed_re = closed_im = diff = ""
        if args.n == 0 and r * r <= 0.999:
            cf = closed_form(float(r), sp)
            closed_re, closed_im, diff = cf.real, cf.imag, abs(cf - v)
        rows.append([float(r), v.real, v.imag, closed_re, closed_im, diff])
    _emit(
        args.out,
        ["r", "phi_re", "phi_im", "closed_form_re", "closed_form_im", "diff"],
        rows,
    )
    return 0


def _cmd_asymptotics(args) -> int:
    sp = make_spectral(_lam(args))
    law = asymptotic_law(args.n, sp)
    rows = []
    for R in args.R:
        r = math.tanh(R / 2.0)
        phi = spherical_function(args.n, r, sp)
        lv = complex(law.evaluate(R))
        ratio = phi / lv
        rows.append([R, phi.real, phi.imag, lv.real, lv.imag, ratio.real, ratio.imag])
    _emit(
        args.out,
        ["R", "phi_re", "phi_im", "law_re", "law_im", "ratio_re", "ratio_im"],
        rows,
    )
    return 0


def _cmd_zeros(args) -> int:
    sp = make_spectral(_lam(args))
    zs = radial_zeros(sp, r_max=args.r_max, count=args.count)
    rows = []
    prev = None
    for i, z in enumerate(zs):
        rows.append([i, z, "" if prev is None else z - prev])
        prev = z
    _emit(args.out, ["index", "r", "gap_from_previous"], rows)
    return 0


def _cmd_dirichlet(args) -> int:
    sp = make_spectral(_lam(args))
    sol = dirichlet_solve(sp, density_preset(args.preset))
    angles = np.linspace(-math.pi, math.pi, args.angles, endpoint=False)
    rows = []
    for row in sol.verify(angles, args.radii):
        rows.append(
            [
                row.xi_angle,
                row.r,
                row.value.real,
                row.value.imag,
                row.target.real,
                row.target.imag,
                row.error,
            ]
        )
    _emit(
        args.out,
        ["xi_angle", "r", "value_re", "value_im", "target_re", "target_im", "error"],
        rows,
    )
    return 0


def _cmd_riquier(args) -> int:
    sp = make_spectral(_lam(args))
    gs = [density_preset(p) for p in args.presets.split(",")]
    sol = riquier_solve(sp, gs)
    angles = np.linspace(-math.pi, math.pi, args.angles, endpoint=False)
    report = sol.verify(angles, [args.r])
    rows = []
    for part in ("own", "cross"):
        for row in report[part]:
            rows.append(
                [
                    part,
                    row.xi_angle,
                    row.r,
                    row.value.real,
                    row.value.imag,
                    row.target.real,
                    row.target.imag,
                    row.error,
                ]
            )
    _emit(
        args.out,
        ["part", "xi_angle", "r", "value_re", "value_im", "target_re", "target_im", "error"],
        rows,
    )
    return 0


def _cmd_convergence(args) -> int:
    sp = make_spectral(_lam(args))
    datum = _datum(args)
    report = convergence_probe(args.n, sp, datum, args.mode, radii=args.radii)
    rows = []
    if args.mode in ("uniform", "pointwise-ae"):
        header = ["r", "sup_error"]
        for row in report["rows"]:
            rows.append([row["r"], row["sup_error"]])
    elif args.mode == "Lp":
        header = ["r", "lp_error"]
        for row in report["rows"]:
            rows.append([row["r"], row["lp_error"]])
    else:
        header = ["r", "mode", "pairing_re", "pairing_im"]
        for row in report["rows"]:
            for k in sorted(row["pairings"]):
                v = row["pairings"][k]
                rows.append([row["r"], k, v.real, v.imag])
    _emit(args.out, header, rows)
    return 0


def _cmd_maximal(args) -> int:
    sp = make_spectral(_lam(args))
    rep = maximal_inequality_probe(args.n, sp, width=args.width, kind=args.kind)
    rows = [[tid, ratio] for tid, ratio in rep.ratios]
    rows.append(["overall", rep.fitted_C])
    rows.append(["overall_refined", rep.refined_C])
    _emit(args.out, ["test_id", "fitted_C"], rows)
    return 0


def _cmd_fatou(args) -> int:
    sp = make_spectral(_lam(args))
    datum = _datum(args)
    if not isinstance(datum, Mixture):
        datum = Mixture(
            density=datum if not isinstance(datum, Atoms) else None,
            atoms=datum if isinstance(datum, Atoms) else None,
        )
    rows = []
    for row in fatou_probe(args.n, sp, datum, args.width, args.zeta, kind=args.kind):
        rows.append(
            [
                row.zeta_angle,
                row.r,
                row.alpha_offset,
                row.value.real,
                row.value.imag,
                row.normalized.real,
                row.normalized.imag,
            ]
        )
    _emit(
        args.out,
        [
            "zeta_angle",
            "r",
            "alpha_offset",
            "value_re",
            "value_im",
            "normalized_re",
            "normalized_im",
        ],
        rows,
    )
    return 0


def _cmd_examples(args) -> int:
    if args.what == "d":
        rows = [
            [n, float(r), radial_log_weight(n, float(r))]
            for n in range(args.n_max + 1)
            for r in args.r_grid
        ]
        _emit(args.out, ["n", "r", "value"], rows)
        return 0
    spec = demo_lacunary_spec()
    if args.what == "growth":
        rep = lacunary_growth_probe(spec, args.radii)
        rows = [[row["r"], row["angle"], row["ratio"], row["envelope"]] for row in rep["rows"]]
        _emit(args.out, ["r", "angle", "ratio", "envelope"], rows)
        return 0
    rep = lacunary_associate_probe(spec, args.radii)
    rows = [
        [row["r"], row["angle"], row["scaled"], row["deviation"], row["deviation_bound"]]
        for row in rep["rows"]
    ]
    _emit(args.out, ["r", "angle", "scaled_field", "deviation", "bound"], rows)
    return 0


def _cmd_lacunary(args) -> int:
    spec = demo_lacunary_spec()
    rows = []
    for N in args.N:
        sup = lacunary_circle_sup(N, spec, grid_size=args.grid_size)
        rows.append([N, sup.radius, sup.value])
    _emit(args.out, ["N", "circle_radius", "sup_value"], rows)
    return 0


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(args.criteria, seed=args.seed)
    rows = [[res.index, res.name, "pass" if res.passed else "fail", res.details] for res in results]
    _emit(args.out, ["criterion", "name", "status", "details"], rows)
    for res in results:
        sys.stderr.write(
            f"[{res.index:2d}] {'pass' if res.passed else 'FAIL'}  "
            f"{res.name} ({res.elapsed:.1f}s)\n"
        )
    return 0 if all(res.passed for res in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypolib",
        description="Numerical experiments for graded kernels on the hyperbolic disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, lam=True):
        if lam:
            p.add_argument("--lambda", dest="lam", nargs=2, type=float, required=True,
                           metavar=("RE", "IM"), help="spectral value, two reals")
        p.add_argument("--out", default=None, help="CSV output path (default stdout)")
        p.add_argument("--config", default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("kernel", help="graded kernel values at a point")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--z-r", type=float, default=0.5)
    p.add_argument("--z-angle", type=float, default=0.0)
    p.add_argument("--xi", type=_floats, default=[0.0, 1.0, 2.0])
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("spherical", help="radial circle means, with the closed form")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--r-grid", type=_grid, default=_grid("0.1:0.99:50"))
    p.set_defaults(fn=_cmd_spherical)

    p = sub.add_parser("asymptotics", help="circle means against the boundary law")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--R", type=_floats, default=[10.0, 15.0, 20.0, 25.0])
    p.set_defaults(fn=_cmd_asymptotics)

    p = sub.add_parser("zeros", help="radial zeros on the forbidden ray")
    common(p)
    p.add_argument("--r-max", type=float, default=0.9999)
    p.add_argument("--count", type=int, default=2000)
    p.set_defaults(fn=_cmd_zeros)

    p = sub.add_parser("dirichlet", help="boundary recovery sweep")
    common(p)
    p.add_argument("--preset", default="cos")
    p.add_argument("--radii", type=_floats, default=[0.9, 0.99, 0.999, 0.9999])
    p.add_argument("--angles", type=int, default=12)
    p.set_defaults(fn=_cmd_dirichlet)

    p = sub.add_parser("riquier", help="two-layer boundary recovery")
    common(p)
    p.add_argument("--presets", default="cos,one")
    p.add_argument("--r", type=float, default=0.9999)
    p.add_argument("--angles", type=int, default=8)
    p.set_defaults(fn=_cmd_riquier)

    p = sub.add_parser("convergence", help="boundary-convergence probe")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--preset", default=None)
    p.add_argument("--atoms", default=None, help="angle:w_re:w_im JSON-free list, ; separated")
    p.add_argument("--mode", choices=["uniform", "pointwise-ae", "Lp", "weak-star"],
                   default="uniform")
    p.add_argument("--radii", type=_floats, default=[0.9, 0.99, 0.999])
    p.set_defaults(fn=_cmd_convergence)

    p = sub.add_parser("maximal", help="maximal-operator comparison suite")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--kind", choices=["tube", "enlarged"], default="tube")
    p.set_defaults(fn=_cmd_maximal)

    p = sub.add_parser("fatou", help="admissible-limit sweep rows")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--kind", choices=["tube", "enlarged"], default="tube")
    p.add_argument("--preset", default="cos")
    p.add_argument("--atoms", default=None)
    p.add_argument("--zeta", type=_floats, default=[math.pi, 0.5 * math.pi])
    p.set_defaults(fn=_cmd_fatou)

    p = sub.add_parser("examples", help="flat-case calculus tables")
    common(p, lam=False)
    p.add_argument("--what", choices=["d", "growth", "associate"], default="d")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--r-grid", type=_grid, default=_grid("0.1:0.9:9"))
    p.add_argument("--radii", type=_floats, default=[0.9, 0.99, 0.999, 0.9999, 0.99999])
    p.set_defaults(fn=_cmd_examples)

    p = sub.add_parser("lacunary", help="gap-series circle sup report")
    common(p, lam=False)
    p.add_argument("--N", type=_ints, default=[2, 3])
    p.add_argument("--grid-size", type=int, default=1 << 20)
    p.set_defaults(fn=_cmd_lacunary)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    common(p, lam=False)
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--criteria", type=_ints, default=None,
                   help="subset like 1-12 or 1,4,13 (default all)")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def _expand_config(argv: list[str]) -> list[str]:
    """Splice JSON config entries in as flags right after the subcommand."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        return argv
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    with open(path) as fh:
        cfg = json.load(fh)
    extra: list[str] = []
    for key, value in cfg.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(value, list):
            extra.append(flag)
            extra.extend(str(v) for v in value)
        else:
            extra.extend([flag, str(value)])
    if not rest:
        return extra
    return rest[:1] + extra + rest[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_config(argv)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.fn(args)
    except HypolibError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
