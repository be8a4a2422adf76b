"""Command-line interface.

Subcommands
-----------
check    feasibility of an annulus pair against the radius bound
solve    conserved constant alpha for the extremal stretch profile
energy   closed-form vs quadrature energy of the extremal
verify   independent residual / conservation / shooting / duality checks
oracle   discrete variational minimization cross-check
sweep    batch solve over a JSONL configuration list, CSV output
export   sampled extremal profile as CSV

Exit codes: 0 success, 1 a verification or oracle check failed, 2 invalid
arguments or parameters, 3 infeasible configuration (bound reported),
4 numerical failure (quadrature, iteration, or integration breakdown).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import alpha as alpha_mod
from . import energy as energy_mod
from . import extremal, nitsche, ode
from . import oracle as oracle_mod
from .core import AnnulusPair, EnergyParams
from .errors import CombEnergyError, Infeasible, ValidationError

_FORMATS = ("json", "csv", "table")


# ---------------------------------------------------------------- output ---


def _flatten(data, prefix=""):
    flat = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    flat.update(_flatten(item, f"{name}.{i}."))
                else:
                    flat[f"{name}.{i}"] = item
        else:
            flat[name] = value
    return flat


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(data: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        print(json.dumps(data, indent=2), file=stream)
        return
    flat = _flatten(data)
    if fmt == "csv":
        print(",".join(flat), file=stream)
        print(",".join(_csv_cell(v) for v in flat.values()), file=stream)
        return
    width = max(len(k) for k in flat)
    for key, value in flat.items():
        print(f"{key:<{width}}  {_csv_cell(value)}", file=stream)


# ------------------------------------------------------------- arguments ---


def _add_geometry(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--r", type=float, required=True, help="inner-domain outer radius (> 1)")
    ap.add_argument("--R", type=float, required=True, help="target-domain outer radius (> 1)")
    ap.add_argument("--a", type=float, required=True, help="normal-strain weight (> 0)")
    ap.add_argument("--b", type=float, required=True, help="tangential-strain weight (> 0)")
    ap.add_argument("--lambda", dest="lam", type=float, required=True, help="modulus exponent")


def _add_format(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--format", choices=_FORMATS, default="json", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combenergy",
        description="Weighted combined-distortion energy between round annuli.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("check", help="feasibility against the radius bound")
    _add_geometry(ap)
    _add_format(ap)
    ap.set_defaults(func=_cmd_check)

    ap = sub.add_parser("solve", help="conserved constant of the extremal profile")
    _add_geometry(ap)
    _add_format(ap)
    ap.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    ap.set_defaults(func=_cmd_solve)

    ap = sub.add_parser("energy", help="closed form vs quadrature energy")
    _add_geometry(ap)
    _add_format(ap)
    ap.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    ap.set_defaults(func=_cmd_energy)

    ap = sub.add_parser("verify", help="residual, conservation, shooting, duality checks")
    _add_geometry(ap)
    _add_format(ap)
    ap.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    ap.add_argument("--n", type=int, default=513, help="sample nodes for residual checks")
    ap.set_defaults(func=_cmd_verify)

    ap = sub.add_parser("oracle", help="discrete variational minimization cross-check")
    _add_geometry(ap)
    _add_format(ap)
    ap.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    ap.add_argument("--n", type=int, default=513, help="discrete grid size")
    ap.add_argument("--seed", type=int, default=42, help="perturbation RNG seed")
    ap.add_argument("--k", type=int, default=100, help="number of perturbations")
    ap.add_argument("--magnitude", type=float, default=1e-3, help="perturbation size")
    ap.set_defaults(func=_cmd_oracle)

    ap = sub.add_parser("sweep", help="batch solve a JSONL list of configurations")
    ap.add_argument("--config", required=True, help="JSONL file: one {r,R,a,b,lambda} per line")
    ap.add_argument("--out", default=None, help="CSV output path (default stdout)")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads")
    ap.set_defaults(func=_cmd_sweep)

    ap = sub.add_parser("export", help="write the sampled extremal profile as CSV")
    _add_geometry(ap)
    ap.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    ap.add_argument("--n", type=int, default=513, help="sample count")
    ap.add_argument("--out", required=True, help="CSV output path")
    ap.set_defaults(func=_cmd_export)

    return parser


def _inputs(args) -> tuple[AnnulusPair, EnergyParams]:
    return AnnulusPair(args.r, args.R), EnergyParams(args.a, args.b, args.lam)


# ------------------------------------------------------------- commands ---


def _cmd_check(args) -> int:
    annuli, params = _inputs(args)
    report = nitsche.is_feasible(annuli, params)
    _emit(report.as_dict(), args.format)
    return 0 if report.feasible else 3


def _cmd_solve(args) -> int:
    annuli, params = _inputs(args)
    sol = extremal.solve_extremal(annuli, params, tol=args.tol)
    if params.is_lambda_one:
        phi_residual = 0.0
    else:
        phi_residual = abs(alpha_mod.phi(sol.alpha, annuli.R, params) - annuli.r)
    endpoint_error = abs(extremal.profile(sol, annuli.r) - annuli.R)
    _emit(
        {
            "alpha": sol.alpha,
            "branch": sol.branch,
            "phi_residual": phi_residual,
            "endpoint_error": endpoint_error,
        },
        args.format,
    )
    return 0


def _cmd_energy(args) -> int:
    annuli, params = _inputs(args)
    sol = extremal.solve_extremal(annuli, params, tol=args.tol)
    closed = energy_mod.closed_form_energy(sol)
    quad = energy_mod.solution_radial_energy(sol)
    gap = abs(closed.value - quad.value) / max(1.0, abs(closed.value))
    _emit(
        {
            "closed_form": closed.as_dict(),
            "radial_quadrature": quad.as_dict(),
            "relative_gap": gap,
        },
        args.format,
    )
    return 0


def _cmd_verify(args) -> int:
    annuli, params = _inputs(args)
    sol = extremal.solve_extremal(annuli, params, tol=args.tol)
    r, R = annuli.r, annuli.R
    ts = extremal.log_grid(r, max(args.n, 9))

    def Hf(t):
        return extremal.profile(sol, t)

    def Hdf(t):
        return extremal.derivative(sol, t)

    def Hddf(t):
        return extremal.second_derivative(sol, t)

    checks = []

    residual = ode.euler_lagrange_residual(Hf, Hdf, Hddf, params)
    Hd = Hdf(ts)
    scale = params.a**2 * r**2 * max(1.0, float(np.max(Hd * Hd)))
    el_value = float(np.max(np.abs(residual(ts)))) / scale
    checks.append(("euler_lagrange_residual", el_value, 1e-6))

    fi = ode.first_integral(Hf, Hdf, params)
    drift = float(np.max(np.abs(fi(ts) - sol.alpha))) / max(1.0, abs(sol.alpha))
    checks.append(("first_integral_drift", drift, 1e-9))

    shot = ode.shoot(sol.alpha, params, r, n=65)
    endpoint = abs(float(shot.y[-1]) - R) / max(1.0, R)
    checks.append(("shooting_endpoint", endpoint, 1e-8))

    distortion = energy_mod.distortion_energy(sol).value
    inverse = energy_mod.inverse_energy(sol).value
    duality = abs(distortion - inverse) / max(1.0, abs(distortion))
    checks.append(("duality_gap", duality, 1e-7))

    rows = [
        {"name": name, "value": value, "threshold": thr, "pass": value <= thr}
        for name, value, thr in checks
    ]
    all_pass = all(row["pass"] for row in rows)
    _emit({"alpha": sol.alpha, "checks": rows, "all_pass": all_pass}, args.format)
    return 0 if all_pass else 1


def _cmd_oracle(args) -> int:
    annuli, params = _inputs(args)
    sol = extremal.solve_extremal(annuli, params, tol=args.tol)
    problem = oracle_mod.DiscreteProblem(annuli, params, n=args.n, seed=args.seed)
    result = oracle_mod.minimize(problem)

    H_star = np.asarray(extremal.profile(sol, problem.t_grid), dtype=float)
    H_star[0] = 1.0
    sup_gap = float(np.max(np.abs(result.profile.H_values - H_star)))

    e_closed = energy_mod.closed_form_energy(sol).value
    e_star = oracle_mod.discrete_energy(problem, H_star)
    guard = max(1e-6, 2.0 * abs(e_star - e_closed))
    deltas = oracle_mod.perturbation_sweep(problem, sol, k=args.k, magnitude=args.magnitude)
    min_delta = float(np.min(deltas)) if args.k > 0 else 0.0

    checks = {
        "profile_gap": sup_gap <= 1e-3,
        "energy_band": (
            result.energy >= e_closed - guard
            and result.energy <= e_star + 1e-8 * max(1.0, abs(e_star))
        ),
        "perturbations": min_delta >= -1e-9,
    }
    all_pass = all(checks.values())
    _emit(
        {
            "n": problem.n,
            "iterations": result.iterations,
            "energy": result.energy,
            "energy_closed": e_closed,
            "energy_discrete_extremal": e_star,
            "sup_norm_gap": sup_gap,
            "min_perturbation_delta": min_delta,
            "checks": checks,
            "all_pass": all_pass,
        },
        args.format,
    )
    return 0 if all_pass else 1


_SWEEP_COLUMNS = (
    "r",
    "R",
    "a",
    "b",
    "lambda",
    "feasible",
    "alpha",
    "energy_closed",
    "energy_quad",
    "el_residual_max",
)


def _sweep_row(cfg: dict) -> dict:
    lam = cfg["lambda"] if "lambda" in cfg else cfg["lam"]
    annuli = AnnulusPair(float(cfg["r"]), float(cfg["R"]))
    params = EnergyParams(float(cfg["a"]), float(cfg["b"]), float(lam))
    row = {
        "r": annuli.r,
        "R": annuli.R,
        "a": params.a,
        "b": params.b,
        "lambda": params.lam,
        "feasible": False,
        "alpha": None,
        "energy_closed": None,
        "energy_quad": None,
        "el_residual_max": None,
    }
    report = nitsche.is_feasible(annuli, params)
    if not report.feasible:
        return row
    sol = extremal.solve_extremal(annuli, params)
    ts = extremal.log_grid(annuli.r, 257)
    residual = ode.euler_lagrange_residual(
        lambda t: extremal.profile(sol, t),
        lambda t: extremal.derivative(sol, t),
        lambda t: extremal.second_derivative(sol, t),
        params,
    )
    row.update(
        feasible=True,
        alpha=sol.alpha,
        energy_closed=energy_mod.closed_form_energy(sol).value,
        energy_quad=energy_mod.solution_radial_energy(sol).value,
        el_residual_max=float(np.max(np.abs(residual(ts)))),
    )
    return row


def _read_sweep_config(path: str) -> list:
    """Parse a JSONL sweep file: one {r, R, a, b, lambda} object per line."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise ValidationError(f"cannot read sweep config {path!r}: {exc.strerror}") from exc
    configs = []
    for lineno, line in enumerate(raw_lines, start=1):
        if not line.strip():
            continue
        try:
            cfg = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}:{lineno}: invalid JSON: {exc.msg}") from exc
        if not isinstance(cfg, dict):
            raise ValidationError(
                f"{path}:{lineno}: expected a JSON object, got {type(cfg).__name__}"
            )
        lam_key = "lam" if "lam" in cfg and "lambda" not in cfg else "lambda"
        keys = ("r", "R", "a", "b", lam_key)
        missing = [key for key in keys if key not in cfg]
        if missing:
            raise ValidationError(f"{path}:{lineno}: missing keys: {', '.join(missing)}")
        for key in keys:
            value = cfg[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(
                    f"{path}:{lineno}: {key} must be a number, got {value!r}"
                )
        configs.append(cfg)
    return configs


def _cmd_sweep(args) -> int:
    configs = _read_sweep_config(args.config)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, configs))
    else:
        rows = [_sweep_row(cfg) for cfg in configs]
    lines = [",".join(_SWEEP_COLUMNS)]
    lines.extend(
        ",".join(_csv_cell(row[col]) for col in _SWEEP_COLUMNS) for row in rows
    )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_export(args) -> int:
    annuli, params = _inputs(args)
    if args.n < 2:
        raise ValidationError(f"--n must be at least 2, got {args.n}")
    sol = extremal.solve_extremal(annuli, params, tol=args.tol)
    extremal.write_profile_csv(sol, args.out, n=args.n)
    _emit({"out": args.out, "n": args.n, "alpha": sol.alpha}, "json")
    return 0


# ----------------------------------------------------------- entry point ---


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.bound is not None and math.isfinite(exc.bound):
            print(f"bound: {exc.bound:.17g}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CombEnergyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
