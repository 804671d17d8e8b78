"""Command-line surface: polygon checks, periods, spectra, conifold data, identities.

Exit codes: 0 success, 1 usage/validation error, 2 tolerance failure.
All floats are serialized with 17 significant digits next to an explicit
error-estimate field, so artifacts are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, QuantCurvesError
from .families import CurveFamily, builtin_family_ids, get_family, load_family

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class RunConfig:
    """Flat configuration; file values are overridden by CLI flags."""
    family: str | None = None
    polygon_file: str | None = None
    precision_bits: int = 256
    series_order: int = 120
    basis_schedule: tuple[int, ...] = (120, 160, 200)
    root_tol: float = 1e-10
    compare_tol: float = 1e-5
    cache_dir: str | None = None
    out: str | None = None

    KNOWN = {"family", "polygon_file", "precision_bits", "series_order", "basis_schedule",
             "root_tol", "compare_tol", "cache_dir", "out"}

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        cfg = cls()
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"malformed config line: {line!r}")
                key, val = (s.strip() for s in line.split("=", 1))
                if key not in cls.KNOWN:
                    raise ConfigError(f"unknown config key: {key!r}")
                cfg.apply(key, val)
        cfg.validate()
        return cfg

    def apply(self, key: str, val: str) -> None:
        if key in ("family", "polygon_file", "cache_dir", "out"):
            setattr(self, key, val)
        elif key in ("precision_bits", "series_order"):
            setattr(self, key, int(val))
        elif key == "basis_schedule":
            self.basis_schedule = tuple(int(x) for x in val.split(","))
        elif key in ("root_tol", "compare_tol"):
            setattr(self, key, float(val))

    def validate(self) -> None:
        if self.precision_bits < 64:
            raise ConfigError("precision_bits must be >= 64")
        if self.series_order <= 0 or any(b <= 0 for b in self.basis_schedule):
            raise ConfigError("numeric settings must be positive")
        if self.root_tol <= 0 or self.compare_tol <= 0:
            raise ConfigError("tolerances must be positive")


def _resolve_family(cfg: RunConfig) -> CurveFamily:
    if cfg.polygon_file:
        return load_family(cfg.polygon_file)
    if cfg.family:
        return get_family(cfg.family)
    raise ConfigError("no family given (use --family or --file)")


def _emit(cfg: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if cfg.out:
        tmp = cfg.out + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, cfg.out)
    else:
        print(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="family id: " + ", ".join(builtin_family_ids()) + ", gg:<g>, m_n:<m>,<n>")
    p.add_argument("--file", dest="polygon_file", help="polygon/family JSON file")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--order", type=int, dest="series_order", help="series truncation order")
    p.add_argument("--precision", type=int, dest="precision_bits", help="working precision in bits")
    p.add_argument("--cache-dir", dest="cache_dir", help="cache directory (or QC_CACHE_DIR)")
    p.add_argument("--out", help="output JSON path (stdout otherwise)")


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if getattr(args, "config", None) else RunConfig()
    for key in ("family", "polygon_file", "series_order", "precision_bits", "cache_dir", "out"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if getattr(args, "basis", None):
        cfg.basis_schedule = tuple(int(x) for x in args.basis.split(","))
    if getattr(args, "tol", None):
        cfg.root_tol = args.tol
    cfg.validate()
    if cfg.cache_dir:
        os.environ.setdefault("QC_CACHE_DIR", cfg.cache_dir)
    return cfg


def cmd_polygon(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .lattice import classify_points
    interior, boundary, g, r, r_polar = classify_points(fam.polygon)
    payload = {
        "family": fam.name or "custom",
        "vertices": [list(v) for v in fam.polygon.vertices],
        "g": g, "r": r, "r_polar": r_polar,
        "area": _rat(fam.polygon.area),
        "pick_check": fam.polygon.pick_check(),
        "reflexive": fam.polygon.is_reflexive(),
        "tempered": fam.is_tempered(),
        "interior_points": [list(p) for p in interior],
        "boundary_points": [list(p) for p in boundary],
    }
    _emit(cfg, payload)
    return EXIT_OK


def cmd_periods(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .periods import evaluate_periods
    pv = evaluate_periods(fam, args.a, N=cfg.series_order, prec_bits=cfg.precision_bits)
    payload = {
        "family": fam.name or "custom", "a": _f17(pv.a),
        "t": _f17(pv.t), "omega_gamma": _f17(pv.omega_gamma),
        "Omega": [_f17(pv.Omega.real), _f17(pv.Omega.imag)],
        "R_gamma": [_f17(pv.R_gamma.real), _f17(pv.R_gamma.imag)],
        "R_beta": [_f17(pv.R_beta.real), _f17(pv.R_beta.imag)],
        "nu": _f17(pv.nu), "V": _f17(pv.V),
        "error_estimate": _f17(pv.error_estimate),
        "series_order": pv.order, "precision_bits": pv.prec_bits,
    }
    _emit(cfg, payload)
    return EXIT_OK


def cmd_gw(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .periods import conifold_locate, gw_extract
    gwd = gw_extract(fam, N=max(cfg.series_order, args.kmax + 16))
    a_hat = conifold_locate(fam)
    gw_rows = [{"k": k, "N_k": _rat(v)} for k, v in sorted(gwd.gw.items()) if k <= args.kmax]
    bps_rows = [{"k": k, "n_k": _rat(v)} for k, v in sorted(gwd.bps.items()) if k <= args.kmax]
    payload = {
        "family": fam.name or "custom",
        "g": fam.g, "r": fam.polygon.r, "r_polar": gwd.r_circ,
        "a_hat": _f17(a_hat),
        "gw": gw_rows, "bps": bps_rows,
        "T": _rat(gwd.T), "B_circ": _rat(gwd.B_circ),
        "proven_bkv_case": fam.name in ("local_p2", "local_p1xp1", "local_f1", "local_f2"),
    }
    _emit(cfg, payload)
    all_int = all(v.denominator == 1 for k, v in gwd.bps.items() if k <= args.kmax)
    return EXIT_OK if all_int else EXIT_TOLERANCE


def cmd_quantize(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .quantize import predicted_spectrum
    pred = predicted_spectrum(fam, levels=args.levels, tol=cfg.root_tol,
                              N=cfg.series_order, prec_bits=cfg.precision_bits)
    payload = {
        "family": pred.family_id, "a_hat": _f17(pred.a_hat),
        "nu_edge": _f17(pred.nu_edge),
        "roots": [{"n": r.n, "a_n": _f17(r.a), "residual": _f17(r.residual),
                   "bracket": [_f17(r.bracket_lo), _f17(r.bracket_hi)]} for r in pred.roots],
    }
    _emit(cfg, payload)
    if args.csv:
        pred.write_csv(args.csv)
    ok = all(r.residual < cfg.root_tol for r in pred.roots)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_spectrum(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .spectral import SpectralProblem, low_spectrum
    prob = SpectralProblem(fam, basis_schedule=cfg.basis_schedule)
    res = low_spectrum(prob, k=args.levels)
    payload = {
        "family": res.family_id, "hbar": _f17(res.hbar),
        "basis_schedule": list(res.basis_sizes),
        "eigenvalues": [_f17(v) for v in res.eigenvalues],
        "convergence_estimates": [_f17(v) for v in res.convergence],
        "converged": res.converged,
        "hermiticity_defect": _f17(res.hermiticity_defect),
        "solver": res.solver,
    }
    _emit(cfg, payload)
    return EXIT_OK if all(res.converged) else EXIT_TOLERANCE


def cmd_compare(args) -> int:
    cfg = _config_from_args(args)
    fam = _resolve_family(cfg)
    from .quantize import predicted_spectrum
    from .spectral import SpectralProblem, low_spectrum
    pred = predicted_spectrum(fam, levels=args.levels, tol=cfg.root_tol,
                              N=cfg.series_order, prec_bits=cfg.precision_bits)
    res = low_spectrum(SpectralProblem(fam, basis_schedule=cfg.basis_schedule), k=args.levels)
    rows = []
    worst = 0.0
    for root, lam in zip(pred.roots, res.eigenvalues):
        gap = abs(root.a - lam) / abs(lam)
        worst = max(worst, gap)
        rows.append({"n": root.n, "a_n": _f17(root.a), "lambda": _f17(lam),
                     "relative_gap": _f17(gap)})
    payload = {"family": pred.family_id, "levels": args.levels, "rows": rows,
               "worst_relative_gap": _f17(worst), "tolerance": _f17(cfg.compare_tol)}
    _emit(cfg, payload)
    return EXIT_OK if worst < cfg.compare_tol else EXIT_TOLERANCE


def cmd_conifold(args) -> int:
    cfg = _config_from_args(args)
    from .conifold import chebyshev_conifold
    data = chebyshev_conifold(args.g, with_kappa=not args.no_kappa)
    payload = {
        "g": data.g,
        "a_hat": list(data.a_hat),
        "nodes": [_f17(x) for x in data.nodes],
        "node_residuals": [_f17(x) for x in data.node_residuals],
        "kappa": list(data.kappa),
        "ring_points": [{"j": rp.j, "a_ring": _f17(rp.a_ring), "x_ring": _f17(rp.x_ring),
                         "residue": _f17(rp.residue), "node_residual": _f17(rp.node_residual)}
                        for rp in data.ring_points],
    }
    _emit(cfg, payload)
    return EXIT_OK


def cmd_dilog_identity(args) -> int:
    cfg = _config_from_args(args)
    from .conifold import theorem_b_check
    rep = theorem_b_check(args.g, args.j, n_max=args.degree_max)
    payload = rep.to_json()
    payload["pass"] = rep.residual < args.tol
    if args.report:
        cfg.out = args.report
    _emit(cfg, payload)
    return EXIT_OK if rep.residual < args.tol else EXIT_TOLERANCE


def cmd_plotdata(args) -> int:
    cfg = _config_from_args(args)
    lines: list[str] = []
    if args.kind == "nu_of_a":
        fam = _resolve_family(cfg)
        from .periods import conifold_locate, evaluate_periods
        a_hat = abs(conifold_locate(fam))
        lo = args.a_min if args.a_min else a_hat * 1.05
        hi = args.a_max if args.a_max else a_hat * 40
        lines.append("# nu(a) ladder; columns: a nu(a)")
        for i in range(args.points):
            a = lo * (hi / lo) ** (i / (args.points - 1))
            pv = evaluate_periods(fam, a, N=cfg.series_order)
            lines.append(f"{_f17(a)} {_f17(pv.nu)}")
    elif args.kind == "spectrum_ladder":
        fam = _resolve_family(cfg)
        from .quantize import predicted_spectrum
        from .spectral import SpectralProblem, low_spectrum
        pred = predicted_spectrum(fam, levels=args.levels, N=cfg.series_order)
        res = low_spectrum(SpectralProblem(fam, basis_schedule=cfg.basis_schedule), k=args.levels)
        lines.append("# columns: n a_n lambda_n")
        for root, lam in zip(pred.roots, res.eigenvalues):
            lines.append(f"{root.n} {_f17(root.a)} {_f17(lam)}")
    elif args.kind == "identity_partial_sums":
        from .conifold import _lattice_shells, a_hat_vector
        import mpmath as mp
        shells, _count = _lattice_shells(args.g, args.j, args.degree_max)
        ah = a_hat_vector(args.g)
        lines.append("# columns: shell_degree partial_rhs")
        total = 0.0
        for n in sorted(shells):
            total += float(mp.mpf(shells[n].numerator) / mp.mpf(shells[n].denominator))
            lines.append(f"{n} {_f17(math.log(abs(ah[args.j - 1])) - total)}")
    text = "\n".join(lines)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quantcurves",
                                 description="periods, normal functions, spectra, and conifold "
                                             "identities for mirror curves")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polygon", help="lattice data and temperedness of a family")
    _add_common(p)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("periods", help="evaluate t, omega, Omega, R_beta, nu, V at a point")
    _add_common(p)
    p.add_argument("--a", type=float, required=True)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("gw", help="instanton numbers and torsion constants")
    _add_common(p)
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("quantize", help="roots of nu(a) = n")
    _add_common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--csv", help="also write roots as CSV")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("spectrum", help="low-lying operator eigenvalues")
    _add_common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--basis", help="comma-separated basis schedule, e.g. 120,160,200")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", help="quantization roots vs operator eigenvalues")
    _add_common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--basis", help="comma-separated basis schedule")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("conifold", help="maximal conifold point data for the diagonal family")
    _add_common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--no-kappa", action="store_true", help="skip the conifold-multiple row")
    p.set_defaults(func=cmd_conifold)

    p = sub.add_parser("dilog-identity", help="verify a conifold dilogarithm identity")
    _add_common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--degree-max", type=int, default=None)
    p.add_argument("--tol", dest="tol", type=float, default=1e-4)
    p.add_argument("--report", help="write the identity report to this path")
    p.set_defaults(func=cmd_dilog_identity)

    p = sub.add_parser("plotdata", help="CSV-ish data for external plotting")
    _add_common(p)
    p.add_argument("--kind", choices=["nu_of_a", "spectrum_ladder", "identity_partial_sums"],
                   required=True)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--a-min", type=float, default=None)
    p.add_argument("--a-max", type=float, default=None)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--basis", help="comma-separated basis schedule")
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--degree-max", type=int, default=300)
    p.set_defaults(func=cmd_plotdata)

    return ap


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, KeyError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuantCurvesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
