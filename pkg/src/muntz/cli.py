"""Command-line front end: JSON configs in, machine-readable reports out.

Every report embeds the fully resolved configuration, so re-running from
that block reproduces the report byte for byte.  All numbers serialize
as decimal strings at a digit count derived from the working precision;
binary floats never appear in the output.

Exit codes: 0 success, 2 validation or config problems, 3 numerical
failures that more precision might fix.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from mpmath import mp

from . import duals as duals_mod
from . import momentsolve, operator, series
from .domain import domain_from_json, domain_to_json
from .errors import MalformedConfig, MuntzError, NumericalError, ValidationError
from .exponents import exponents_from_json, exponents_to_json
from .gram import gram
from .precision import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS, fmt, to_mpf, workbits

COMMANDS = (
    "validate",
    "gram",
    "distances",
    "duals",
    "expand",
    "remez",
    "moments",
    "operator",
    "hereditary",
)

ENV_PRECISION = "MUNTZ_PRECISION_BITS"


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except FileNotFoundError as exc:
        raise MalformedConfig(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedConfig(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise MalformedConfig("config root must be a JSON object")
    return cfg


def _resolve_precision(cfg: dict, args) -> int:
    # flag > environment > config > default
    if getattr(args, "precision_bits", None):
        bits = args.precision_bits
    elif os.environ.get(ENV_PRECISION):
        try:
            bits = int(os.environ[ENV_PRECISION])
        except ValueError as exc:
            raise MalformedConfig(f"{ENV_PRECISION} is not an integer") from exc
    else:
        bits = int(cfg.get("precision_bits", DEFAULT_PRECISION_BITS))
    if bits < 64:
        raise MalformedConfig("precision_bits must be at least 64")
    return bits


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise MalformedConfig(f"config is missing required block {key!r}")
    return cfg[key]


def _parse_int_list(text) -> list:
    if isinstance(text, list):
        return [int(v) for v in text]
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise MalformedConfig(f"bad integer list {text!r}") from exc


def _build_inputs(cfg: dict, bits: int):
    wd = domain_from_json(_require(cfg, "domain"), bits)
    lam = exponents_from_json(_require(cfg, "exponents"), bits)
    return wd, lam


def _emit(report: dict, args) -> None:
    if getattr(args, "format", "json") == "csv":
        text = _to_csv(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(report: dict) -> str:
    rows = report.get("results", {}).get("rows")
    if rows is None:
        raise MalformedConfig("this command has no tabular output; use --format json")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = report["results"].get("columns")
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _base_report(command: str, cfg: dict, bits: int) -> dict:
    resolved = dict(cfg)
    resolved["precision_bits"] = bits
    return {"command": command, "config": resolved, "results": {}}


# -- subcommand implementations ---------------------------------------------


def _cmd_validate(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    report = _base_report("validate", cfg, bits)
    report["config"]["domain"] = domain_to_json(wd)
    report["config"]["exponents"] = exponents_to_json(lam)
    report["results"] = {
        "r_A": fmt(wd.r_a, bits),
        "r_w": fmt(wd.r_w, bits),
        "total_measure": fmt(wd.total_measure, bits),
        "weight_mass": fmt(wd.weight_mass, bits),
        "exponent_count": len(lam),
        "gap": fmt(lam.gap, bits),
        "summability_tag": lam.summability_tag,
    }
    return report


def _cmd_gram(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(lam))
    g = gram(wd, lam, n, bits, int(cfg.get("max_precision_bits", MAX_PRECISION_BITS)))
    report = _base_report("gram", cfg, bits)
    report["config"]["N"] = n
    ub = g.precision_bits
    report["results"] = {
        "n": g.n,
        "precision_bits_used": ub,
        "cond_estimate": fmt(g.cond_estimate, ub),
        "entries": [[fmt(g.entries[i, j], ub) for j in range(g.n)] for i in range(g.n)],
        "columns": ["i", "j", "value"],
        "rows": [
            [i + 1, j + 1, fmt(g.entries[i, j], ub)]
            for i in range(g.n)
            for j in range(g.n)
        ],
    }
    return report


def _oracle_block(wd, lam, n, sizes, bits):
    if not wd.is_unit_lebesgue:
        return {"applicable": False, "reason": "closed form needs [0,1] with unit weight"}
    values = {
        str(size): fmt(duals_mod.oracle_distance(lam, n, size, bits), bits)
        for size in sizes
    }
    return {
        "applicable": True,
        "source": "classical closed-form distance on [0,1], unit weight",
        "values": values,
    }


def _cmd_distances(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "n", None) or cfg.get("n") or 1)
    sizes = _parse_int_list(getattr(args, "N_list", None) or cfg.get("N_list") or [len(lam)])
    rel_tol = getattr(args, "rel_tol", None) or cfg.get("rel_tol", "0.01")
    report_obj = duals_mod.distance_sweep(wd, lam, n, sizes, rel_tol, bits)
    ub = report_obj.precision_bits
    g_last = gram(wd, lam, sizes[-1], bits)
    report = _base_report("distances", cfg, bits)
    report["config"].update({"n": n, "N_list": sizes, "rel_tol": str(rel_tol)})
    results = {
        "precision_bits_used": ub,
        "cond_estimate": fmt(g_last.cond_estimate, ub),
        "n": n,
        "stabilized": report_obj.stabilized,
        "limit_estimate": fmt(report_obj.limit_estimate, ub),
        "sections": [[size, fmt(d, ub)] for size, d in report_obj.sections],
        "exponent_slopes": [
            [size, fmt(s, ub)] for size, s in report_obj.exponent_slopes()
        ],
        "oracle": _oracle_block(wd, lam, n, sizes, bits),
        "columns": ["N", "distance"],
        "rows": [[size, fmt(d, ub)] for size, d in report_obj.sections],
    }
    eps = getattr(args, "epsilon", None) or cfg.get("epsilon")
    if eps is not None:
        cert = duals_mod.lower_bound_certificate(report_obj, eps)
        report["config"]["epsilon"] = str(eps)
        results["certificate"] = {
            "epsilon": str(eps),
            "u_epsilon": fmt(cert.u_epsilon, ub),
            "passed": cert.passed,
            "stable": cert.stable,
            "section_ratios": [[size, fmt(r, ub)] for size, r in cert.section_ratios],
        }
    report["results"] = results
    return report


def _cmd_duals(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(lam))
    g = gram(wd, lam, n, bits)
    fam = duals_mod.dual_family(g)
    ub = g.precision_bits
    with workbits(ub):
        biorth = max(
            abs(sum(g.entries[m, k] * fam.coeffs[k, j] for k in range(n)) - (1 if m == j else 0))
            for m in range(n)
            for j in range(n)
        )
    report = _base_report("duals", cfg, bits)
    report["config"]["N"] = n
    report["results"] = {
        "precision_bits_used": ub,
        "cond_estimate": fmt(g.cond_estimate, ub),
        "coefficient_columns": [
            [fmt(fam.coeffs[i, j], ub) for i in range(n)] for j in range(n)
        ],
        "norms": [fmt(v, ub) for v in fam.norms],
        "distances": [fmt(v, ub) for v in fam.distances],
        "max_biorthogonality_residual": fmt(biorth, ub),
        "columns": ["n", "norm", "distance"],
        "rows": [
            [k + 1, fmt(fam.norms[k], ub), fmt(fam.distances[k], ub)] for k in range(n)
        ],
    }
    return report


def _target_from_config(cfg: dict, lam, wd, bits: int):
    block = _require(cfg, "target")
    kind = block.get("kind")
    if kind == "pure_power":
        return series.TargetFunction.pure_power(block["mu"], bits)
    if kind == "muntz_combo":
        coeffs = [to_mpf(v, bits) for v in block["coeffs"]]
        combo = series.MuntzSeries(
            lam_ref=lam, coeffs=tuple(coeffs), radius=wd.r_w, precision_bits=bits
        )
        return series.TargetFunction.muntz_combo(combo)
    raise MalformedConfig(f"unknown target kind {kind!r}")


def _cmd_expand(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(lam))
    target = _target_from_config(cfg, lam, wd, bits)
    proj, residual = series.project(wd, lam, n, target, bits)
    g = gram(wd, lam, n, bits)
    report = _base_report("expand", cfg, bits)
    report["config"]["N"] = n
    results = {
        "precision_bits_used": proj.precision_bits,
        "cond_estimate": fmt(g.cond_estimate, g.precision_bits),
        "coefficients": [fmt(c, proj.precision_bits) for c in proj.coeffs],
        "residual": fmt(residual, proj.precision_bits),
        "columns": ["n", "coefficient"],
        "rows": [[k + 1, fmt(c, proj.precision_bits)] for k, c in enumerate(proj.coeffs)],
    }
    sizes = getattr(args, "N_list", None) or cfg.get("N_list")
    if sizes:
        sizes = _parse_int_list(sizes)
        table = series.coefficient_convergence(wd, lam, target, sizes, bits)
        results["convergence"] = {
            "section_sizes": list(table.section_sizes),
            "coefficient_rows": [
                [size, [fmt(c, bits) for c in coeffs]] for size, coeffs in table.rows
            ],
            "diffs": [[fmt(d, bits) for d in dk] for dk in table.diffs],
            "cauchy_flags": list(table.cauchy_flags),
        }
        report["config"]["N_list"] = sizes
    report["results"] = results
    return report


def _cmd_remez(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    rho = getattr(args, "rho", None) or _require(cfg, "rho")
    grid_points = int(getattr(args, "grid_points", None) or cfg.get("grid_points", 1000))
    sizes = _parse_int_list(getattr(args, "N_list", None) or cfg.get("N_list") or [len(lam)])
    rows = []
    for size in sizes:
        c = series.christoffel_remez(wd, lam, size, rho, grid_points, bits)
        rows.append([size, fmt(c, bits)])
    g_last = gram(wd, lam, sizes[-1], bits)
    report = _base_report("remez", cfg, bits)
    report["config"].update(
        {"rho": str(rho), "grid_points": grid_points, "N_list": sizes}
    )
    report["results"] = {
        "precision_bits_used": bits,
        "cond_estimate": fmt(g_last.cond_estimate, g_last.precision_bits),
        "rho": str(rho),
        "grid_points": grid_points,
        "columns": ["N", "c_N"],
        "rows": rows,
    }
    return report


def _cmd_moments(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    d_values = _require(cfg, "d")
    data = momentsolve.build_moment_data(wd, lam, d_values, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(d_values))
    solution, residuals = momentsolve.solve_moments(wd, lam, data, n, bits)
    ub = solution.precision_bits
    g = gram(wd, lam, n, bits)
    report = _base_report("moments", cfg, bits)
    report["config"]["N"] = n
    results = {
        "precision_bits_used": ub,
        "cond_estimate": fmt(g.cond_estimate, g.precision_bits),
        "fitted_a": fmt(data.fitted_a, ub),
        "fitted_C": fmt(data.fitted_c, ub),
        "growth_ok": data.growth_ok,
        "coefficients": [fmt(c, ub) for c in solution.coeffs],
        "residuals": [fmt(r, ub) for r in residuals],
        "columns": ["n", "coefficient", "residual"],
        "rows": [
            [k + 1, fmt(solution.coeffs[k], ub), fmt(residuals[k], ub)]
            for k in range(n)
        ],
    }
    sizes = getattr(args, "N_list", None) or cfg.get("N_list")
    if sizes:
        sizes = _parse_int_list(sizes)
        cert = momentsolve.convergence_certificate(wd, lam, data, sizes, bits)
        results["certificate"] = {
            "section_sizes": list(cert.section_sizes),
            "partial_sums": [fmt(v, bits) for v in cert.partial_sums],
            "solution_norms": [fmt(v, bits) for v in cert.solution_norms],
            "ratios": [fmt(v, bits) for v in cert.ratios],
            "growth_ok": cert.growth_ok,
        }
        report["config"]["N_list"] = sizes
    report["results"] = results
    return report


def _operator_from_config(cfg: dict, lam, n: int, bits: int):
    block = _require(cfg, "operator")
    kind = block.get("kind", "dilation")
    rho = block.get("rho")
    if rho is None:
        raise MalformedConfig("operator block needs a rho value")
    if kind == "dilation":
        return operator.dilation_operator(lam, rho, max(n, int(block.get("count", n))), bits)
    if kind == "diagonal_list":
        return operator.diagonal_operator(block["u"], rho, bits)
    raise MalformedConfig(f"unknown operator kind {kind!r}")


def _apply_demo(wd, lam, spec, n: int, bits: int) -> list:
    """Evaluate the operator action on the all-ones series at three
    sample points; for the dilation kind this matches f(rho x)."""
    with workbits(bits):
        ones = series.MuntzSeries(
            lam_ref=lam,
            coeffs=tuple(mp.mpf(1) for _ in range(n)),
            radius=wd.r_w,
            precision_bits=bits,
        )
        acted = operator.apply(spec, ones)
        rows = []
        for q in ("0.25", "0.5", "0.75"):
            x = wd.r_w * mp.mpf(q)
            lifted = series.evaluate(acted, x, bits)
            direct = series.evaluate(ones, x * spec.rho, bits)
            rows.append(
                {
                    "x": fmt(x, bits),
                    "Tf_x": fmt(lifted, bits),
                    "f_rho_x": fmt(direct, bits),
                    "abs_diff": fmt(abs(lifted - direct), bits),
                }
            )
        return rows


def _cmd_operator(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(lam))
    g = gram(wd, lam, n, bits)
    spec = _operator_from_config(cfg, lam, n, bits)
    rep = operator.eigen_check(spec, g)
    ub = g.precision_bits
    report = _base_report("operator", cfg, bits)
    report["config"]["N"] = n
    demo = _apply_demo(wd, lam, spec, n, ub)
    report["results"] = {
        "precision_bits_used": ub,
        "cond_estimate": fmt(g.cond_estimate, ub),
        "apply_demo": demo,
        "kind": spec.kind,
        "rho": fmt(spec.rho, ub),
        "u": [fmt(v, ub) for v in spec.u[:n]],
        "eigen_ok": rep.eigen_ok,
        "adjoint_eigen_ok": rep.adjoint_eigen_ok,
        "simplicity_ok": rep.simplicity_ok,
        "kernel_trivial_ok": rep.kernel_trivial_ok,
        "normality_defect": fmt(rep.normality_defect, ub),
        "max_adjoint_residual": fmt(rep.max_adjoint_residual, ub),
        "tail_bounds": [[m, fmt(b, ub)] for m, b in rep.tail_bounds],
        "tail_decay_ok": rep.tail_decay_ok,
        "columns": ["m", "tail_bound"],
        "rows": [[m, fmt(b, ub)] for m, b in rep.tail_bounds],
    }
    return report


def _cmd_hereditary(cfg: dict, args) -> dict:
    bits = _resolve_precision(cfg, args)
    wd, lam = _build_inputs(cfg, bits)
    n = int(getattr(args, "N", None) or cfg.get("N") or len(lam))
    g = gram(wd, lam, n, bits)
    ub = g.precision_bits
    report = _base_report("hereditary", cfg, bits)
    report["config"]["N"] = n
    if getattr(args, "sweep", False) or cfg.get("sweep"):
        if n > 12:
            raise MalformedConfig("partition sweep limited to N <= 12")
        rows = []
        worst = None
        for mask in range(2 ** n):
            n2 = tuple(i + 1 for i in range(n) if mask & (1 << i))
            n1 = tuple(i + 1 for i in range(n) if not mask & (1 << i))
            rep = operator.hereditary_check(g, (n1, n2))
            rows.append(
                [
                    ",".join(map(str, n1)) or "-",
                    ",".join(map(str, n2)) or "-",
                    fmt(rep.mixed_matrix_det, ub),
                    fmt(rep.min_singular_value, ub),
                    rep.nonsingular,
                ]
            )
            if worst is None or rep.min_singular_value < worst:
                worst = rep.min_singular_value
        report["config"]["sweep"] = True
        report["results"] = {
            "precision_bits_used": ub,
            "cond_estimate": fmt(g.cond_estimate, ub),
            "partitions": len(rows),
            "min_over_partitions": fmt(worst, ub),
            "columns": ["N1", "N2", "det", "min_singular_value", "nonsingular"],
            "rows": rows,
        }
        return report

    block = cfg.get("partition") or {}
    n1 = _parse_int_list(getattr(args, "n1", None) or block.get("N1") or [])
    n2 = _parse_int_list(getattr(args, "n2", None) or block.get("N2") or [])
    rep = operator.hereditary_check(g, (n1, n2))
    report["config"]["partition"] = {"N1": list(rep.n1), "N2": list(rep.n2)}
    report["results"] = {
        "precision_bits_used": ub,
        "cond_estimate": fmt(g.cond_estimate, ub),
        "mixed_matrix_det": fmt(rep.mixed_matrix_det, ub),
        "min_singular_value": fmt(rep.min_singular_value, ub),
        "nonsingular": rep.nonsingular,
        "columns": ["N1", "N2", "det", "min_singular_value", "nonsingular"],
        "rows": [
            [
                ",".join(map(str, rep.n1)) or "-",
                ",".join(map(str, rep.n2)) or "-",
                fmt(rep.mixed_matrix_det, ub),
                fmt(rep.min_singular_value, ub),
                rep.nonsingular,
            ]
        ],
    }
    return report


_HANDLERS = {
    "validate": _cmd_validate,
    "gram": _cmd_gram,
    "distances": _cmd_distances,
    "duals": _cmd_duals,
    "expand": _cmd_expand,
    "remez": _cmd_remez,
    "moments": _cmd_moments,
    "operator": _cmd_operator,
    "hereditary": _cmd_hereditary,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muntz",
        description="Arbitrary-precision toolkit for weighted power systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config path")
        p.add_argument("--precision-bits", dest="precision_bits", type=int)
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name in ("gram", "duals", "expand", "moments", "operator", "hereditary"):
            p.add_argument("--N", dest="N", type=int)
        if name in ("distances", "expand", "remez", "moments"):
            p.add_argument("--N-list", dest="N_list")
        if name == "distances":
            p.add_argument("--n", dest="n", type=int)
            p.add_argument("--rel-tol", dest="rel_tol")
            p.add_argument("--epsilon", dest="epsilon")
        if name == "remez":
            p.add_argument("--rho", dest="rho")
            p.add_argument("--grid-points", dest="grid_points", type=int)
        if name == "hereditary":
            p.add_argument("--n1", dest="n1", help="comma-separated power indices")
            p.add_argument("--n2", dest="n2", help="comma-separated dual indices")
            p.add_argument("--sweep", action="store_true")
    return parser


def run(argv) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _load_config(args.config)
        report = _HANDLERS[args.command](cfg, args)
        _emit(report, args)
        return 0
    except NumericalError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, MuntzError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
