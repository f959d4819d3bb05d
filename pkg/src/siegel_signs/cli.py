"""Command line interface: ``siegel-signs {forms,scan,pipeline,bounds}``.

Data goes to stdout (or ``--output``), diagnostics to stderr. Exit codes:
0 success, 1 configuration error, 2 failed mathematical assertion,
3 precision or truncation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .bounds import bound_report
from .errors import ConfigError, DomainError, SiegelSignsError
from .jacobi import JacobiTable, cusp_generator, phi_0_1, phi_minus2_1
from .lift import SiegelLift
from .pipeline import direct_scan, run
from .reduction import enumerate_reduced
from .series import delta, eisenstein, miller_basis, rational_str

EXIT_OK, EXIT_CONFIG, EXIT_MATH, EXIT_PRECISION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    weight: int = 10
    nmax: int | None = None
    trace_max: int = 6
    k: str = "10"
    g: str = "2"
    output_format: str = "json"
    output_path: str | None = None
    threads: int = 1
    source: str | None = None
    table: bool = False
    lift_table: bool = False
    trM0: int | None = None
    cusp_check_prec: int | None = None


def _int_range(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise ConfigError(f"expected an integer or a range a..b, got {text!r}") from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _source_table(cfg: RunConfig, nmax: int) -> JacobiTable:
    if cfg.source:
        try:
            with open(cfg.source) as fh:
                table = JacobiTable.from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot read source table {cfg.source}: {exc}") from None
        if table.index != 1 or table.kind != "cusp" or table.weight % 2:
            raise ConfigError("source must be an index-1 cusp table of even weight")
        return table
    if cfg.weight not in (10, 12):
        raise ConfigError("--weight must be 10 or 12 (use --source for other weights)")
    return cusp_generator(cfg.weight, nmax)


def _positive(name, value, minimum=1):
    if value is not None and value < minimum:
        raise ConfigError(f"--{name} must be >= {minimum}")


# commands


def cmd_forms(cfg: RunConfig) -> str:
    nmax = 20 if cfg.nmax is None else cfg.nmax
    _positive("nmax", nmax)
    if cfg.lift_table:
        return _lift_table(cfg)
    prec = nmax + 1
    qexp = {"E4": eisenstein(4, prec), "E6": eisenstein(6, prec), "Delta": delta(max(prec, 2))}
    basis = miller_basis(cfg.weight, prec)
    tables = {
        "phi_-2_1": phi_minus2_1(nmax),
        "phi_0_1": phi_0_1(nmax),
        "phi_10_1": cusp_generator(10, nmax),
        "phi_12_1": cusp_generator(12, nmax),
    }
    if cfg.output_format == "json":
        return _dump_json({
            "qexpansions": {name: f.to_dict() for name, f in qexp.items()},
            "miller_basis": basis.to_dict(),
            "jacobi": {name: t.to_dict() for name, t in tables.items()},
        })
    if cfg.output_format == "csv":
        rows = []
        for name, f in qexp.items():
            rows += [[name, e, "", rational_str(c)] for e, c in f.items()]
        for i, f in enumerate(basis.forms):
            rows += [[f"miller_{cfg.weight}_{i}", e, "", rational_str(c)] for e, c in f.items()]
        for name, t in tables.items():
            rows += [[name, n, r, rational_str(c)] for (n, r), c in t.items()]
        return _csv(["object", "n", "r", "coefficient"], rows)
    lines = [f"{name} = {f!r}" for name, f in qexp.items()]
    lines.append(f"S_{cfg.weight}: {len(basis)} echelon form(s)")
    lines += [f"  {f!r}" for f in basis.forms]
    for name, t in tables.items():
        lines.append(f"{name}: weight {t.weight}, index {t.index}, {t.kind}")
        for n in range(min(t.nmax, 3) + 1):
            row = " ".join(f"{r}:{c}" for r, c in sorted(t.row(n).items()))
            lines.append(f"  n={n}  {row}")
    return "\n".join(lines) + "\n"


def _scan_nmax(cfg: RunConfig) -> int:
    # a(T) with trace t needs c(D) for D <= 4nm <= t^2
    need = -(-cfg.trace_max * cfg.trace_max // 4)
    return need if cfg.nmax is None else max(cfg.nmax, 1)


def _lift_table(cfg: RunConfig) -> str:
    _positive("trace-max", cfg.trace_max, 2)
    L = SiegelLift(_source_table(cfg, _scan_nmax(cfg)))
    rows = [[T.n, T.r, T.m, T.discriminant, rational_str(L.coeff(T))] for T in enumerate_reduced(cfg.trace_max)]
    header = ["n", "r", "m", "discriminant", "coefficient"]
    if cfg.output_format == "csv":
        return _csv(header, rows)
    if cfg.output_format == "json":
        return _dump_json({"weight": L.weight, "trace_max": cfg.trace_max,
                           "coefficients": [dict(zip(header, row)) for row in rows]})
    return "".join(f"a({n},{r},{m}) = {c}   [D = {d}]\n" for n, r, m, d, c in rows)


def cmd_scan(cfg: RunConfig) -> str:
    _positive("trace-max", cfg.trace_max, 2)
    L = SiegelLift(_source_table(cfg, _scan_nmax(cfg)))
    res = direct_scan(L, cfg.trace_max, cfg.threads)
    rep = bound_report(L.weight, 2)
    found = [("first_pos", *res.first_pos), ("first_neg", *res.first_neg)]
    if cfg.output_format == "csv":
        return _csv(["kind", "n", "r", "m", "trace", "discriminant", "value"],
                    [[kind, T.n, T.r, T.m, T.trace, T.discriminant, rational_str(v)] for kind, T, v in found])
    if cfg.output_format == "json":
        out = {"weight": L.weight, "trace_max": cfg.trace_max, "scanned": res.scanned}
        for kind, T, v in found:
            out[kind] = {**T.as_dict(), "trace": T.trace, "discriminant": T.discriminant, "value": rational_str(v)}
        out["theorem_bound"] = {"log": rep.theorem_bound_log, "value": rep.theorem_bound,
                                "constant_caveat": rep.constant_caveat}
        return _dump_json(out)
    lines = [f"weight {L.weight}, reduced T with trace <= {cfg.trace_max} ({res.scanned} scanned)"]
    for kind, T, v in found:
        lines.append(f"{kind}: a({T.n},{T.r},{T.m}) = {v}  trace {T.trace}")
    lines.append(f"theorem bound (constant 1): {rep.theorem_bound}")
    return "\n".join(lines) + "\n"


def cmd_pipeline(cfg: RunConfig) -> str:
    nmax = 60 if cfg.nmax is None else cfg.nmax
    _positive("nmax", nmax, 2)
    L = SiegelLift(_source_table(cfg, nmax))
    report = run(L, nmax, cfg.threads, cfg.cusp_check_prec)
    if cfg.output_format == "json":
        return _dump_json(report.to_dict())
    ws = [("witness_neg", report.witness_neg), ("witness_pos", report.witness_pos)]
    if cfg.output_format == "csv":
        return _csv(["kind", "n", "r", "m", "trace", "discriminant", "value"],
                    [[kind, w.T.n, w.T.r, w.T.m, w.trace, w.T.discriminant, rational_str(w.value)] for kind, w in ws])
    b = report.bound_comparison
    lines = [
        f"weight k = {report.weight}",
        f"T0 = {tuple(report.T0)}  a(T0) = {report.a_T0}  (trace bound {b.trace_bound_T0:.4f})",
        f"m0 = {report.m0}, alpha = {report.alpha}, k1 = {report.k1}",
        f"chi_alpha in S_{report.k1}: coordinates {[rational_str(c) for c in report.cusp_coordinates]}",
        f"first positive / negative coefficient of chi_alpha: n = {report.n_tilde_pos} / {report.n_tilde_neg}",
    ]
    for kind, w in ws:
        lines.append(f"{kind}: a{tuple(w.T)} = {w.value}  trace {w.trace}  via C({w.n_tilde}, {w.r_tilde}) = {w.C_value}")
    lines.append(f"theorem bound (constant 1): {b.theorem_bound}")
    lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in report.checks.items()))
    return "\n".join(lines) + "\n"


def cmd_bounds(cfg: RunConfig) -> str:
    ks, gs = _int_range(cfg.k), _int_range(cfg.g)
    for k in ks:
        if k % 2 or k < 4:
            raise DomainError(f"k must be even and >= 4, got {k}")
    for g in gs:
        if g < 2:
            raise DomainError(f"g must be >= 2, got {g}")
    reports = [bound_report(k, g, cfg.trM0) for k in ks for g in gs]
    if cfg.table or cfg.output_format == "csv":
        header = ["g", "k", "c_g", "trace_bound_T0", "theorem_bound_log", "theorem_bound"]
        rows = [[r.g, r.k, str(r.c_g), repr(r.trace_bound_T0), repr(r.theorem_bound_log), r.theorem_bound]
                for r in reports]
        return _csv(header, rows)
    if cfg.output_format == "json":
        data = [r.to_dict() for r in reports]
        return _dump_json(data[0] if len(data) == 1 else data)
    return "".join(
        f"g={r.g} k={r.k}: c_g={r.c_g}  tr T0 <= {r.trace_bound_T0:.4f}  "
        f"bound ~ {r.theorem_bound} (log {r.theorem_bound_log:.6f}, constant 1)\n"
        for r in reports)


COMMANDS = {"forms": cmd_forms, "scan": cmd_scan, "pipeline": cmd_pipeline, "bounds": cmd_bounds}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="siegel-signs", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "pretty"], default="json")
    common.add_argument("--output", dest="output_path", metavar="PATH")
    common.add_argument("--threads", type=int, default=1, help="worker threads (0 = auto)")
    common.add_argument("--nmax", type=int)
    common.add_argument("--trace-max", dest="trace_max", type=int, default=6)
    common.add_argument("--weight", type=int, default=10)
    common.add_argument("--source", metavar="JSON", help="index-1 cusp JacobiTable to lift instead of --weight")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("forms", parents=[common], help="emit q-expansions and Jacobi tables")
    p.add_argument("--lift-table", action="store_true", help="emit lift coefficients for reduced T instead")
    sub.add_parser("scan", parents=[common], help="first positive/negative lift coefficient")
    p = sub.add_parser("pipeline", parents=[common], help="run the constructive sign-change pipeline")
    p.add_argument("--cusp-check-prec", dest="cusp_check_prec", type=int)
    p = sub.add_parser("bounds", parents=[common], help="evaluate the explicit bounds")
    p.add_argument("--k", default="10", help="weight or range a..b")
    p.add_argument("--g", default="2", help="genus or range a..b")
    p.add_argument("--trM0", type=int, help="also evaluate the k1 and n~ bounds")
    p.add_argument("--table", action="store_true", help="CSV sweep over the k/g ranges")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    if cfg.threads < 0:
        print("siegel-signs: error: --threads must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text = COMMANDS[cfg.command](cfg)
    except SiegelSignsError as exc:
        print(f"siegel-signs {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"siegel-signs {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"siegel-signs: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
