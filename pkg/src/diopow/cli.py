"""Command-line front end: TOML config plus flags (flags win), JSON or
CSV or text reports, and the release-gate verify subcommand.

Every JSON report carries the paper_constants audit block. Values that
come out of high-precision arithmetic are serialized as decimal strings
so reports re-serialize byte-identically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import tomli

from . import verify as verify_mod
from .circle import selberg_J, selberg_Jstar
from .constants import (C4_EXACT, C5_UPPER_LITERAL, C_LITERAL, D1_LITERAL,
                        D_LITERAL, LIWANG_BASE_LITERAL, NU_LITERAL,
                        ROSSER_LITERAL, constants_table)
from .hp import DEFAULT_DIGITS
from .s0 import SystemValidationError, compute_s0, system_from_strings
from .search import count_solutions
from .series import (C0_LOWER, C0_UPPER, sigma_double_prime, sigma_minus,
                     sigma_prime)
from .sums import measure_exceed

_FORMATS = ("json", "csv", "text")

_DEFAULT_LAMBDAS = ("-sqrt(5)", "sqrt(3)", "sqrt(2)")
_DEFAULT_RATIOS = ("5", "3", "2")

_LAMBDA_KEYS = {"values", "ratios"}
_MU_KEYS = {"extra", "varpi"}
_RUN_KEYS = {"X", "s", "L", "L_values", "eta", "eps", "precision", "format",
             "out", "workers", "nu", "k", "h", "n", "quick"}


@dataclass
class RunConfig:
    subcommand: str
    lambdas: tuple[str, str, str] = _DEFAULT_LAMBDAS
    ratios: tuple[str, str, str] = _DEFAULT_RATIOS
    extra_mus: tuple[str, ...] = ()
    varpi: str = "0"
    eta: str = "1"
    eps: str | None = None          # subcommand-dependent default
    X: float = 10000.0
    s: int = 1
    L: int | None = None
    L_values: tuple[int, ...] = (8, 10, 12)
    precision: int = DEFAULT_DIGITS
    format: str = "json"
    out: str | None = None
    workers: int = 1
    nu: float = 0.8844472132
    k: int = 2
    h: float = 1000.0
    n_values: tuple[int, ...] = (24, 48, 120)
    quick: bool = False

    def eps_text(self) -> str:
        if self.eps is not None:
            return self.eps
        return "1e-20" if self.subcommand == "s0" else "0.1"

    def system(self):
        return system_from_strings(*self.lambdas, *self.ratios,
                                   extra_mus=self.extra_mus, varpi=self.varpi,
                                   eta=self.eta, eps=self.eps_text() if self.subcommand == "s0" else "0.1",
                                   digits=self.precision)


class ConfigError(ValueError):
    pass


def paper_constants_block() -> dict[str, str]:
    """Literal constants echoed into every report for audit."""
    return {
        "C": C_LITERAL,
        "D": D_LITERAL,
        "D1": D1_LITERAL,
        "nu": NU_LITERAL,
        "c4": str(C4_EXACT),
        "c5_upper": C5_UPPER_LITERAL,
        "c0_lower": f"{C0_LOWER.numerator}/{C0_LOWER.denominator}",
        "c0_upper": f"{C0_UPPER.numerator}/{C0_UPPER.denominator}",
        "rosser_schoenfeld": ROSSER_LITERAL,
        "comparison_base": LIWANG_BASE_LITERAL,
    }


# -- config loading ----------------------------------------------------


def _as_str(v) -> str:
    if isinstance(v, bool):
        raise ConfigError(f"expected a number or string, got boolean {v}")
    return v if isinstance(v, str) else repr(v)


def _check_keys(section: str, table: dict, allowed: set[str]) -> None:
    for key in table:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in [{section}]")


def load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}")
    for section in data:
        if section not in ("lambda", "mu", "run"):
            raise ConfigError(f"unknown section [{section}]")
    _check_keys("lambda", data.get("lambda", {}), _LAMBDA_KEYS)
    _check_keys("mu", data.get("mu", {}), _MU_KEYS)
    _check_keys("run", data.get("run", {}), _RUN_KEYS)
    return data


def _triplet(section: str, key: str, raw) -> tuple[str, str, str]:
    if not isinstance(raw, list) or len(raw) != 3:
        raise ConfigError(f"[{section}] {key} must be a list of 3 entries")
    return tuple(_as_str(v) for v in raw)


def build_config(args: argparse.Namespace) -> RunConfig:
    data = load_config_file(args.config) if args.config else {}
    lam = data.get("lambda", {})
    mu = data.get("mu", {})
    run = data.get("run", {})

    cfg = RunConfig(subcommand=args.subcommand)
    if "values" in lam:
        cfg.lambdas = _triplet("lambda", "values", lam["values"])
    if "ratios" in lam:
        cfg.ratios = _triplet("lambda", "ratios", lam["ratios"])
    if "extra" in mu:
        if not isinstance(mu["extra"], list):
            raise ConfigError("[mu] extra must be a list")
        cfg.extra_mus = tuple(_as_str(v) for v in mu["extra"])
    if "varpi" in mu:
        cfg.varpi = _as_str(mu["varpi"])

    plain = {"X": ("X", float), "s": ("s", int), "L": ("L", int),
             "precision": ("precision", int), "format": ("format", str),
             "out": ("out", str), "workers": ("workers", int),
             "nu": ("nu", float), "k": ("k", int), "h": ("h", float),
             "quick": ("quick", bool)}
    for key, (attr, conv) in plain.items():
        if key in run:
            try:
                setattr(cfg, attr, conv(run[key]))
            except (TypeError, ValueError):
                raise ConfigError(f"[run] {key} has the wrong type")
    if "eta" in run:
        cfg.eta = _as_str(run["eta"])
    if "eps" in run:
        cfg.eps = _as_str(run["eps"])
    if "L_values" in run:
        cfg.L_values = tuple(int(v) for v in run["L_values"])
    if "n" in run:
        cfg.n_values = tuple(int(v) for v in run["n"])

    # flags win over config-file values
    if args.l1 or args.l2 or args.l3:
        if not (args.l1 and args.l2 and args.l3):
            raise ConfigError("give all three of --l1 --l2 --l3 or none")
        cfg.lambdas = (args.l1, args.l2, args.l3)
    if args.r1 or args.r2 or args.r3:
        if not (args.r1 and args.r2 and args.r3):
            raise ConfigError("give all three of --r1 --r2 --r3 or none")
        cfg.ratios = (args.r1, args.r2, args.r3)
    if args.varpi is not None:
        cfg.varpi = args.varpi
    if args.eta is not None:
        cfg.eta = args.eta
    if args.eps is not None:
        cfg.eps = args.eps
    for attr in ("X", "s", "L", "precision", "format", "out", "workers",
                 "nu", "k", "h"):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(cfg, attr, v)
    if getattr(args, "L_values", None):
        cfg.L_values = tuple(int(t) for t in args.L_values.split(","))
    if getattr(args, "n", None):
        cfg.n_values = tuple(int(t) for t in args.n.split(","))
    if getattr(args, "quick", False):
        cfg.quick = True

    if cfg.format not in _FORMATS:
        raise ConfigError(f"format must be one of {_FORMATS}, got {cfg.format!r}")
    if cfg.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {cfg.workers}")
    if cfg.precision < 15:
        raise ConfigError("precision below 15 digits is not supported")
    return cfg


# -- report emission ---------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit(cfg: RunConfig, report: dict, csv_header: list[str],
         csv_rows: list[list], text_lines: list[str]) -> None:
    if cfg.format == "json":
        payload = dump_json(report)
    elif cfg.format == "csv":
        payload = _csv_text(csv_header, csv_rows)
    else:
        payload = "\n".join(text_lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# -- subcommands -------------------------------------------------------


def cmd_s0(cfg: RunConfig) -> int:
    rep = compute_s0(cfg.system())
    digits = min(cfg.precision, 30)
    report = {
        "paper_constants": paper_constants_block(),
        "system": {
            "lambdas": list(cfg.lambdas),
            "ratios": list(cfg.ratios),
            "eta": cfg.eta,
            "eps": cfg.eps_text(),
            "varpi": cfg.varpi,
        },
        "digits": rep.digits,
        "s0_ours": rep.s0,
        "s0_liwang": rep.s0_liwang,
        "gain": rep.gain.render(20),
        "capital_C": rep.capital_C_value.render(digits),
        "sum_abs_lambda": rep.sum_abs_lambda.render(digits),
        "ceiling_argument": rep.ceiling_argument.render(digits),
        "liwang_argument": rep.liwang_argument.render(digits),
        "ceiling_near_integer": rep.ceiling_near_integer,
        "liwang_near_integer": rep.liwang_near_integer,
        "condition_met": rep.condition_met,
        "s0_is_minimal": rep.s0_is_minimal,
        "warnings": list(rep.warnings),
    }
    rows = [[k, json.dumps(v) if isinstance(v, (dict, list)) else v]
            for k, v in sorted(report.items()) if k != "paper_constants"]
    text = [f"s0 = {rep.s0} (comparison value {rep.s0_liwang}, gain {float(rep.gain):.6f})",
            f"ceiling argument {rep.ceiling_argument.render(digits)}",
            f"condition met: {rep.condition_met}; minimal: {rep.s0_is_minimal}"]
    text += [f"warning: {w}" for w in rep.warnings]
    emit(cfg, report, ["key", "value"], rows, text)
    return 0


def cmd_constants(cfg: RunConfig) -> int:
    table = constants_table(cfg.precision)
    digits = min(cfg.precision, 40)
    entries = [{"name": c.name, "value": c.value.render(digits),
                "provenance": c.provenance, "note": c.note} for c in table]
    series_rows = []
    for n in cfg.n_values:
        sp = sigma_prime(n).exact
        sd = sigma_double_prime(n).exact
        row = {"n": n,
               "sigma_prime": f"{sp.numerator}/{sp.denominator}",
               "sigma_double_prime": f"{sd.numerator}/{sd.denominator}"}
        if n % 24 == 0:
            sm = sigma_minus(n).exact
            row["sigma_minus"] = f"{sm.numerator}/{sm.denominator}"
        series_rows.append(row)
    report = {"paper_constants": paper_constants_block(),
              "constants": entries, "singular_series": series_rows}
    csv_rows = [[e["name"], e["value"], e["provenance"]] for e in entries]
    csv_rows += [[f"sigma_prime({r['n']})", r["sigma_prime"], "exact"] for r in series_rows]
    text = [f"{e['name']:<28} {e['value']}  [{e['provenance']}]" for e in entries]
    text += [f"sigma'({r['n']}) = {r['sigma_prime']}  sigma''({r['n']}) = {r['sigma_double_prime']}"
             + (f"  sigma-({r['n']}) = {r['sigma_minus']}" if "sigma_minus" in r else "")
             for r in series_rows]
    emit(cfg, report, ["name", "value", "provenance"], csv_rows, text)
    return 0


def cmd_search(cfg: RunConfig) -> int:
    rep = count_solutions(cfg.system(), cfg.X, cfg.s, eps=float(cfg.eps_text()),
                          L=cfg.L, workers=cfg.workers)
    sample = [{"p1": r.p1, "p2": r.p2, "p3": r.p3, "m": list(r.m),
               "form_value": r.form_value.render(30), "weight": r.weight}
              for r in rep.records[:100]]
    report = {
        "paper_constants": paper_constants_block(),
        "X": rep.X, "s": rep.s, "L": rep.L, "eta": rep.eta,
        "count": rep.count,
        "weighted_sum": rep.weighted_sum,
        "weighted_cap": rep.weighted_cap,
        "flags": list(rep.flags),
        "x_is_convergent_denominator_square": rep.x_is_convergent_denominator_square,
        "matching_denominator": rep.matching_denominator,
        "records_sample": sample,
        "records_total": rep.count,
    }
    csv_rows = [[r.p1, r.p2, r.p3, "|".join(map(str, r.m)),
                 r.form_value.render(30), repr(r.weight)] for r in rep.records]
    text = [f"count = {rep.count} at X={rep.X} s={rep.s} L={rep.L} eta={rep.eta}",
            f"weighted sum = {rep.weighted_sum}",
            f"flags: {', '.join(rep.flags) if rep.flags else 'none'}"]
    emit(cfg, report, ["p1", "p2", "p3", "m", "form_value", "weight"], csv_rows, text)
    return 0


def cmd_measure(cfg: RunConfig) -> int:
    rows = []
    for L in cfg.L_values:
        est = measure_exceed(cfg.nu, L, markov_k=cfg.k, workers=cfg.workers)
        rows.append({"nu": est.nu, "L": est.L, "resolution": est.resolution,
                     "measure": est.measure, "crossings": est.crossings,
                     "markov_k": est.markov_k, "markov_value": est.markov_value})
    report = {"paper_constants": paper_constants_block(), "sweep": rows}
    csv_rows = [[r["nu"], r["L"], r["resolution"], repr(r["measure"]),
                 r["crossings"], repr(r["markov_value"])] for r in rows]
    text = [f"L={r['L']:>3}  measure={r['measure']:.6e}  bound={r['markov_value']:.6e}  "
            f"crossings={r['crossings']}" for r in rows]
    emit(cfg, report, ["nu", "L", "resolution", "measure", "crossings", "markov_value"],
         csv_rows, text)
    return 0


def cmd_selberg(cfg: RunConfig) -> int:
    eps = float(cfg.eps_text())
    J = selberg_J(cfg.X, cfg.h, eps)
    Jstar = selberg_Jstar(cfg.X, cfg.h, eps)
    norm = cfg.h * cfg.h * cfg.X
    row = {"X": cfg.X, "h": cfg.h, "eps": eps, "J": J, "Jstar": Jstar,
           "J_normalized": J / norm, "Jstar_normalized": Jstar / norm}
    report = {"paper_constants": paper_constants_block(), "rows": [row]}
    csv_rows = [[cfg.X, cfg.h, eps, repr(J), repr(Jstar),
                 repr(row["J_normalized"]), repr(row["Jstar_normalized"])]]
    text = [f"J({cfg.X:g}, {cfg.h:g}) = {J:.6e} (normalized {row['J_normalized']:.3e})",
            f"J*({cfg.X:g}, {cfg.h:g}) = {Jstar:.6e} (normalized {row['Jstar_normalized']:.3e})"]
    emit(cfg, report, ["X", "h", "eps", "J", "Jstar", "J_normalized", "Jstar_normalized"],
         csv_rows, text)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    results = verify_mod.run_all(quick=cfg.quick)
    lines = [r.line() for r in results]
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} criteria passed"
                 + (" (quick mode)" if cfg.quick else ""))
    out = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    sys.stdout.write(out)
    return 0 if n_pass == len(results) else 2


_DISPATCH = {"s0": cmd_s0, "constants": cmd_constants, "search": cmd_search,
             "measure": cmd_measure, "selberg": cmd_selberg, "verify": cmd_verify}


# -- argument parsing --------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="TOML config file")
    shared.add_argument("--out", help="write the report here instead of stdout")
    shared.add_argument("--format", choices=_FORMATS, help="report format")
    shared.add_argument("--precision", type=int, help="working decimal digits")
    shared.add_argument("--workers", type=int, help="worker count (1 = bitwise deterministic)")
    shared.add_argument("--l1")
    shared.add_argument("--l2")
    shared.add_argument("--l3")
    shared.add_argument("--r1")
    shared.add_argument("--r2")
    shared.add_argument("--r3")
    shared.add_argument("--varpi")
    shared.add_argument("--eta")
    shared.add_argument("--eps")
    shared.add_argument("--X", type=float)
    shared.add_argument("--s", type=int)
    shared.add_argument("--L", type=int)

    parser = argparse.ArgumentParser(
        prog="diopow",
        description="Desk-scale toolkit for a three-primes-and-powers-of-two inequality")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("s0", parents=[shared], help="sufficient power count and comparison")
    sub.add_parser("constants", parents=[shared], help="named constants and series table")\
       .add_argument("--n", help="comma-separated n list for the series table")
    sub.add_parser("search", parents=[shared], help="enumerate inequality solutions")
    m = sub.add_parser("measure", parents=[shared], help="exceedance-measure sweep")
    m.add_argument("--nu", type=float)
    m.add_argument("--k", type=int)
    m.add_argument("--L-values", dest="L_values", help="comma-separated L sweep")
    se = sub.add_parser("selberg", parents=[shared], help="variance integrals J and J*")
    se.add_argument("--h", type=float)
    v = sub.add_parser("verify", parents=[shared], help="run the acceptance criteria")
    v.add_argument("--quick", action="store_true", help="lighter parameters for dev loops")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return _DISPATCH[cfg.subcommand](cfg)
    except (ConfigError, SystemValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
