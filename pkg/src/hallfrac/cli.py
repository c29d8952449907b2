"""Command-line front-end.

Commands: gen, alpha, chi, chi-f, hall, gap, ackermann, verify.  Graphs come
from a construction expression (--expr) or a DIMACS file (--dimacs); all
randomness flows from --seed.  Exit codes: 0 success, 1 assertion/suite
failure, 2 usage error, 3 cap or overflow violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import ackermann, fraclp, hall, verify
from .construct import (BudgetExhaustedError, ExprSyntaxError, build,
                        parse_expression)
from .graph import Graph, SizeLimitError, format_dimacs, read_dimacs
from .invariants import alpha, chromatic_number
from .jsonio import SCHEMA_VERSION, dumps_canonical

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class RunConfig:
    command: str
    expr: str | None = None
    dimacs: str | None = None
    seed: int = 0
    hall_cap: int = hall.HALL_N_CAP
    lp_cap: int = fraclp.LP_N_CAP
    bit_cap: int = fraclp.DEFAULT_BIT_CAP
    json: bool = False
    out: str | None = None


def _load_graph(cfg: RunConfig) -> Graph:
    if (cfg.expr is None) == (cfg.dimacs is None):
        raise UsageError("exactly one of --expr and --dimacs is required")
    if cfg.expr is not None:
        return build(parse_expression(cfg.expr))
    return read_dimacs(cfg.dimacs)


class UsageError(ValueError):
    pass


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    body = dumps_canonical(payload) if cfg.json else text
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _cmd_gen(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    body = format_dimacs(g)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def _cmd_alpha(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    value, witness = alpha(g)
    payload = {"schema": SCHEMA_VERSION, "alpha": value,
               "witness": sorted_bits(witness)}
    _emit(cfg, payload, f"alpha = {value}  witness = {sorted_bits(witness)}\n")
    return EXIT_OK


def _cmd_chi(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    value, coloring = chromatic_number(g)
    payload = {"schema": SCHEMA_VERSION, "chi": value,
               "coloring": list(coloring.colors)}
    _emit(cfg, payload, f"chi = {value}\n")
    return EXIT_OK


def _cmd_chi_f(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    cert = fraclp.chi_f(g, bit_cap=cfg.bit_cap, n_cap=cfg.lp_cap)
    check = fraclp.verify_certificate(g, cert)
    if not check.ok:
        raise AssertionError(f"emitted certificate failed re-verification: "
                             f"{check.reason}")
    payload = fraclp.certificate_to_json(cert)
    _emit(cfg, payload, f"chi_f = {cert.value}\n")
    return EXIT_OK


def _cmd_hall(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    result = hall.hall_ratio(g, cap=cfg.hall_cap)
    payload = hall.hall_result_to_json(result)
    _emit(cfg, payload,
          f"rho = {result.value}  witness size = "
          f"{result.witness.bit_count()}  alpha(witness) = "
          f"{result.alpha_of_witness}\n")
    return EXIT_OK


def _cmd_gap(cfg: RunConfig) -> int:
    g = _load_graph(cfg)
    report = hall.gap_report(g, hall_cap=cfg.hall_cap, bit_cap=cfg.bit_cap,
                             lp_cap=cfg.lp_cap)
    payload = hall.gap_report_to_json(report)
    text = (f"rho = {report.rho}\nchi_f = {report.chi_f}\n"
            f"ratio = {report.ratio}\nchain_ok = {report.chain_ok}\n")
    _emit(cfg, payload, text)
    return EXIT_OK if report.chain_ok else EXIT_ASSERTION


def sorted_bits(mask: int) -> list[int]:
    from .graph import bits
    return sorted(bits(mask))


def _cmd_ackermann(args, cfg: RunConfig) -> int:
    budget = args.bits
    if args.facts:
        report = verify.suite_fact31(cfg.seed)
        text_lines = [f"{c['case']}: {c['outcome']} "
                      f"({'ok' if c['ok'] else 'FAIL'})"
                      for c in report["cases"]]
        _emit(cfg, report, "\n".join(text_lines) + "\n")
        return EXIT_OK if report["passed"] else EXIT_ASSERTION
    if args.k is None or args.b is None:
        raise UsageError("ackermann needs --k and --b (or --facts)")
    value = ackermann.F(args.k, args.b, bit_budget=budget)
    inv = ackermann.f_inv(args.k, args.b) if args.b >= 1 else None
    if isinstance(value, ackermann.Overflow):
        shown: dict = {"overflow": True, "bit_budget": value.bit_budget,
                       "completed_height": value.completed_height}
        text = (f"F_{args.k}({args.b}) overflows {budget} bits "
                f"(completed height {value.completed_height})\n")
    else:
        digits = str(value) if value.bit_length() <= 4096 else None
        shown = {"overflow": False, "bits": value.bit_length()}
        if digits is not None:
            shown["value"] = digits
        text = (f"F_{args.k}({args.b}) = "
                f"{digits if digits is not None else f'<{value.bit_length()} bits>'}\n")
    payload = {"schema": SCHEMA_VERSION, "k": args.k, "b": args.b,
               "F": shown}
    if inv is not None:
        payload["f_inv"] = inv
        text += f"f_{args.k}({args.b}) = {inv}\n"
    _emit(cfg, payload, text)
    return EXIT_OK


def _cmd_verify(args, cfg: RunConfig) -> int:
    names = verify.SUITE_NAMES if args.suite == "all" else (args.suite,)
    report = verify.run_battery(cfg.seed, names)
    lines = []
    for suite in report["suites"]:
        status = "pass" if suite["passed"] else "FAIL"
        lines.append(f"{suite['suite']}: {status} "
                     f"({len(suite['cases'])} cases)")
    lines.append(f"overall: {'pass' if report['passed'] else 'FAIL'}")
    _emit(cfg, report, "\n".join(lines) + "\n")
    return EXIT_OK if report["passed"] else EXIT_ASSERTION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hallfrac",
        description="Exact fractional-coloring and Hall-ratio laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, graph_input=True):
        if graph_input:
            p.add_argument("--expr", help="construction expression, e.g. "
                           "'join(cycle(5),cycle(7))'")
            p.add_argument("--dimacs", help="path to a DIMACS .col file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--hall-cap", type=int, default=hall.HALL_N_CAP)
        p.add_argument("--lp-cap", type=int, default=fraclp.LP_N_CAP)
        p.add_argument("--bits", type=int, default=fraclp.DEFAULT_BIT_CAP)
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", help="write output to this path")

    for name in ("gen", "alpha", "chi", "chi-f", "hall", "gap"):
        add_common(sub.add_parser(name))

    ack = sub.add_parser("ackermann")
    ack.add_argument("--k", type=int)
    ack.add_argument("--b", type=int)
    ack.add_argument("--facts", action="store_true",
                     help="run the bookkeeping fact checks")
    add_common(ack, graph_input=False)

    ver = sub.add_parser("verify")
    ver.add_argument("suite", choices=list(verify.SUITE_NAMES) + ["all"])
    add_common(ver, graph_input=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        expr=getattr(args, "expr", None),
        dimacs=getattr(args, "dimacs", None),
        seed=args.seed,
        hall_cap=args.hall_cap,
        lp_cap=args.lp_cap,
        bit_cap=args.bits,
        json=args.json,
        out=args.out,
    )
    if cfg.hall_cap <= 0 or cfg.lp_cap <= 0 or cfg.bit_cap <= 0:
        print("error: caps must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "gen":
            return _cmd_gen(cfg)
        if args.command == "alpha":
            return _cmd_alpha(cfg)
        if args.command == "chi":
            return _cmd_chi(cfg)
        if args.command == "chi-f":
            return _cmd_chi_f(cfg)
        if args.command == "hall":
            return _cmd_hall(cfg)
        if args.command == "gap":
            return _cmd_gap(cfg)
        if args.command == "ackermann":
            return _cmd_ackermann(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ExprSyntaxError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeLimitError, fraclp.BitBudgetError, BudgetExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
