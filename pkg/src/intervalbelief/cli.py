"""Command line front end.

    intervalbelief run --rules RULES --facts FACTS [--query PATTERN] [--format table|json]
    intervalbelief calc and --corr 0 "(0.4 0.9)" "(0.8 0.9)"

Exit status: 0 ok, 1 parse error, 2 engine error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import reduce
from typing import Sequence

from . import intervals as iv
from .combination import mscomb, sscomb
from .engine import EngineConfig, RunResult, TraceEntry, run
from .errors import IntervalBeliefError, ParseError, UsageError
from .intervals import IGNORANCE, Interval
from .kb import Binding, instantiate, match
from .language import Atom, parse_interval, parse_pattern, parse_program, lhs_conditions
from .modus_ponens import INTERPRETATION_ALIASES, MpConfig, apply_mp

EXIT_OK, EXIT_PARSE, EXIT_ENGINE, EXIT_USAGE = 0, 1, 2, 64


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageExit()


def fmt2(x: float) -> str:
    return f"{x:.2f}"


def fmt_interval2(i: Interval) -> str:
    return f"({fmt2(i.lower)} {fmt2(i.upper)})"


def fmt_full(i: Interval) -> str:
    return f"({i.lower:.15g} {i.upper:.15g})"


def fmt_binding(b: Binding) -> str:
    return ",".join(f"{k}={v}" for k, v in b)


def _bare(atom: Atom) -> str:
    return " ".join((atom.predicate, *atom.args))


# ------------------------------------------------------------------- run

def _report_atoms(result: RunResult, query) -> list[Atom]:
    targets = {t.atom for t in result.final_round()}
    if query is None:
        return sorted(targets)
    pool_ = targets | set(result.beliefs)
    return sorted(a for a in pool_ if match(query, a) is not None)


def _inputs_for(entries: list[TraceEntry], rules_by_id) -> list[Atom]:
    seen: dict[Atom, None] = {}
    for t in entries:
        for p in lhs_conditions(rules_by_id[t.rule_id].lhs):
            seen.setdefault(instantiate(p, t.binding))
    return list(seen)


def _input_order(result: RunResult):
    declared = {a: n for n, a in enumerate(result.facts)}
    return lambda atom: declared.get(atom, len(declared))


def _entry_label(t: TraceEntry) -> str:
    b = f"[{fmt_binding(t.binding)}]" if t.binding else ""
    return f"evidence {t.rule_id}{b} {t.atom}"


def render_table(result: RunResult, rules, query=None, show_trace=False) -> str:
    rules_by_id = {r.id: r for r in rules}
    final = result.final_round()
    lines: list[str] = []
    for atom in _report_atoms(result, query):
        entries = [t for t in final if t.atom == atom]
        rows: list[tuple[str, str]] = []
        for inp in sorted(_inputs_for(entries, rules_by_id), key=_input_order(result)):
            rows.append((_bare(inp), fmt_interval2(result.beliefs.get(inp, IGNORANCE))))
        for t in entries:
            val = fmt_interval2(t.outcome.interval) if t.outcome.fired else "not fired"
            rows.append((_entry_label(t), val))
        rows.append((f"overall evidence {atom}", fmt_interval2(result.beliefs.get(atom, IGNORANCE))))
        width = max(len(k) for k, _ in rows)
        lines.append(f"Inferring {atom}")
        lines.extend(f"  {k.ljust(width)}  {v}" for k, v in rows)
        lines.append("")
    lines.append(f"rounds: {result.rounds}")
    if show_trace:
        lines.append("")
        lines.append("trace:")
        for t in result.trace:
            out = fmt_full(t.outcome.interval) if t.outcome.fired else f"not fired ({t.outcome.reason})"
            b = f" [{fmt_binding(t.binding)}]" if t.binding else ""
            lines.append(f"  round {t.round} {t.rule_id}{b} -> {t.atom}: lhs {fmt_full(t.lhs_interval)}, {out}")
    return "\n".join(lines) + "\n"


def _contribution(t: TraceEntry) -> dict:
    d = {"rule": t.rule_id}
    if t.binding:
        d["binding"] = dict(t.binding)
    d["fired"] = t.outcome.fired
    if t.outcome.fired:
        d["lower"] = t.outcome.interval.lower
        d["upper"] = t.outcome.interval.upper
    else:
        d["reason"] = t.outcome.reason
    return d


def render_json(result: RunResult, rules, query=None, show_trace=False) -> str:
    final = result.final_round()
    atoms = []
    for atom in _report_atoms(result, query):
        b = result.beliefs.get(atom, IGNORANCE)
        atoms.append({
            "atom": str(atom),
            "lower": b.lower,
            "upper": b.upper,
            "contributions": [_contribution(t) for t in final if t.atom == atom],
        })
    doc: dict = {"atoms": atoms, "rounds": result.rounds}
    if show_trace:
        doc["trace"] = [
            {"round": t.round, "atom": str(t.atom), "lhs": [t.lhs_interval.lower, t.lhs_interval.upper],
             **_contribution(t)}
            for t in result.trace
        ]
    return json.dumps(doc, indent=2) + "\n"


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    try:
        return parse_program(_read(path))
    except ParseError as e:
        raise ParseError(f"{path}: {e.message}", e.line, e.column, e.rule_id) from None


def cmd_run(args) -> int:
    rules, facts_a = _load(args.rules)
    more_rules, facts = _load(args.facts)
    rules += more_rules
    facts = facts_a + facts
    query = None
    if args.query:
        try:
            query = parse_pattern(args.query)
        except ParseError as e:
            raise UsageError(f"bad --query {args.query!r}: {e.message}") from None
    cfg = EngineConfig(
        mp=MpConfig(INTERPRETATION_ALIASES[args.mp], args.theta, args.psi),
        max_rounds=args.max_rounds,
        freeze_facts=args.freeze_facts,
    )
    result = run(rules, facts, cfg)
    render = render_json if args.format == "json" else render_table
    sys.stdout.write(render(result, rules, query, args.trace))
    return EXIT_OK


# ------------------------------------------------------------------ calc

def _intervals(texts: Sequence[str], n: int | None = None) -> list[Interval]:
    if n is not None and len(texts) != n:
        raise UsageError(f"expected {n} interval(s), got {len(texts)}")
    if not texts:
        raise UsageError("expected at least one interval")
    out = []
    for t in texts:
        try:
            out.append(parse_interval(t))
        except ParseError as e:
            raise UsageError(f"bad interval {t!r}: {e.message}") from None
    return out


def cmd_calc(args) -> int:
    op, vals = args.op, args.values
    if op == "and":
        res = iv.conjoin(_intervals(vals), args.corr)
    elif op == "or":
        res = iv.disjoin(_intervals(vals), args.corr)
    elif op == "not":
        res = iv.negate(*_intervals(vals, 1))
    elif op == "mscomb":
        res = reduce(mscomb, _intervals(vals))
    elif op == "sscomb":
        res = reduce(sscomb, _intervals(vals))
    elif op == "mp":
        lhs, strength = _intervals(vals, 2)
        out = apply_mp(lhs, strength, MpConfig(INTERPRETATION_ALIASES[args.mp], args.theta, args.psi))
        if not out.fired:
            print(f"not fired: {out.reason}")
            return EXIT_OK
        res = out.interval
    elif op == "mycin":
        if len(vals) != 1:
            raise UsageError("mycin takes one certainty factor")
        try:
            mcf = float(vals[0])
        except ValueError:
            raise UsageError(f"bad certainty factor {vals[0]!r}") from None
        res = iv.mycin_to_interval(mcf)
    else:  # measures
        (i,) = _intervals(vals, 1)
        print(f"conf {iv.conf(i):.15g}\ndisconf {iv.disconf(i):.15g}\nunc {iv.unc(i):.15g}\n"
              f"cert {iv.cert(i):.15g}\nmv {iv.mv(i):.15g}")
        return EXIT_OK
    print(fmt_full(res))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _unit(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} outside [0, 1]")
    return v


def _corr(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not -1.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} outside [-1, 1]")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _add_mp_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mp", choices=list(INTERPRETATION_ALIASES), default="conditional",
                   help="modus ponens interpretation (default: conditional)")
    p.add_argument("--theta", type=_unit, default=0.55, help="firing gate on mean value (default 0.55)")
    p.add_argument("--psi", type=_unit, default=0.85, help="firing gate on uncertainty (default 0.85)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="intervalbelief", description="Interval-valued fuzzy rule inference.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run the engine on rule and fact files")
    p.add_argument("--rules", required=True, metavar="FILE")
    p.add_argument("--facts", required=True, metavar="FILE")
    p.add_argument("--query", metavar="PATTERN", help='restrict the report, e.g. "(rain)"')
    p.add_argument("--format", choices=["table", "json"], default="table")
    _add_mp_flags(p)
    p.add_argument("--max-rounds", type=_positive_int, default=100)
    p.add_argument("--freeze-facts", action="store_true",
                   help="keep base facts as given instead of pooling them with rule evidence")
    p.add_argument("--trace", action="store_true", help="append the per-round firing trace")
    p.set_defaults(func=cmd_run)

    c = sub.add_parser("calc", help="evaluate a single operator on interval literals")
    c.add_argument("op", choices=["and", "or", "not", "mscomb", "sscomb", "mp", "mycin", "measures"])
    c.add_argument("values", nargs="*", metavar="INTERVAL", help='literals like "(0.4 0.9)"')
    c.add_argument("--corr", type=_corr, default=0.0, help="correlation for and/or (default 0)")
    _add_mp_flags(c)
    c.set_defaults(func=cmd_calc)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        # calc literals may follow its options, which argparse won't re-match
        args, extra = parser.parse_known_args(argv)
        if extra:
            if args.command != "calc":
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            args.values += extra
    except _UsageExit:
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IntervalBeliefError as e:
        print(f"engine error: {e}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
