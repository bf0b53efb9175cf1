"""Forward-chaining inference to a fixpoint.

Each round evaluates every rule instance against a frozen snapshot of the
knowledge base, applies the configured modus ponens function, and re-pools
the full contribution set from scratch. Derived beliefs become visible to
if-parts in the following round.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .combination import EvidenceItem, pool
from .errors import NonConvergenceError, UsageError
from .intervals import Interval
from .kb import Binding, KnowledgeBase, instantiate, match
from .language import Atom, FactDecl, Pattern, Rule, lhs_conditions
from .lhs import evaluate_lhs
from .modus_ponens import MpConfig, MpOutcome, apply_mp

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EngineConfig:
    mp: MpConfig = field(default_factory=MpConfig)
    max_rounds: int = 100
    convergence_eps: float = 1e-9
    freeze_facts: bool = False

    def __post_init__(self):
        if self.max_rounds < 1:
            raise UsageError("max_rounds must be at least 1")
        if not self.convergence_eps > 0:
            raise UsageError("convergence_eps must be positive")


@dataclass(frozen=True)
class TraceEntry:
    round: int
    rule_id: str
    binding: Binding
    atom: Atom
    lhs_interval: Interval
    outcome: MpOutcome


@dataclass
class RunResult:
    beliefs: dict[Atom, Interval]
    trace: list[TraceEntry]
    rounds: int
    evidence: dict[Atom, list[EvidenceItem]]
    derived: dict[Atom, Interval]
    facts: list[Atom] = field(default_factory=list)

    def final_round(self) -> list[TraceEntry]:
        return [t for t in self.trace if t.round == self.rounds]


def _moved(old: Mapping[Atom, Interval], new: Mapping[Atom, Interval], eps: float) -> list[Atom]:
    out = []
    for atom in sorted(set(old) | set(new)):
        a, b = old.get(atom), new.get(atom)
        if a is None or b is None:
            out.append(atom)
        elif abs(a.lower - b.lower) > eps or abs(a.upper - b.upper) > eps:
            out.append(atom)
    return out


def run_round(kb: KnowledgeBase, rules: Iterable[Rule], cfg: EngineConfig, round_no: int):
    """One evaluation pass over a fixed KB. Returns (trace, new derived layer, evidence)."""
    trace: list[TraceEntry] = []
    contributions: dict[tuple[str, Binding, Atom], EvidenceItem] = {}
    for rule in rules:
        for g in evaluate_lhs(kb, rule):
            atom = instantiate(rule.conclusion, g.binding)
            outcome = apply_mp(g.interval, rule.strength, cfg.mp)
            trace.append(TraceEntry(round_no, rule.id, g.binding, atom, g.interval, outcome))
            if outcome.fired:
                contributions[(rule.id, g.binding, atom)] = EvidenceItem(
                    rule.id, g.binding, atom, outcome.interval, rule.source)

    evidence: dict[Atom, list[EvidenceItem]] = defaultdict(list)
    for item in contributions.values():
        evidence[item.atom].append(item)

    derived: dict[Atom, Interval] = {}
    for atom in sorted(evidence):
        prior = kb.base_facts.get(atom)
        if cfg.freeze_facts and prior is not None:
            continue
        derived[atom] = pool(evidence[atom], prior)
    return trace, derived, dict(evidence)


def run(rules: Iterable[Rule], facts: Iterable[FactDecl],
        cfg: EngineConfig = EngineConfig()) -> RunResult:
    rules = list(rules)
    ids = [r.id for r in rules]
    if len(set(ids)) != len(ids):
        raise UsageError("rule ids must be unique")
    facts = list(facts)
    kb = KnowledgeBase((f.atom, f.belief) for f in facts)
    lhs_preds = {p.predicate for r in rules for p in lhs_conditions(r.lhs)}

    trace: list[TraceEntry] = []
    for round_no in range(1, cfg.max_rounds + 1):
        round_trace, derived, evidence = run_round(kb, rules, cfg, round_no)
        trace.extend(round_trace)
        moved = _moved(kb.derived, derived, cfg.convergence_eps)
        kb.replace_derived(derived)
        log.debug("round %d: %d evidence atoms, %d moved", round_no, len(evidence), len(moved))
        # If nothing any if-part reads has changed, the next round would
        # reproduce this one exactly, so this is already the fixpoint.
        if not moved or not any(a.predicate in lhs_preds for a in moved):
            return RunResult(kb.beliefs(), trace, round_no, evidence, dict(kb.derived),
                             [f.atom for f in facts])

    raise NonConvergenceError(
        f"no fixpoint after {cfg.max_rounds} round(s); still moving: "
        + ", ".join(str(a) for a in moved), atoms=moved)


def query(beliefs: Mapping[Atom, Interval], pattern: Pattern) -> list[tuple[Atom, Interval]]:
    return [(a, beliefs[a]) for a in sorted(beliefs) if match(pattern, a) is not None]
