"""Certainty of a rule's if-part, one result per consistent variable binding."""

from __future__ import annotations

from dataclasses import dataclass

from .intervals import Interval, conjoin, disjoin, negate
from .kb import EMPTY_BINDING, Binding, KnowledgeBase, instantiate, make_binding
from .language import And, Cond, LhsExpr, Not, Or, Rule, lhs_conditions


@dataclass(frozen=True)
class GroundedLhs:
    binding: Binding
    interval: Interval


def enumerate_bindings(kb: KnowledgeBase, lhs: LhsExpr) -> list[Binding]:
    """Join the stored matches of every condition that carries variables.

    Ground conditions never restrict the join (an unstored ground atom is
    simply unknown). Conditions under ``not`` take part like any other.
    """
    partial: list[dict[str, str]] = [{}]
    for pattern in lhs_conditions(lhs):
        if pattern.is_ground:
            continue
        matches = [dict(b) for b, _ in kb.candidates(pattern)]
        joined = []
        for env in partial:
            for m in matches:
                if all(env.get(k, v) == v for k, v in m.items()):
                    joined.append({**env, **m})
        partial = joined
        if not partial:
            return []
    return sorted({make_binding(env) for env in partial})


def evaluate_tree(kb: KnowledgeBase, lhs: LhsExpr, binding: Binding, corr: float) -> Interval:
    if isinstance(lhs, Cond):
        return kb.lookup(instantiate(lhs.pattern, binding))
    if isinstance(lhs, Not):
        return negate(evaluate_tree(kb, lhs.child, binding, corr))
    kids = [evaluate_tree(kb, c, binding, corr) for c in lhs.children]
    if isinstance(lhs, And):
        return conjoin(kids, corr)
    if isinstance(lhs, Or):
        return disjoin(kids, corr)
    raise TypeError(f"not an lhs node: {lhs!r}")


def evaluate_lhs(kb: KnowledgeBase, rule: Rule) -> list[GroundedLhs]:
    bindings = enumerate_bindings(kb, rule.lhs)
    return [GroundedLhs(b, evaluate_tree(kb, rule.lhs, b, rule.corr)) for b in bindings]


__all__ = ["GroundedLhs", "enumerate_bindings", "evaluate_tree", "evaluate_lhs", "EMPTY_BINDING"]
