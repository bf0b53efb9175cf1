"""Pooling several evidence intervals for one proposition.

``mscomb`` treats its inputs as coming from independent knowledge sources
(Dempster's rule on the frame {P, not P}) and reinforces agreement.
``sscomb`` treats them as opinions about the same data and takes an
uncertainty-weighted vote instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import groupby
from typing import Iterable

from .errors import TotalConflictError, UsageError
from .intervals import Interval, cert, mv, unc
from .kb import Binding
from .language import Atom

CONFLICT_TOL = 1e-12
FACTS_SOURCE = "__facts__"


@dataclass(frozen=True)
class EvidenceItem:
    rule_id: str
    binding: Binding
    atom: Atom
    interval: Interval
    source: str


def mscomb(i1: Interval, i2: Interval) -> Interval:
    l1, u1 = i1
    l2, u2 = i2
    # grouped so that swapping the operands is bitwise symmetric
    k = 1.0 - (l1 * (1.0 - u2) + l2 * (1.0 - u1))
    if k <= CONFLICT_TOL:
        raise TotalConflictError(f"total conflict combining {i1} and {i2}")
    return Interval.clamped((l1 * u2 + l2 * u1 - l1 * l2) / k, (u1 * u2) / k)


def _sscomb_mv_unc(i1: Interval, i2: Interval) -> tuple[float, float]:
    u1, u2 = unc(i1), unc(i2)
    tau = u1 + u2
    if tau == 2.0:
        return 0.5, 1.0
    if tau == 0.0:
        return (mv(i1) + mv(i2)) / 2.0, 0.0
    if tau > 1.0:
        c1, c2 = cert(i1), cert(i2)
        return (c1 * mv(i1) + c2 * mv(i2)) / (c1 + c2), u1 * u2
    # a point interval outweighs anything uncertain; return it bitwise
    if u1 == 0.0:
        return mv(i1), 0.0
    if u2 == 0.0:
        return mv(i2), 0.0
    # more certain intervals carry the larger weight: u2 weighs mv(i1)
    return (u2 * mv(i1) + u1 * mv(i2)) / tau, (u1 * u2) / tau


def sscomb(i1: Interval, i2: Interval) -> Interval:
    m, u = _sscomb_mv_unc(i1, i2)
    return Interval.clamped(m - u / 2.0, m + u / 2.0)


def _fold(fn, intervals: list[Interval]) -> Interval:
    return reduce(fn, intervals)


def pool(items: Iterable[EvidenceItem], prior: Interval | None = None) -> Interval:
    """Overall belief for one atom from rule evidence and an optional base fact.

    Items sharing a source are voted together with sscomb (ordered by rule
    id, then binding); the per-source results and the prior are then merged
    with mscomb in source-name order.
    """
    items = list(items)
    if not items and prior is None:
        raise UsageError("pool needs at least one evidence item or a prior")
    atoms = {it.atom for it in items}
    if len(atoms) > 1:
        raise UsageError(f"pool got evidence for several atoms: {sorted(map(str, atoms))}")

    groups: list[tuple[str, Interval]] = []
    items.sort(key=lambda it: (it.source, it.rule_id, it.binding))
    for source, grp in groupby(items, key=lambda it: it.source):
        groups.append((source, _fold(sscomb, [it.interval for it in grp])))
    if prior is not None:
        groups.append((FACTS_SOURCE, prior))
    groups.sort(key=lambda g: g[0])

    try:
        return _fold(mscomb, [iv for _, iv in groups])
    except TotalConflictError as e:
        atom = next(iter(atoms), None)
        rules = tuple(sorted({it.rule_id for it in items}))
        raise TotalConflictError(
            f"total conflict pooling evidence for {atom} from rules {', '.join(rules)}"
            + (" and its base fact" if prior is not None else ""),
            atom=atom, rules=rules) from e
