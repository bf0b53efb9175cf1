"""Arithmetic over belief intervals.

A belief interval ``[lower, upper]`` says the probability of a proposition
is at least ``lower`` and at most ``upper``. ``[0, 1]`` is total ignorance.
Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UsageError

__all__ = [
    "Interval", "IGNORANCE", "TRUE", "FALSE",
    "conf", "disconf", "unc", "cert", "mv",
    "negate", "conjoin", "disjoin", "check_corr", "mycin_to_interval",
]


@dataclass(frozen=True, slots=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = self.lower, self.upper
        if not (isinstance(lo, (int, float)) and isinstance(hi, (int, float))):
            raise UsageError(f"interval bounds must be numbers, got {lo!r}, {hi!r}")
        if not (0.0 <= lo <= hi <= 1.0):
            raise UsageError(f"invalid interval [{lo!r}, {hi!r}]: need 0 <= lower <= upper <= 1")
        object.__setattr__(self, "lower", float(lo))
        object.__setattr__(self, "upper", float(hi))

    @classmethod
    def clamped(cls, lower: float, upper: float) -> "Interval":
        """Build an interval from computed bounds, absorbing rounding drift."""
        lo = min(1.0, max(0.0, lower))
        hi = min(1.0, max(0.0, upper))
        if lo > hi:
            lo = hi = (lo + hi) / 2.0
        return cls(lo, hi)

    @classmethod
    def point(cls, p: float) -> "Interval":
        return cls(p, p)

    def __iter__(self):
        yield self.lower
        yield self.upper

    def __str__(self) -> str:
        return f"({self.lower:.15g} {self.upper:.15g})"


IGNORANCE = Interval(0.0, 1.0)
TRUE = Interval(1.0, 1.0)
FALSE = Interval(0.0, 0.0)


def conf(i: Interval) -> float:
    return i.lower


def disconf(i: Interval) -> float:
    return 1.0 - i.upper


def unc(i: Interval) -> float:
    return i.upper - i.lower


def cert(i: Interval) -> float:
    return 1.0 - (i.upper - i.lower)


def mv(i: Interval) -> float:
    return (i.lower + i.upper) / 2.0


def negate(i: Interval) -> Interval:
    return Interval(1.0 - i.upper, 1.0 - i.lower)


def check_corr(corr: float) -> float:
    if isinstance(corr, bool) or not isinstance(corr, (int, float)) or math.isnan(corr):
        raise UsageError(f"correlation must be a number, got {corr!r}")
    if not -1.0 <= corr <= 1.0:
        raise UsageError(f"correlation {corr!r} outside [-1, 1]")
    return float(corr)


# n-ary case formulas for one bound; each takes the list of that bound's values.

def _best_case(xs: Sequence[float]) -> float:
    return min(xs)


def _independent(xs: Sequence[float]) -> float:
    return math.prod(xs)


def _worst_case(xs: Sequence[float]) -> float:
    # max(0, 1 - sum(1 - x))
    return max(0.0, 1.0 - math.fsum(1.0 - x for x in xs))


def _conjoin_bound(xs: Sequence[float], corr: float) -> float:
    if corr == 1.0:
        return _best_case(xs)
    if corr == 0.0:
        return _independent(xs)
    if corr == -1.0:
        return _worst_case(xs)
    if corr > 0.0:
        return corr * _best_case(xs) + (1.0 - corr) * _independent(xs)
    return (1.0 + corr) * _independent(xs) + (-corr) * _worst_case(xs)


def _as_list(items: Iterable[Interval], op: str) -> list[Interval]:
    items = list(items)
    if not items:
        raise UsageError(f"{op} needs at least one interval")
    return items


def conjoin(items: Iterable[Interval], corr: float = 0.0) -> Interval:
    """Conjunction of the given intervals under a rule-level correlation.

    ``corr`` 1 takes componentwise minima, 0 products, -1 the bounded
    (Lukasiewicz) sum. In between, the two neighbouring n-ary results are
    blended linearly; this is not the same as a pairwise fold.
    """
    items = _as_list(items, "conjoin")
    corr = check_corr(corr)
    lo = _conjoin_bound([i.lower for i in items], corr)
    hi = _conjoin_bound([i.upper for i in items], corr)
    return Interval.clamped(lo, hi)


def disjoin(items: Iterable[Interval], corr: float = 0.0) -> Interval:
    """De Morgan dual of :func:`conjoin`.

    At corr 1 this is the componentwise max, at 0 the probabilistic sum,
    at -1 ``min(1, sum)``.
    """
    items = _as_list(items, "disjoin")
    return negate(conjoin([negate(i) for i in items], corr))


def mycin_to_interval(mcf: float) -> Interval:
    """Map a MYCIN certainty factor in [-1, 1] to its interval.

    Zero goes through the nonnegative branch, giving ``[0.5, 1]``.
    """
    if isinstance(mcf, bool) or not isinstance(mcf, (int, float)) or not -1.0 <= mcf <= 1.0:
        raise UsageError(f"MYCIN certainty factor {mcf!r} outside [-1, 1]")
    p = (mcf + 1.0) / 2.0
    if mcf >= 0:
        return Interval(p, 1.0)
    return Interval(0.0, p)
