"""Modus ponens generating functions.

Each function takes the if-part interval ``[a, b]`` and the rule strength
``[c, d]`` and either fires with an evidence interval for the conclusion or
declines with a reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import UsageError
from .intervals import Interval, mv, unc


class Interpretation(str, Enum):
    CONDITIONAL = "conditional"
    IMPLICATION_CORR1 = "implication_corr1"
    IMPLICATION_CORR0 = "implication_corr0"
    IMPLICATION_CORR_NEG1 = "implication_corr_neg1"


# CLI spellings
INTERPRETATION_ALIASES = {
    "conditional": Interpretation.CONDITIONAL,
    "impl1": Interpretation.IMPLICATION_CORR1,
    "impl0": Interpretation.IMPLICATION_CORR0,
    "impl-1": Interpretation.IMPLICATION_CORR_NEG1,
}


@dataclass(frozen=True)
class MpConfig:
    interpretation: Interpretation = Interpretation.CONDITIONAL
    theta: float = 0.55
    psi: float = 0.85

    def __post_init__(self):
        object.__setattr__(self, "interpretation", Interpretation(self.interpretation))
        for name in ("theta", "psi"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise UsageError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class MpOutcome:
    interval: Interval | None
    reason: str = ""

    @property
    def fired(self) -> bool:
        return self.interval is not None

    @classmethod
    def fire(cls, lower: float, upper: float) -> "MpOutcome":
        return cls(Interval.clamped(lower, upper))

    @classmethod
    def decline(cls, reason: str) -> "MpOutcome":
        return cls(None, reason)


def conditional_bounds(lhs: Interval, strength: Interval) -> tuple[float, float]:
    """Raw bounds of the conditional-probability function, before gating."""
    a, b = lhs
    c, d = strength
    lo = min(c * a + (1 - d) * (1 - a), c * b + (1 - d) * (1 - b))
    hi = min(1.0, max(d * a + (1 - c) * (1 - a), d * b + (1 - c) * (1 - b)))
    return lo, hi


def mp_conditional(lhs: Interval, strength: Interval, cfg: MpConfig = MpConfig()) -> MpOutcome:
    """Read the rule as P(H|E) in [c, d]; fire only on confident support.

    The gate is ``mv(lhs) > theta and unc(lhs) < psi``, both strict.
    """
    m, u = mv(lhs), unc(lhs)
    if not m > cfg.theta:
        return MpOutcome.decline(f"mean value {m:.4g} <= theta {cfg.theta:g}")
    if not u < cfg.psi:
        return MpOutcome.decline(f"uncertainty {u:.4g} >= psi {cfg.psi:g}")
    return MpOutcome.fire(*conditional_bounds(lhs, strength))


def mp_implication_corr1(lhs: Interval, strength: Interval) -> MpOutcome:
    a = lhs.lower
    c, d = strength
    if not (1 - a) <= d:
        return MpOutcome.decline(f"1 - a = {1 - a:.4g} > d = {d:g}")
    if (1 - a) < c:
        return MpOutcome.fire(c, d)
    return MpOutcome.fire(0.0, d)


def implication_corr0_bounds(lhs: Interval, strength: Interval) -> tuple[float, float]:
    a, b = lhs
    c, d = strength
    return (c + a - 1) / a, (b + d - 1) / b


def mp_implication_corr0(lhs: Interval, strength: Interval) -> MpOutcome:
    a, b = lhs
    c, d = strength
    if a == 0:
        return MpOutcome.decline("a = 0")
    if not c + a >= 1:
        return MpOutcome.decline(f"c + a = {c + a:.4g} < 1")
    if not b + d >= 1:
        return MpOutcome.decline(f"b + d = {b + d:.4g} < 1")
    return MpOutcome.fire(*implication_corr0_bounds(lhs, strength))


def implication_corr_neg1_bounds(lhs: Interval, strength: Interval) -> tuple[float, float]:
    a, b = lhs
    c, d = strength
    return c + a - 1, b + d - 1


def mp_implication_corr_neg1(lhs: Interval, strength: Interval) -> MpOutcome:
    a, c = lhs.lower, strength.lower
    if not a + c >= 1:
        return MpOutcome.decline(f"a + c = {a + c:.4g} < 1")
    return MpOutcome.fire(*implication_corr_neg1_bounds(lhs, strength))


def apply_mp(lhs: Interval, strength: Interval, cfg: MpConfig = MpConfig()) -> MpOutcome:
    """Dispatch on ``cfg.interpretation``; theta/psi only gate the conditional form."""
    kind = cfg.interpretation
    if kind is Interpretation.CONDITIONAL:
        return mp_conditional(lhs, strength, cfg)
    if kind is Interpretation.IMPLICATION_CORR1:
        return mp_implication_corr1(lhs, strength)
    if kind is Interpretation.IMPLICATION_CORR0:
        return mp_implication_corr0(lhs, strength)
    return mp_implication_corr_neg1(lhs, strength)
