"""Interval-valued belief calculus and a forward-chaining fuzzy rule engine."""

from .combination import EvidenceItem, mscomb, pool, sscomb
from .engine import EngineConfig, RunResult, TraceEntry, query, run
from .errors import (IntervalBeliefError, NonConvergenceError, ParseError,
                     TotalConflictError, UsageError)
from .intervals import (IGNORANCE, Interval, cert, conf, conjoin, disconf, disjoin,
                        mv, mycin_to_interval, negate, unc)
from .kb import KnowledgeBase
from .language import (And, Atom, Cond, Constant, FactDecl, Not, Or, Pattern, Rule,
                       Variable, parse_facts, parse_program, parse_rules, render)
from .lhs import GroundedLhs, evaluate_lhs
from .modus_ponens import (Interpretation, MpConfig, MpOutcome, apply_mp, mp_conditional,
                           mp_implication_corr0, mp_implication_corr1,
                           mp_implication_corr_neg1)

__version__ = "0.1.0"
