"""Exception hierarchy shared by the parser, the combiners and the engine."""

from __future__ import annotations


class IntervalBeliefError(Exception):
    """Base class for every error raised by this package."""


class UsageError(IntervalBeliefError, ValueError):
    """An operation was called with arguments outside its domain."""


class ParseError(IntervalBeliefError):
    """Lexical or structural error in rule/fact text.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    position is unknown (e.g. undecodable input).
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, rule_id: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.rule_id = rule_id
        super().__init__(str(self))

    def __str__(self) -> str:
        where = ""
        if self.line is not None:
            where = f"line {self.line}"
            if self.column is not None:
                where += f", column {self.column}"
            where += ": "
        rule = f" (rule {self.rule_id})" if self.rule_id else ""
        return f"{where}{self.message}{rule}"


class TotalConflictError(IntervalBeliefError):
    """Dempster combination of fully contradictory certain evidence."""

    def __init__(self, message: str, atom=None, rules: tuple[str, ...] = ()):
        self.atom = atom
        self.rules = tuple(rules)
        super().__init__(message)


class NonConvergenceError(IntervalBeliefError):
    """The engine hit ``max_rounds`` while some beliefs were still moving."""

    def __init__(self, message: str, atoms=()):
        self.atoms = tuple(atoms)
        super().__init__(message)
