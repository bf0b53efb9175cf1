"""Open-world store of ground atoms and their belief intervals."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .errors import UsageError
from .intervals import IGNORANCE, Interval
from .language import Atom, Constant, Pattern, Variable

# Variable bindings are kept as sorted tuples of (variable, constant) so they
# can be hashed, compared and used as dictionary keys.
Binding = tuple[tuple[str, str], ...]

EMPTY_BINDING: Binding = ()


def make_binding(mapping: Mapping[str, str]) -> Binding:
    return tuple(sorted(mapping.items()))


def instantiate(pattern: Pattern, binding: Binding | Mapping[str, str]) -> Atom:
    env = dict(binding)
    args = []
    for a in pattern.args:
        if isinstance(a, Variable):
            if a.name not in env:
                raise UsageError(f"variable {a.name} unbound in {pattern}")
            args.append(env[a.name])
        else:
            args.append(a.symbol)
    return Atom(pattern.predicate, tuple(args))


def match(pattern: Pattern, atom: Atom) -> dict[str, str] | None:
    """Unify a pattern against a ground atom; ``None`` when they don't unify."""
    if pattern.predicate != atom.predicate or len(pattern.args) != len(atom.args):
        return None
    env: dict[str, str] = {}
    for term, value in zip(pattern.args, atom.args):
        if isinstance(term, Constant):
            if term.symbol != value:
                return None
        elif env.setdefault(term.name, value) != value:
            return None
    return env


class KnowledgeBase:
    """Base facts plus engine-derived beliefs, indexed by predicate.

    Lookup prefers a derived belief, then a base fact, and falls back to
    ``[0, 1]`` for atoms that are not stored at all.
    """

    def __init__(self, facts: Iterable[tuple[Atom, Interval]] = ()):
        self.base_facts: dict[Atom, Interval] = {}
        self.derived: dict[Atom, Interval] = {}
        self._index: dict[str, set[Atom]] = defaultdict(set)
        for atom, interval in facts:
            self.assert_base(atom, interval)

    def _check(self, atom: Atom, interval: Interval):
        if not isinstance(atom, Atom):
            raise UsageError(f"expected a ground Atom, got {atom!r}")
        if not isinstance(interval, Interval):
            raise UsageError(f"expected an Interval, got {interval!r}")

    def assert_base(self, atom: Atom, interval: Interval) -> None:
        self._check(atom, interval)
        if atom in self.base_facts:
            raise UsageError(f"duplicate base fact {atom}")
        self.base_facts[atom] = interval
        self._index[atom.predicate].add(atom)

    def set_derived(self, atom: Atom, interval: Interval) -> None:
        self._check(atom, interval)
        self.derived[atom] = interval
        self._index[atom.predicate].add(atom)

    def replace_derived(self, beliefs: Mapping[Atom, Interval]) -> None:
        """Swap in a whole new derived layer (the engine's commit step)."""
        for atom in self.derived:
            if atom not in self.base_facts:
                self._index[atom.predicate].discard(atom)
        self.derived = {}
        for atom, interval in beliefs.items():
            self.set_derived(atom, interval)

    def lookup(self, atom: Atom) -> Interval:
        if atom in self.derived:
            return self.derived[atom]
        return self.base_facts.get(atom, IGNORANCE)

    def atoms(self) -> list[Atom]:
        return sorted(set(self.base_facts) | set(self.derived))

    def beliefs(self) -> dict[Atom, Interval]:
        return {a: self.lookup(a) for a in self.atoms()}

    def candidates(self, pattern: Pattern) -> list[tuple[Binding, Atom]]:
        out = []
        for atom in sorted(self._index.get(pattern.predicate, ())):
            env = match(pattern, atom)
            if env is not None:
                out.append((make_binding(env), atom))
        return out
