"""Ground-fact database: facts, single-variable patterns, and the world state.

Atoms are plain Python values: object names are strings (``"o1"``), grid
coordinates are ints. Facts are immutable and hashable; the world state is an
insertion-ordered set of facts that a simulation mutates in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import DomainError

Atom = Union[str, int]


@dataclass(frozen=True)
class Fact:
    """A ground predicate tuple such as ``(at o1 l1)``."""

    pred: str
    args: tuple[Atom, ...]

    def __str__(self) -> str:
        if not self.args:
            return f"({self.pred})"
        return f"({self.pred} {' '.join(str(a) for a in self.args)})"


def fact(pred: str, *args: Atom) -> Fact:
    return Fact(pred, tuple(args))


@dataclass(frozen=True)
class Variable:
    """A named hole in a pattern, e.g. ``?location``."""

    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Atom, Variable]


@dataclass(frozen=True)
class Pattern:
    """A predicate tuple whose terms may contain variables."""

    pred: str
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return f"({self.pred} {' '.join(str(t) for t in self.terms)})"


def pattern(pred: str, *terms: Term) -> Pattern:
    """Build a Pattern; string terms starting with ``?`` become Variables."""
    conv = tuple(
        Variable(t) if isinstance(t, str) and t.startswith("?") else t for t in terms
    )
    return Pattern(pred, conv)


class WorldState:
    """Insertion-ordered set of ground facts.

    Optionally carries a predicate->arity schema; when present, added facts
    with a declared predicate must match its arity.
    """

    __slots__ = ("_facts", "arities")

    def __init__(
        self,
        facts: Iterable[Fact] = (),
        arities: Optional[Mapping[str, int]] = None,
    ) -> None:
        self._facts: dict[Fact, None] = {}
        self.arities = arities
        for f in facts:
            self.add_fact(f)

    def add_fact(self, f: Fact) -> None:
        """Insert a fact; inserting a present fact is a no-op."""
        if self.arities is not None:
            declared = self.arities.get(f.pred)
            if declared is not None and declared != len(f.args):
                raise DomainError(
                    f"fact {f} has {len(f.args)} args, predicate "
                    f"'{f.pred}' is declared with arity {declared}"
                )
        self._facts.setdefault(f, None)

    def delete_fact(self, f: Fact) -> None:
        """Remove a fact; removing an absent fact is a no-op."""
        self._facts.pop(f, None)

    def is_fact(self, f: Fact) -> bool:
        return f in self._facts

    def find_attribute_value(self, var: Variable, pat: Pattern) -> Optional[Atom]:
        """Binding of ``var`` from the first matching fact, in insertion order.

        ``pat`` must contain ``var`` exactly once and no other variable.
        """
        positions = [i for i, t in enumerate(pat.terms) if isinstance(t, Variable)]
        if len(positions) != 1 or pat.terms[positions[0]] != var:
            raise ValueError(
                f"pattern {pat} must contain {var} exactly once and no other variable"
            )
        pos = positions[0]
        n = len(pat.terms)
        for f in self._facts:
            if f.pred != pat.pred or len(f.args) != n:
                continue
            if all(i == pos or f.args[i] == pat.terms[i] for i in range(n)):
                return f.args[pos]
        return None

    def copy(self) -> "WorldState":
        dup = WorldState.__new__(WorldState)
        dup._facts = dict(self._facts)
        dup.arities = self.arities
        return dup

    def __contains__(self, f: Fact) -> bool:
        return f in self._facts

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts)

    def __len__(self) -> int:
        return len(self._facts)

    def __eq__(self, other: object) -> bool:
        # States are sets; iteration order is not part of equality.
        if not isinstance(other, WorldState):
            return NotImplemented
        return self._facts.keys() == other._facts.keys()

    def __repr__(self) -> str:
        return f"WorldState({' '.join(str(f) for f in self._facts)})"

    def as_frozenset(self) -> frozenset[Fact]:
        return frozenset(self._facts)
