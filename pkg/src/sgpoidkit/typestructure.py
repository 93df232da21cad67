"""Type structures: domain/codomain object assignments consistent with a
composition table.

A table over n arrows is typable with m objects when every arrow can be
given a (domain, codomain) pair of objects such that

1. pairs that do not compose have ``cod(a) != dom(b)``,
2. pairs that do compose have ``cod(a) == dom(b)`` (including ``aa``),
3. whenever ``ab = c``, ``dom(a) == dom(c)`` and ``cod(b) == cod(c)``.

Associativity and typability are independent: either can hold without the
other, and a table is a semigroupoid exactly when both hold.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import DomainError
from .search import Problem, solve_all, solve_first
from .tables import NC, CompositionTable, is_associative


@dataclass(frozen=True)
class TypeStructure:
    """Per-arrow object assignments over objects 0..m-1."""

    m: int
    doms: tuple
    cods: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "doms", tuple(self.doms))
        object.__setattr__(self, "cods", tuple(self.cods))
        if len(self.doms) != len(self.cods):
            raise DomainError("doms and cods must have equal length")
        for obj in (*self.doms, *self.cods):
            if not isinstance(obj, int) or not 0 <= obj < self.m:
                raise DomainError(f"object {obj!r} outside 0..{self.m - 1}")

    def to_json(self) -> dict:
        return {"m": self.m, "doms": list(self.doms), "cods": list(self.cods)}

    @classmethod
    def from_json(cls, data: dict) -> "TypeStructure":
        return cls(data["m"], tuple(data["doms"]), tuple(data["cods"]))


def satisfies_typing(table: CompositionTable, ts: TypeStructure) -> bool:
    """Direct re-check of the three typing rules (no search)."""
    n = table.n
    if len(ts.doms) != n:
        raise DomainError("type structure size does not match table")
    doms, cods = ts.doms, ts.cods
    for a in range(n):
        for b in range(n):
            ab = table.entries[a][b]
            if ab is NC:
                if cods[a] == doms[b]:
                    return False
            else:
                if cods[a] != doms[b]:
                    return False
                if doms[a] != doms[ab] or cods[b] != cods[ab]:
                    return False
    return True


def _typing_problem(table: CompositionTable, m: int, symmetry_break: bool) -> Problem:
    n = table.n
    problem = Problem()
    objects = list(range(m))
    for a in range(n):
        if a == 0 and symmetry_break:
            problem.add_variable(("dom", 0), [0])
        else:
            problem.add_variable(("dom", a), objects)
    for a in range(n):
        problem.add_variable(("cod", a), objects)
    for a in range(n):
        for b in range(n):
            ab = table.entries[a][b]
            if ab is NC:
                problem.add_relation(
                    (("cod", a), ("dom", b)), operator.ne
                )
            else:
                problem.add_relation(
                    (("cod", a), ("dom", b)), operator.eq
                )
                if ab != a:
                    problem.add_relation(
                        (("dom", a), ("dom", ab)), operator.eq
                    )
                if ab != b:
                    problem.add_relation(
                        (("cod", b), ("cod", ab)), operator.eq
                    )
    return problem


def infer_types(
    table: CompositionTable, m: int, symmetry_break: bool = False
) -> Iterator[TypeStructure]:
    """Stream all type structures over m objects satisfying the typing rules.

    With ``symmetry_break`` the domain of arrow 0 is pinned to object 0,
    which drops solutions that only differ by a relabeling of that object;
    satisfiability is unaffected.  Off by default so the full solution set
    (closed under object permutations) is produced.
    """
    if m < 1:
        raise DomainError("object count must be at least 1")
    problem = _typing_problem(table, m, symmetry_break)
    n = table.n
    for solution in solve_all(problem):
        yield TypeStructure(
            m,
            tuple(solution[("dom", a)] for a in range(n)),
            tuple(solution[("cod", a)] for a in range(n)),
        )


def minimal_objects(table: CompositionTable) -> Optional[int]:
    """Smallest m in 1..2n admitting a type structure, or None.

    2n suffices: beyond it every arrow already has its own private
    domain/codomain pair and extra objects would sit on no arrow.
    """
    limit = max(2 * table.n, 1)
    for m in range(1, limit + 1):
        if solve_first(_typing_problem(table, m, symmetry_break=True)) is not None:
            return m
    return None


def is_semigroupoid(table: CompositionTable) -> bool:
    """Associative and typable."""
    return is_associative(table) and minimal_objects(table) is not None
