"""Partial composition tables with an absorbing not-composable value.

An abstract semigroupoid on arrows 0..n-1 is stored as an n-by-n table
whose (a, b) entry is the composite ``ab`` (composition written left to
right), or :data:`NC` when the pair does not compose.  NC may appear in
cells but never indexes a row or column; under :func:`compose` it absorbs,
which lets the generalized associativity condition be stated as plain
equality of the two bracketings:

* both ``ab`` and ``bc`` defined and ``(ab)c == a(bc)``, or
* ``ab`` undefined and ``a(bc)`` undefined, or
* ``bc`` undefined and ``(ab)c`` undefined, or
* both undefined.

All four cases collapse to ``compose(compose(a,b), c) == compose(a,
compose(b,c))`` once NC absorbs.

The JSON form of a table is ``{"n": 3, "entries": [[0, 1, null], ...]}``
with ``null`` encoding NC; ``-1`` is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .errors import DomainError
from .search import Problem, solve_all


class _NotComposable:
    """Singleton marking an undefined composition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "nc"

    def __reduce__(self):
        return (_NotComposable, ())


class _Unset:
    """Singleton marking a cell of a partial table left to the search.

    Distinct from NC: an unset cell is still to be decided, an NC cell is
    decided to be non-composable.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "?"

    def __reduce__(self):
        return (_Unset, ())


NC = _NotComposable()
UNSET = _Unset()

ArrowValue = Union[int, _NotComposable]


def _check_entry(value, n: int) -> None:
    if value is NC:
        return
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < n:
        raise DomainError(f"entry {value!r} is not an arrow index below {n}")


@dataclass(frozen=True)
class CompositionTable:
    """Square array of composites over arrow indices, with NC cells."""

    entries: tuple

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise DomainError("composition table must be square")
            for value in row:
                _check_entry(value, n)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_json(cls, data: dict) -> "CompositionTable":
        entries = data["entries"]
        if "n" in data and data["n"] != len(entries):
            raise DomainError("declared n does not match the number of rows")
        rows = []
        for row in entries:
            out = []
            for value in row:
                if value is None:
                    out.append(NC)
                elif value == -1:
                    raise DomainError(
                        "-1 is not a valid entry; use null for non-composable"
                    )
                else:
                    out.append(value)
            rows.append(tuple(out))
        return cls(tuple(rows))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                [None if v is NC else v for v in row] for row in self.entries
            ],
        }


def compose(table: CompositionTable, a: ArrowValue, b: ArrowValue) -> ArrowValue:
    """Composite of ``a`` then ``b``; NC absorbs."""
    if a is NC or b is NC:
        return NC
    n = table.n
    for x in (a, b):
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
            raise DomainError(f"arrow {x!r} outside 0..{n - 1}")
    return table.entries[a][b]


def pairs_composing_to(table: CompositionTable, target: ArrowValue) -> list:
    """All ordered pairs (a, b) with ab == target, in row-major order."""
    if target is not NC:
        _check_entry(target, table.n)
    entries = table.entries
    return [
        (a, b)
        for a in range(table.n)
        for b in range(table.n)
        if entries[a][b] == target
    ]


def triple_associative(table: CompositionTable, a: int, b: int, c: int) -> bool:
    """Generalized associativity for one triple; NC-absorbing equality
    covers the composable and non-composable cases uniformly."""
    ab = compose(table, a, b)
    bc = compose(table, b, c)
    return compose(table, ab, c) == compose(table, a, bc)


def first_nonassociative_triple(table: CompositionTable) -> Optional[tuple]:
    """Lexicographically first failing triple, or None if associative."""
    entries = table.entries
    n = table.n
    for a in range(n):
        row_a = entries[a]
        for b in range(n):
            ab = row_a[b]
            row_b = entries[b]
            for c in range(n):
                bc = row_b[c]
                left = NC if ab is NC else entries[ab][c]
                right = NC if bc is NC else row_a[bc]
                if left != right:
                    return (a, b, c)
    return None


def is_associative(table: CompositionTable) -> bool:
    """Conjunction of :func:`triple_associative` over all triples."""
    return first_nonassociative_triple(table) is None


def _triple_test(a: int, b: int, c: int):
    def test(bound) -> bool:
        ab = bound.get((a, b), UNSET)
        bc = bound.get((b, c), UNSET)
        if ab is UNSET or bc is UNSET:
            return True
        left = NC if ab is NC else bound.get((ab, c), UNSET)
        right = NC if bc is NC else bound.get((a, bc), UNSET)
        if left is UNSET or right is UNSET:
            return True
        return left == right

    return test


def enumerate_associative_tables(
    n: int,
    allow_nc: bool = False,
    partial: Optional[Sequence[Sequence]] = None,
) -> Iterator[CompositionTable]:
    """Stream every associative n-by-n table (labeled, not up to
    isomorphism), in lexicographic cell order.

    ``partial`` optionally pre-fills cells: a grid whose cells are arrow
    indices, NC, or UNSET for cells left to the search.  Searched cells
    range over arrows in ascending order, with NC last when ``allow_nc``.
    Fixed cells are taken as given, whatever ``allow_nc`` says.
    """
    if n < 1:
        raise DomainError("table size must be at least 1")
    if partial is not None:
        grid = [list(row) for row in partial]
        if len(grid) != n or any(len(row) != n for row in grid):
            raise DomainError("partial table dimensions do not match n")
    else:
        grid = [[UNSET] * n for _ in range(n)]

    problem = Problem()
    searched = list(range(n)) + ([NC] if allow_nc else [])
    for i in range(n):
        for j in range(n):
            fixed = grid[i][j]
            if fixed is UNSET:
                problem.add_variable((i, j), searched)
            else:
                _check_entry(fixed, n)
                problem.add_variable((i, j), [fixed])
    for a in range(n):
        for b in range(n):
            for c in range(n):
                watches = [(a, y) for y in range(n)] + [(x, c) for x in range(n)]
                problem.add_constraint(watches, _triple_test(a, b, c))

    for solution in solve_all(problem):
        yield CompositionTable(
            tuple(tuple(solution[(i, j)] for j in range(n)) for i in range(n))
        )
