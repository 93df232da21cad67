"""Minimal finite-domain backtracking search with forward checking.

Every combinatorial search in this package (table completion, type
inference, morphism and isomorphism enumeration) is phrased as a
:class:`Problem`: a list of variables with finite ordered domains plus
constraints that watch a subset of the variables.

A constraint's ``test`` receives the current partial assignment (a mapping
from variable to value containing only the bound variables) and must be
*stable under extension*: once it returns False for a partial assignment it
must return False for every extension.  Returning True means "not violated
yet".  A predicate may only consult the variables it watches.

The solver is deterministic: variables are tried in declaration order,
values in domain order, so solutions stream in lexicographic order with
respect to those orders.  Forward checking prunes the domain of the single
unbound variable of a constraint; it never changes which solutions exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterator, Mapping, Optional

from .errors import ConfigurationError

Variable = Hashable
Assignment = dict


@dataclass(frozen=True)
class Constraint:
    watches: tuple
    test: Callable[[Mapping], bool]


class Problem:
    """A finite-domain constraint problem.

    Declaration order of variables and the order of each domain are
    significant; they fix the order in which solutions are produced.
    A problem should not be mutated once solving has started.
    """

    def __init__(self) -> None:
        self.variables: list = []
        self.domains: dict = {}
        self.constraints: list[Constraint] = []

    def add_variable(self, var: Variable, domain) -> None:
        if var in self.domains:
            raise ConfigurationError(f"duplicate variable {var!r}")
        self.variables.append(var)
        self.domains[var] = list(domain)

    def add_constraint(self, watches, test: Callable[[Mapping], bool]) -> None:
        """Attach a predicate over partial assignments watching ``watches``."""
        seen: list = []
        for w in watches:
            if w not in seen:
                seen.append(w)
        self.constraints.append(Constraint(tuple(seen), test))

    def add_relation(self, watches, func: Callable[..., bool]) -> None:
        """Constraint checked positionally once all watched variables are
        bound.  ``watches`` must not repeat a variable."""
        watches = tuple(watches)

        def test(bound: Mapping) -> bool:
            for w in watches:
                if w not in bound:
                    return True
            return func(*(bound[w] for w in watches))

        self.add_constraint(watches, test)

    def add_all_different(self, watches) -> None:
        watches = tuple(watches)

        def test(bound: Mapping) -> bool:
            seen = set()
            for w in watches:
                if w in bound:
                    v = bound[w]
                    if v in seen:
                        return False
                    seen.add(v)
            return True

        self.add_constraint(watches, test)


def _validate(problem: Problem) -> None:
    for constraint in problem.constraints:
        for w in constraint.watches:
            if w not in problem.domains:
                raise ConfigurationError(
                    f"constraint watches unknown variable {w!r}"
                )


def solve_all(problem: Problem, propagate: bool = True) -> Iterator[Assignment]:
    """Yield every solution exactly once, in deterministic order.

    ``propagate`` toggles forward checking; it affects speed only, never the
    set of solutions.
    """
    _validate(problem)
    order = list(problem.variables)
    watching: dict = {v: [] for v in order}
    unwatched = []
    for constraint in problem.constraints:
        if not constraint.watches:
            unwatched.append(constraint)
        for w in constraint.watches:
            watching[w].append(constraint)
    if any(not c.test({}) for c in unwatched):
        return
    domains = {v: list(problem.domains[v]) for v in order}
    bound: dict = {}

    def probe(constraint: Constraint, var: Variable, value: Any) -> bool:
        bound[var] = value
        ok = constraint.test(bound)
        del bound[var]
        return ok

    def extend(i: int) -> Iterator[Assignment]:
        if i == len(order):
            yield dict(bound)
            return
        var = order[i]
        for value in domains[var]:
            bound[var] = value
            ok = True
            for constraint in watching[var]:
                if not constraint.test(bound):
                    ok = False
                    break
            trimmed: list = []
            if ok and propagate:
                for constraint in watching[var]:
                    unbound = [w for w in constraint.watches if w not in bound]
                    if len(unbound) != 1:
                        continue
                    u = unbound[0]
                    old = domains[u]
                    new = [x for x in old if probe(constraint, u, x)]
                    if len(new) != len(old):
                        trimmed.append((u, old))
                        domains[u] = new
                        if not new:
                            ok = False
                            break
            if ok:
                yield from extend(i + 1)
            for u, old in reversed(trimmed):
                domains[u] = old
        bound.pop(var, None)

    yield from extend(0)


def solve_first(problem: Problem, propagate: bool = True) -> Optional[Assignment]:
    """First solution of :func:`solve_all`, or None."""
    return next(solve_all(problem, propagate), None)
