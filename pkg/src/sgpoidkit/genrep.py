"""Concrete semigroupoids: typed total functions on finite state sets.

A transformation arrow is a triple (dom type, cod type, map); two arrows
compose exactly when the codomain type of the first equals the domain type
of the second, and the composite applies the maps left to right.  This
module generates such semigroupoids from generators, builds the full
transformation semigroupoid over a closed graph with chosen per-type
degrees, and finds transformation representations of abstract tables by
embedding them into full ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .arrowtype import (
    ArrowTypeGraph,
    arrow_type_of,
    canonical_form,
    is_transitively_closed,
)
from .errors import DomainError, ResourceLimitError
from .morphisms import ArrowMap, find_injective_morphisms
from .tables import NC, CompositionTable, is_associative, _NotComposable
from .typestructure import infer_types, minimal_objects


@dataclass(frozen=True)
class TransformationArrow:
    """Total function between the state sets of two types."""

    dom: int
    cod: int
    map: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(self.map))
        for value in self.map:
            if not isinstance(value, int) or value < 0:
                raise DomainError(f"state {value!r} is not a valid target state")

    def sort_key(self) -> tuple:
        return (self.dom, self.cod, self.map)

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "map": list(self.map)}

    @classmethod
    def from_json(cls, data: dict) -> "TransformationArrow":
        return cls(data["dom"], data["cod"], tuple(data["map"]))


def validate_arrow(arrow: TransformationArrow, degrees: Sequence[int]) -> None:
    if not 0 <= arrow.dom < len(degrees) or not 0 <= arrow.cod < len(degrees):
        raise DomainError(f"arrow types {arrow.dom}->{arrow.cod} outside the degree list")
    if len(arrow.map) != degrees[arrow.dom]:
        raise DomainError("map length does not match the degree of the domain type")
    for value in arrow.map:
        if value >= degrees[arrow.cod]:
            raise DomainError("map target outside the codomain state set")


def compose_arrows(
    a: TransformationArrow, b: TransformationArrow
) -> Union[TransformationArrow, _NotComposable]:
    """a then b; NC when the types do not match."""
    if a.cod != b.dom:
        return NC
    try:
        mapped = tuple(b.map[x] for x in a.map)
    except IndexError as exc:
        raise DomainError("map entry outside the intermediate state set") from exc
    return TransformationArrow(a.dom, b.cod, mapped)


def derive_table(arrows: Sequence[TransformationArrow]) -> CompositionTable:
    """Composition table of a set of arrows closed under composition."""
    index = {arrow: i for i, arrow in enumerate(arrows)}
    rows = []
    for a in arrows:
        row = []
        for b in arrows:
            composite = compose_arrows(a, b)
            if composite is NC:
                row.append(NC)
            else:
                i = index.get(composite)
                if i is None:
                    raise DomainError("arrow set is not closed under composition")
                row.append(i)
        rows.append(tuple(row))
    return CompositionTable(tuple(rows))


@dataclass(frozen=True)
class ConcreteSemigroupoid:
    """Arrows closed under composition, with the derived table."""

    degrees: tuple
    arrows: tuple
    table: CompositionTable


def generate(
    generators: Iterable[TransformationArrow], degrees: Sequence[int]
) -> ConcreteSemigroupoid:
    """Close a generator set under composition.

    Two lookup tables drive the closure: generators grouped by domain type
    (for post-composition) and by codomain type (for pre-composition);
    starting from the generators, every new arrow is pre- and post-composed
    with the matching generators until nothing new appears.  Arrow equality
    is equality of the (dom, cod, map) triple.
    """
    degrees = tuple(degrees)
    gens = sorted(set(generators), key=TransformationArrow.sort_key)
    for g in gens:
        validate_arrow(g, degrees)
    by_dom: dict = {}
    by_cod: dict = {}
    for g in gens:
        by_dom.setdefault(g.dom, []).append(g)
        by_cod.setdefault(g.cod, []).append(g)
    found = set(gens)
    queue = list(gens)
    while queue:
        arrow = queue.pop()
        for g in by_dom.get(arrow.cod, ()):
            composite = compose_arrows(arrow, g)
            if composite not in found:
                found.add(composite)
                queue.append(composite)
        for g in by_cod.get(arrow.dom, ()):
            composite = compose_arrows(g, arrow)
            if composite not in found:
                found.add(composite)
                queue.append(composite)
    arrows = tuple(sorted(found, key=TransformationArrow.sort_key))
    return ConcreteSemigroupoid(degrees, arrows, derive_table(arrows))


@dataclass(frozen=True)
class FullTransformationSgpoid:
    """All total maps along every arc of a closed graph."""

    degrees: tuple
    graph: ArrowTypeGraph
    arrows: tuple
    table: CompositionTable


def full_transformation_sgpoid(
    degrees: Sequence[int], graph: ArrowTypeGraph
) -> FullTransformationSgpoid:
    """Build the full transformation semigroupoid for per-type degrees d and
    a transitively closed graph: d[c]**d[d] arrows per arc (d, c)."""
    degrees = tuple(degrees)
    if any(d < 1 for d in degrees):
        raise DomainError("every type needs at least one state")
    if graph.m != len(degrees):
        raise DomainError("degree list length does not match the object count")
    if not is_transitively_closed(graph):
        raise DomainError("graph must be transitively closed")
    arrows = []
    for d, c in graph.sorted_arcs:
        for mapping in itertools.product(range(degrees[c]), repeat=degrees[d]):
            arrows.append(TransformationArrow(d, c, mapping))
    arrows = tuple(arrows)
    return FullTransformationSgpoid(degrees, graph, arrows, derive_table(arrows))


def embed(
    abstract: CompositionTable,
    target: FullTransformationSgpoid,
    strict: bool = False,
) -> Iterator[ArrowMap]:
    """Injective morphisms from an abstract table into the derived table of
    a full transformation semigroupoid.  The abstract table is expected to
    be a semigroupoid for strict embeddings to exist; this is not enforced,
    and permissive mode is meaningful without it."""
    return find_injective_morphisms(abstract, target.table, strict=strict)


def _degree_vectors(total: int, parts: int) -> Iterator[tuple]:
    # Positive integer vectors of a fixed length and sum, lexicographic.
    if parts == 1:
        yield (total,)
        return
    for head in range(1, total - parts + 2):
        for tail in _degree_vectors(total - head, parts - 1):
            yield (head,) + tail


def _all_closed_graphs(m: int) -> list:
    if m > 4:
        raise ResourceLimitError(
            "widened target search scans all arc subsets; limited to 4 objects"
        )
    slots = [(d, c) for d in range(m) for c in range(m)]
    seen = {}
    for size in range(len(slots) + 1):
        for subset in itertools.combinations(slots, size):
            arcs = frozenset(subset)
            if {x for arc in arcs for x in arc} != set(range(m)):
                continue
            if not is_transitively_closed(arcs):
                continue
            rep = canonical_form(ArrowTypeGraph(m, arcs))
            seen[rep.sorted_arcs] = rep
    return [seen[key] for key in sorted(seen)]


def _candidate_graphs(table: CompositionTable, m: int, widen: bool) -> list:
    if widen:
        graphs = _all_closed_graphs(m)
    else:
        reps = {}
        for ts in infer_types(table, m, symmetry_break=True):
            rep = canonical_form(arrow_type_of(table, ts))
            if rep.m == m:
                reps[rep.sorted_arcs] = rep
        graphs = [reps[key] for key in sorted(reps)]
    return sorted(graphs, key=lambda g: (len(g.arcs), g.sorted_arcs))


def minimal_representation(
    abstract: CompositionTable,
    widen: bool = False,
    max_total: Optional[int] = None,
) -> tuple:
    """Smallest-state strict transformation representation.

    Targets are tried by ascending total state count; within a total, by
    graph arc count, then lexicographic degree vector.  Candidate graphs
    come from the table's own type structures (every typings' quotient
    graph), from the minimal object count upward; ``widen`` switches to all
    closed graphs on the same object counts, which never lowers the
    minimum.  Termination: the regular action on arrows (one extra sink
    state per type) realizes the table with n + m states, so the search is
    capped there unless ``max_total`` narrows it.
    """
    if not is_associative(abstract):
        raise DomainError("table is not associative")
    m_least = minimal_objects(abstract)
    if m_least is None:
        raise DomainError("table has no consistent type structure")
    n = abstract.n
    cap = max_total if max_total is not None else n + m_least
    graphs_by_m: dict = {}
    m_limit = max(2 * n, 1)
    for total in range(1, cap + 1):
        candidates = []
        for m in range(m_least, min(total, m_limit) + 1):
            if m not in graphs_by_m:
                graphs_by_m[m] = _candidate_graphs(abstract, m, widen)
            candidates.extend(graphs_by_m[m])
        candidates.sort(key=lambda g: (len(g.arcs), g.m, g.sorted_arcs))
        for graph in candidates:
            for degrees in _degree_vectors(total, graph.m):
                target = full_transformation_sgpoid(degrees, graph)
                amap = next(embed(abstract, target, strict=True), None)
                if amap is not None:
                    return graph, degrees, amap
    raise ResourceLimitError(
        f"no strict representation within {cap} total states"
    )
