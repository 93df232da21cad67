import itertools

import pytest

from sgpoidkit import (
    NC,
    ArrowTypeGraph,
    CompositionTable,
    DomainError,
    ResourceLimitError,
    TransformationArrow,
    check_morphism,
    compose_arrows,
    derive_table,
    embed,
    find_morphisms,
    full_transformation_sgpoid,
    generate,
    is_associative,
    is_semigroupoid,
    minimal_representation,
    validate_arrow,
)

from .oracles import closure_by_pairs

FULL_2 = ArrowTypeGraph(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
ONE_WAY = ArrowTypeGraph(2, frozenset({(0, 0), (0, 1), (1, 1)}))
ISOLATED = ArrowTypeGraph(2, frozenset({(0, 0), (1, 1)}))
LOOP = ArrowTypeGraph(1, frozenset({(0, 0)}))


def test_compose_arrows_transfers_the_swap(vessels):
    degrees, (swap, reset, over, back) = vessels
    transferred = compose_arrows(compose_arrows(back, swap), over)
    assert transferred == TransformationArrow(1, 1, (1, 0))


def test_compose_arrows_transfers_the_reset(vessels):
    degrees, (swap, reset, over, back) = vessels
    transferred = compose_arrows(over, compose_arrows(reset, back))
    assert transferred == TransformationArrow(0, 0, (1, 1))


def test_compose_arrows_type_mismatch(vessels):
    degrees, (swap, reset, over, back) = vessels
    assert compose_arrows(swap, reset) is NC


def test_compose_arrows_range_error():
    wide = TransformationArrow(0, 1, (3,))
    narrow = TransformationArrow(1, 0, (0, 0))
    with pytest.raises(DomainError):
        compose_arrows(wide, narrow)


def test_validate_arrow():
    validate_arrow(TransformationArrow(0, 1, (0, 1)), (2, 2))
    with pytest.raises(DomainError):
        validate_arrow(TransformationArrow(0, 1, (0, 2)), (2, 2))
    with pytest.raises(DomainError):
        validate_arrow(TransformationArrow(0, 2, (0,)), (1, 1))
    with pytest.raises(DomainError):
        validate_arrow(TransformationArrow(0, 0, (0, 0, 0)), (2,))


def test_generate_single_idempotent():
    identity = TransformationArrow(0, 0, (0, 1))
    closed = generate([identity], (2,))
    assert closed.arrows == (identity,)
    assert closed.table.entries == ((0,),)


def test_generate_transposition_gives_order_two_group():
    swap = TransformationArrow(0, 0, (1, 0))
    closed = generate([swap], (2,))
    assert len(closed.arrows) == 2
    identity = TransformationArrow(0, 0, (0, 1))
    assert identity in closed.arrows
    assert is_semigroupoid(closed.table)


def test_generate_vessels_matches_pairwise_closure_oracle(vessels):
    degrees, gens = vessels
    closed = generate(gens, degrees)
    oracle = closure_by_pairs({(g.dom, g.cod, g.map) for g in gens})
    assert {(a.dom, a.cod, a.map) for a in closed.arrows} == oracle
    assert len(closed.arrows) == 16


def test_generate_vessels_fills_the_full_structure(vessels):
    degrees, gens = vessels
    closed = generate(gens, degrees)
    full = full_transformation_sgpoid(degrees, FULL_2)
    assert set(closed.arrows) == set(full.arrows)


def test_generate_is_order_independent(vessels):
    degrees, gens = vessels
    reference = generate(gens, degrees).arrows
    for permuted in itertools.permutations(gens):
        assert generate(permuted, degrees).arrows == reference


def test_vessels_local_monoids_match(vessels):
    degrees, gens = vessels
    closed = generate(gens, degrees)
    locals_by_type = {
        t: [a for a in closed.arrows if a.dom == a.cod == t] for t in (0, 1)
    }
    assert len(locals_by_type[0]) == len(locals_by_type[1]) == 4
    tables = {t: derive_table(locals_by_type[t]) for t in (0, 1)}
    isomorphic = next(
        find_morphisms(tables[0], tables[1], bijective=True, strict=True), None
    )
    assert isomorphic is not None


def test_generated_tables_are_semigroupoids(vessels):
    degrees, gens = vessels
    for sgpoid in (
        generate(gens, degrees),
        full_transformation_sgpoid((2, 2), ISOLATED),
        full_transformation_sgpoid((2,), LOOP),
    ):
        assert is_associative(sgpoid.table)
        assert is_semigroupoid(sgpoid.table)


def test_full_sgpoid_arrow_counts():
    assert len(full_transformation_sgpoid((2, 2), FULL_2).arrows) == 16
    assert len(full_transformation_sgpoid((3,), LOOP).arrows) == 27
    isolated = full_transformation_sgpoid((2, 2), ISOLATED)
    assert len(isolated.arrows) == 8
    assert all(a.dom == a.cod for a in isolated.arrows)
    mixed = full_transformation_sgpoid((1, 3), ONE_WAY)
    assert len(mixed.arrows) == 1 + 3 + 27


def test_full_sgpoid_rejects_bad_inputs():
    with pytest.raises(DomainError):
        full_transformation_sgpoid((0, 2), ISOLATED)
    with pytest.raises(DomainError):
        full_transformation_sgpoid((2, 2, 2), ISOLATED)
    open_path = ArrowTypeGraph.from_arcs({(0, 1), (1, 2)})
    with pytest.raises(DomainError):
        full_transformation_sgpoid((2, 2, 2), open_path)


def test_derive_table_requires_closure():
    swap = TransformationArrow(0, 0, (1, 0))
    with pytest.raises(DomainError):
        derive_table((swap,))


def test_strict_embeddings_of_six_arrow(six_arrow):
    for graph in (FULL_2, ONE_WAY):
        target = full_transformation_sgpoid((2, 2), graph)
        found = next(embed(six_arrow, target, strict=True), None)
        assert found is not None
        assert found.is_injective()
        assert check_morphism(six_arrow, target.table, found, strict=True)
    none_target = full_transformation_sgpoid((2, 2), ISOLATED)
    assert next(embed(six_arrow, none_target, strict=True), None) is None
    assert next(embed(six_arrow, none_target, strict=False), None) is None


def _induced_subtable(table, images):
    position = {arrow: i for i, arrow in enumerate(images)}
    rows = []
    for a in images:
        row = []
        for b in images:
            value = table.entries[a][b]
            if value is NC or value not in position:
                row.append(NC)
            else:
                row.append(position[value])
        rows.append(tuple(row))
    return CompositionTable(tuple(rows))


def test_embedding_images_are_isomorphic_copies(six_arrow):
    target = full_transformation_sgpoid((2, 2), ONE_WAY)
    amap = next(embed(six_arrow, target, strict=True))
    induced = _induced_subtable(target.table, amap.images)
    iso = next(
        find_morphisms(six_arrow, induced, bijective=True, strict=True), None
    )
    assert iso is not None


def test_both_connected_targets_give_the_same_representation(six_arrow):
    subtables = []
    for graph in (FULL_2, ONE_WAY):
        target = full_transformation_sgpoid((2, 2), graph)
        amap = next(embed(six_arrow, target, strict=True))
        subtables.append(_induced_subtable(target.table, amap.images))
    iso = next(
        find_morphisms(subtables[0], subtables[1], bijective=True, strict=True),
        None,
    )
    assert iso is not None


def test_permissive_embedding_into_single_type(six_arrow):
    target = full_transformation_sgpoid((3,), LOOP)
    sizes = set()
    witness = None
    for amap in embed(six_arrow, target, strict=False):
        image = [target.arrows[i] for i in amap.images]
        size = len(generate(image, (3,)).arrows)
        sizes.add(size)
        if size == 7 and witness is None:
            witness = amap
    assert witness is not None
    assert 7 == min(sizes)
    # No strict embedding exists on a single type: the cross arrows would
    # need composable images of non-composable pairs.
    assert next(embed(six_arrow, target, strict=True), None) is None


def test_minimal_representation_idempotent():
    graph, degrees, amap = minimal_representation(CompositionTable(((0,),)))
    assert graph.arcs == {(0, 0)}
    assert degrees == (1,)
    assert amap.images == (0,)


def test_minimal_representation_two_element_group(z2):
    graph, degrees, amap = minimal_representation(z2)
    assert graph.arcs == {(0, 0)}
    assert degrees == (2,)
    target = full_transformation_sgpoid(degrees, graph)
    assert check_morphism(z2, target.table, amap, strict=True)
    # Degree 1 has a single map, too small for two distinct images.
    one_point = full_transformation_sgpoid((1,), LOOP)
    assert next(embed(z2, one_point, strict=True), None) is None


def test_minimal_representation_six_arrow(six_arrow):
    graph, degrees, amap = minimal_representation(six_arrow)
    assert graph.m == 2
    assert degrees == (2, 2)
    target = full_transformation_sgpoid(degrees, graph)
    assert check_morphism(six_arrow, target.table, amap, strict=True)
    assert amap.is_injective()


def test_minimal_representation_widened_agrees(z2):
    graph, degrees, _ = minimal_representation(z2, widen=True)
    assert graph.arcs == {(0, 0)}
    assert degrees == (2,)


def test_minimal_representation_rejects_bad_tables(
    misplaced_composition, associative_not_typable
):
    with pytest.raises(DomainError):
        minimal_representation(misplaced_composition)
    with pytest.raises(DomainError):
        minimal_representation(associative_not_typable)


def test_minimal_representation_respects_budget(z2):
    with pytest.raises(ResourceLimitError):
        minimal_representation(z2, max_total=1)


def test_arrow_json_round_trip():
    arrow = TransformationArrow(0, 1, (1, 0, 2))
    assert TransformationArrow.from_json(arrow.to_json()) == arrow
