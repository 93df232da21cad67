import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sgpoidkit import (
    NC,
    UNSET,
    CompositionTable,
    DomainError,
    compose,
    enumerate_associative_tables,
    first_nonassociative_triple,
    is_associative,
    pairs_composing_to,
    triple_associative,
)

from .conftest import from_grid, grid
from .oracles import brute_force_tables


def test_compose_flip_flop(ff):
    assert compose(ff, 0, 1) == 1
    assert compose(ff, 1, 0) == 1
    assert compose(ff, 2, 2) == 2


def test_nc_absorbs(ff):
    assert compose(ff, NC, 1) is NC
    assert compose(ff, 1, NC) is NC
    assert compose(ff, NC, NC) is NC


def test_single_composition_lookup(single_composition):
    assert compose(single_composition, 0, 1) == 2
    assert compose(single_composition, 1, 0) is NC


def test_compose_rejects_bad_indices(ff):
    with pytest.raises(DomainError):
        compose(ff, 3, 0)
    with pytest.raises(DomainError):
        compose(ff, 0, -1)


def test_pairs_composing_to_flip_flop(ff):
    assert pairs_composing_to(ff, 1) == [(0, 1), (1, 0), (1, 1), (2, 1)]


def test_pairs_composing_to_single_composition(single_composition):
    assert pairs_composing_to(single_composition, 2) == [(0, 1)]
    nc_pairs = pairs_composing_to(single_composition, NC)
    assert len(nc_pairs) == 8 and (0, 1) not in nc_pairs


def test_fibers_partition_all_pairs(ff, single_composition, six_arrow):
    for table in (ff, single_composition, six_arrow):
        counted = sum(
            len(pairs_composing_to(table, target))
            for target in list(range(table.n)) + [NC]
        )
        assert counted == table.n * table.n


def test_triple_associative_cases(single_composition, misplaced_composition):
    # (aa)b undefined but a(ab) = ab = b: fails.
    assert not triple_associative(misplaced_composition, 0, 0, 1)
    for triple in itertools.product(range(3), repeat=3):
        assert triple_associative(single_composition, *triple)


def test_total_table_failing_triple(typable_not_associative):
    # (bb)b = ab = b while b(bb) = ba = a.
    assert not triple_associative(typable_not_associative, 1, 1, 1)


def test_is_associative(ff, misplaced_composition, associative_not_typable):
    assert is_associative(ff)
    assert not is_associative(misplaced_composition)
    assert is_associative(associative_not_typable)


def test_first_failing_triple_is_lexicographic_least(misplaced_composition):
    assert first_nonassociative_triple(misplaced_composition) == (0, 0, 1)


def test_enumerate_sizes_against_oracle():
    for n, allow_nc in [(1, False), (1, True), (2, False), (2, True)]:
        ours = [grid(t) for t in enumerate_associative_tables(n, allow_nc=allow_nc)]
        oracle = brute_force_tables(n, allow_nc=allow_nc)
        assert sorted(ours, key=repr) == sorted(oracle, key=repr)


def test_enumerate_counts():
    assert sum(1 for _ in enumerate_associative_tables(1)) == 1
    assert sum(1 for _ in enumerate_associative_tables(1, allow_nc=True)) == 2
    assert sum(1 for _ in enumerate_associative_tables(2)) == 8


def test_nc_free_tables_reappear_without_nc():
    with_nc = {
        t for t in enumerate_associative_tables(2, allow_nc=True)
        if all(v is not NC for row in t.entries for v in row)
    }
    without = set(enumerate_associative_tables(2))
    assert with_nc == without


def test_partial_seeding_restricts_completions():
    partial = ((0, UNSET), (UNSET, UNSET))
    seeded = set(enumerate_associative_tables(2, partial=partial))
    unrestricted = set(enumerate_associative_tables(2))
    assert seeded == {t for t in unrestricted if t.entries[0][0] == 0}
    assert seeded


def test_partial_fixed_nc_cell_is_honored_even_without_allow_nc():
    partial = ((NC, UNSET), (UNSET, UNSET))
    for table in enumerate_associative_tables(2, partial=partial):
        assert table.entries[0][0] is NC
        for i, j in ((0, 1), (1, 0), (1, 1)):
            assert table.entries[i][j] is not NC


def test_partial_dimension_mismatch():
    with pytest.raises(DomainError):
        list(enumerate_associative_tables(2, partial=((UNSET,),)))


def test_enumeration_order_is_deterministic():
    first = list(enumerate_associative_tables(2, allow_nc=True))
    second = list(enumerate_associative_tables(2, allow_nc=True))
    assert first == second


def _relabel(table, perm):
    n = table.n
    inverse = [0] * n
    for i, p in enumerate(perm):
        inverse[p] = i
    return CompositionTable(
        tuple(
            tuple(
                NC
                if table.entries[inverse[i]][inverse[j]] is NC
                else perm[table.entries[inverse[i]][inverse[j]]]
                for j in range(n)
            )
            for i in range(n)
        )
    )


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_relabeling_invariance_of_associativity(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    values = st.one_of(st.integers(min_value=0, max_value=n - 1), st.none())
    cells = data.draw(
        st.lists(values, min_size=n * n, max_size=n * n)
    )
    table = from_grid(
        tuple(tuple(cells[i * n + j] for j in range(n)) for i in range(n))
    )
    perm = data.draw(st.permutations(range(n)))
    assert is_associative(table) == is_associative(_relabel(table, tuple(perm)))


def test_json_round_trip(six_arrow):
    data = six_arrow.to_json()
    assert CompositionTable.from_json(data) == six_arrow
    assert data["entries"][0][5] is None


def test_json_rejects_minus_one():
    with pytest.raises(DomainError):
        CompositionTable.from_json({"n": 1, "entries": [[-1]]})


def test_table_validation():
    with pytest.raises(DomainError):
        CompositionTable(((0, 1),))
    with pytest.raises(DomainError):
        CompositionTable(((5,),))
