import pytest

from sgpoidkit import (
    NC,
    CompositionTable,
    enumerate_associative_tables,
    minimal_objects,
)
from sgpoidkit.catalog import (
    communicating_vessels,
    flip_flop,
    two_element_group,
    two_type_six_arrow,
)

from .oracles import table_canonical


def grid(table):
    """Raw tuple-of-tuples view with None for NC, for the oracles."""
    return tuple(
        tuple(None if v is NC else v for v in row) for row in table.entries
    )


def from_grid(entries):
    return CompositionTable(
        tuple(tuple(NC if v is None else v for v in row) for row in entries)
    )


@pytest.fixture(scope="session")
def ff():
    return flip_flop()


@pytest.fixture(scope="session")
def six_arrow():
    return two_type_six_arrow()


@pytest.fixture(scope="session")
def z2():
    return two_element_group()


@pytest.fixture(scope="session")
def vessels():
    return communicating_vessels()


@pytest.fixture(scope="session")
def single_composition():
    """Three arrows, ab=c the only composition; a semigroupoid."""
    return from_grid(((None, 2, None), (None, None, None), (None, None, None)))


@pytest.fixture(scope="session")
def misplaced_composition():
    """Three arrows, ab=b the only composition; fails associativity at
    (a, a, b) and is untypable."""
    return from_grid(((None, 1, None), (None, None, None), (None, None, None)))


@pytest.fixture(scope="session")
def typable_not_associative():
    """Total two-arrow table that fails associativity at (b, b, b)."""
    return CompositionTable(((0, 1), (0, 0)))


@pytest.fixture(scope="session")
def associative_not_typable():
    """Two-arrow table, ee undefined but ef = fe = e, ff = f: associative
    yet no consistent domain/codomain assignment exists."""
    return from_grid(((None, 0), (0, 1)))


@pytest.fixture(scope="session")
def empty_three():
    """Three arrows, nothing composes."""
    return from_grid(tuple((None,) * 3 for _ in range(3)))


@pytest.fixture(scope="session")
def loop_plus_stray():
    """Idempotent a plus an arrow b composable with nothing."""
    return from_grid(((0, None), (None, None)))


@pytest.fixture(scope="session")
def small_universe():
    """All labeled associative tables with 1..3 arrows (NC allowed)."""
    tables = []
    for n in (1, 2, 3):
        tables.extend(enumerate_associative_tables(n, allow_nc=True))
    return tables


@pytest.fixture(scope="session")
def small_semigroupoids(small_universe):
    """Labeled semigroupoids with up to 3 arrows, plus one representative
    per isomorphism class (typability decided once per class; it is
    relabeling-invariant)."""
    by_class = {}
    for table in small_universe:
        by_class.setdefault(table_canonical(grid(table)), []).append(table)
    labeled = []
    reps = []
    for _, members in sorted(by_class.items()):
        rep = members[0]
        if minimal_objects(rep) is not None:
            reps.append(rep)
            labeled.extend(members)
    return labeled, reps
