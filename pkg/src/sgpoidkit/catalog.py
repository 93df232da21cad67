"""A few well-known small structures used by the docs and tests."""

from .tables import NC, CompositionTable
from .genrep import TransformationArrow


def flip_flop() -> CompositionTable:
    """The identity and the two constant maps on two states, the classic
    three-element automaton semigroup (composition left to right)."""
    return CompositionTable(((0, 1, 2), (1, 1, 2), (2, 1, 2)))


def two_type_six_arrow() -> CompositionTable:
    """Two-object semigroupoid with six arrows: an identity 0 and a swap 1
    on the first type, three cross arrows 2, 3, 4, and an endo arrow 5 on
    the second type that collapses every cross arrow onto 2."""
    return CompositionTable(
        (
            (0, 1, 2, 3, 4, NC),
            (1, 0, 2, 4, 3, NC),
            (NC, NC, NC, NC, NC, 2),
            (NC, NC, NC, NC, NC, 2),
            (NC, NC, NC, NC, NC, 2),
            (NC, NC, NC, NC, NC, 5),
        )
    )


def two_element_group() -> CompositionTable:
    return CompositionTable(((0, 1), (1, 0)))


def communicating_vessels() -> tuple:
    """Degrees and generators for two two-state types whose local actions
    get transferred across: a swap on the first type, a reset on the
    second, and state-preserving maps in both directions."""
    degrees = (2, 2)
    generators = (
        TransformationArrow(0, 0, (1, 0)),
        TransformationArrow(1, 1, (1, 1)),
        TransformationArrow(0, 1, (0, 1)),
        TransformationArrow(1, 0, (0, 1)),
    )
    return degrees, generators
