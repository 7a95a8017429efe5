"""Named diagrams and random diagram generation for tests, the self-test
battery and examples."""

from __future__ import annotations

import random

from .diagram import Chord, GaussDiagram, Kind, parse_gauss_code

RIGHT_TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
LEFT_TREFOIL = "O1- U2- O3- U1- O2- U3-"
FIGURE_EIGHT = "O1+ U4- O3- U1+ O2+ U3- O4- U2+"
VIRTUAL_TREFOIL = "O1+ O2+ U1+ U2+"

# Four chords forming two interleaved opposite-sign pairs: deleting either
# pair (or both) leaves an R2-reducible diagram, but the full diagram admits
# no reducing Reidemeister move.  With families {1,2} and {3,4} this is the
# standard 2-family virtualization-trivial shape.
GPV2_TRIVIAL = "O1+ O3+ O2- O4- U3+ U1+ U4- U2-"


def right_trefoil(kind: Kind = "closed") -> GaussDiagram:
    return parse_gauss_code(RIGHT_TREFOIL, kind)


def left_trefoil(kind: Kind = "closed") -> GaussDiagram:
    return parse_gauss_code(LEFT_TREFOIL, kind)


def figure_eight(kind: Kind = "closed") -> GaussDiagram:
    return parse_gauss_code(FIGURE_EIGHT, kind)


def virtual_trefoil() -> GaussDiagram:
    return parse_gauss_code(VIRTUAL_TREFOIL, "closed")


def gpv2_trivial() -> GaussDiagram:
    return parse_gauss_code(GPV2_TRIVIAL, "long")


def unknot(kind: Kind = "closed") -> GaussDiagram:
    return GaussDiagram(kind, ())


def random_diagram(rng: random.Random, n: int, kind: Kind) -> GaussDiagram:
    """Uniformly random n-chord diagram: random endpoint pairing, random
    chord directions and signs."""
    slots = list(range(2 * n))
    rng.shuffle(slots)
    chords = []
    for i in range(n):
        a, b = slots[2 * i], slots[2 * i + 1]
        if rng.random() < 0.5:
            a, b = b, a
        chords.append(Chord(i + 1, a, b, rng.choice((1, -1))))
    return GaussDiagram(kind, chords)
