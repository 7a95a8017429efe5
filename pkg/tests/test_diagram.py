import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vknots.corpus import random_diagram
from vknots.diagram import (
    Chord,
    DiagramError,
    GaussDiagram,
    ParseError,
    concat_long,
    cut,
    parse_gauss_code,
    read_diagram_file,
    reclose,
    virtualize,
)

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
VT = "O1+ O2+ U1+ U2+"


class TestParse:
    def test_empty_input(self):
        d = parse_gauss_code("", "closed")
        assert d.n == 0 and d.kind == "closed"

    def test_trefoil_positions(self):
        d = parse_gauss_code(TREFOIL, "closed")
        assert d.n == 3
        c1 = d.chord(1)
        assert (c1.tail, c1.head, c1.sign) == (0, 3, 1)

    def test_sign_mismatch(self):
        with pytest.raises(ParseError, match="sign mismatch"):
            parse_gauss_code("O1+ U1-")

    def test_duplicate_role(self):
        with pytest.raises(ParseError, match="already has an O"):
            parse_gauss_code("O1+ O1+")

    def test_unpaired_label(self):
        with pytest.raises(ParseError, match="missing its U"):
            parse_gauss_code("O1+ U2+ O2+")

    def test_bad_token(self):
        with pytest.raises(ParseError, match="bad token 'X1\\+'"):
            parse_gauss_code("X1+ U1+")

    def test_commas_allowed(self):
        assert parse_gauss_code("O1+,U1+") == parse_gauss_code("O1+ U1+")

    def test_diagram_file(self):
        text = "# comment\nO1+ U1+\nlong: O1- U1-\n\nclosed: " + VT
        ds = read_diagram_file(text)
        assert [d.kind for d in ds] == ["closed", "long", "closed"]
        assert ds[2] == parse_gauss_code(VT)

    def test_diagram_file_error_names_line(self):
        with pytest.raises(ParseError, match="line 2"):
            read_diagram_file("O1+ U1+\nO1+ o2-")


class TestRoundTrip:
    def test_trefoil(self):
        d = parse_gauss_code(TREFOIL, "closed")
        assert parse_gauss_code(d.code(), "closed") == d

    @given(st.integers(0, 2**32 - 1), st.integers(0, 7), st.booleans())
    @settings(max_examples=120, deadline=None)
    def test_random_round_trip(self, seed, n, is_long):
        import random

        kind = "long" if is_long else "closed"
        d = random_diagram(random.Random(seed), n, kind)
        assert parse_gauss_code(d.code(), kind) == d

    def test_ids_renormalized(self):
        d = GaussDiagram("closed", [Chord(7, 0, 1, 1), Chord(3, 2, 3, -1)])
        assert d.code() == "O1+ U1+ O2- U2-"


class TestStructure:
    def test_equality_ignores_ids(self):
        a = GaussDiagram("closed", [Chord(1, 0, 2, 1), Chord(2, 1, 3, 1)])
        b = GaussDiagram("closed", [Chord(5, 0, 2, 1), Chord(9, 1, 3, 1)])
        assert a == b and hash(a) == hash(b)

    def test_kind_distinguishes(self):
        assert parse_gauss_code(VT, "closed") != parse_gauss_code(VT, "long")

    def test_slot_collision_rejected(self):
        with pytest.raises(DiagramError, match="slot"):
            GaussDiagram("closed", [Chord(1, 0, 1, 1), Chord(2, 1, 2, 1)])

    def test_canonical_code_rotation(self):
        d = parse_gauss_code(TREFOIL, "closed")
        assert d.rotated(2).canonical_code() == d.canonical_code()

    def test_adjacency(self):
        d = parse_gauss_code(VT, "closed")
        assert d.is_adjacent(3, 0)
        dl = parse_gauss_code(VT, "long")
        assert not dl.is_adjacent(3, 0)


class TestVirtualize:
    def test_trefoil_chord1(self):
        d = parse_gauss_code(TREFOIL, "closed")
        assert virtualize(d, 1) == parse_gauss_code("U2+ O3+ O2+ U3+", "closed")

    def test_all_chords_gives_empty(self, rng):
        d = random_diagram(rng, 5, "closed")
        for cid in d.chord_ids():
            d = virtualize(d, cid)
        assert d.n == 0

    def test_strictly_decreases(self, rng):
        for _ in range(20):
            d = random_diagram(rng, rng.randint(1, 6), "long")
            cid = rng.choice(d.chord_ids())
            assert virtualize(d, cid).n == d.n - 1

    def test_unknown_chord(self):
        with pytest.raises(DiagramError, match="unknown chord"):
            virtualize(parse_gauss_code(VT), 9)

    def test_virtual_trefoil_reduces_after_one(self):
        d = virtualize(parse_gauss_code(VT), 2)
        assert d.n == 1
        c = d.chords[0]
        assert abs(c.tail - c.head) == 1  # one kink, R1-deletable


class TestBasepoint:
    def test_cut_empty(self):
        assert cut(parse_gauss_code(""), 0).kind == "long"

    def test_cut_at_zero_keeps_tokens(self):
        d = parse_gauss_code(TREFOIL, "closed")
        assert cut(d, 0).code() == TREFOIL

    def test_cut_then_reclose(self):
        d = parse_gauss_code(TREFOIL, "closed")
        for slot in range(d.slot_count + 1):
            back = reclose(cut(d, slot))
            assert back.canonical_code() == d.canonical_code()

    def test_cut_range(self):
        with pytest.raises(DiagramError, match="outside"):
            cut(parse_gauss_code(VT), 9)

    def test_concat_identity(self):
        e = parse_gauss_code("", "long")
        d = parse_gauss_code(TREFOIL, "long")
        assert concat_long(e, d) == d
        assert concat_long(d, e) == d

    def test_concat_counts(self, rng):
        a = random_diagram(rng, 3, "long")
        b = random_diagram(rng, 4, "long")
        assert concat_long(a, b).n == 7

    def test_concat_rejects_closed(self):
        with pytest.raises(DiagramError, match="long"):
            concat_long(parse_gauss_code(VT), parse_gauss_code(VT))
