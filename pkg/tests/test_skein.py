"""Tests for the planar diagram engine and Jones-Wenzl projectors."""

import pytest

from coribbon.cyclotomic import loop_value, one, quantum_int, root_power, zero
from coribbon.skein import (
    PlanarDiagram,
    SkeinElement,
    cap_cup_diagram,
    compose_diagrams,
    crossing_element,
    diagram_from_arcs,
    generator_element,
    identity_diagram,
    identity_element,
    jones_wenzl,
    nested_caps_diagram,
    nested_cups_diagram,
    tensor_diagrams,
)


def cup_element(level):
    """0 -> 2 skein element (single cup)."""
    return SkeinElement.from_diagram(
        level, diagram_from_arcs(0, 2, [(("b", 0), ("b", 1))])
    )


def cap_element(level):
    """2 -> 0 skein element (single cap)."""
    return SkeinElement.from_diagram(
        level, diagram_from_arcs(2, 0, [(("t", 0), ("t", 1))])
    )


class TestPlanarDiagram:
    def test_identity(self):
        d = identity_diagram(3)
        assert d.n == d.m == 3
        assert d.pairing[0] == d.bottom_index(0)

    def test_crossing_pairing_rejected(self):
        # t0-b1 and t1-b0 cross
        with pytest.raises(ValueError, match="crossing"):
            diagram_from_arcs(2, 2, [(("t", 0), ("b", 1)), (("t", 1), ("b", 0))])

    def test_bad_involution_rejected(self):
        with pytest.raises(ValueError):
            PlanarDiagram(2, 0, (0, 1))
        with pytest.raises(ValueError):
            PlanarDiagram(1, 0, (0,))

    def test_transpose_round_trip(self):
        d = nested_caps_diagram(2, 2, 1)
        assert d.transpose().transpose() == d
        assert d.transpose().n == d.m

    def test_generator_is_self_transpose(self):
        e = cap_cup_diagram(3, 1)
        assert e.transpose() == e

    def test_repr_mentions_points(self):
        text = repr(cap_cup_diagram(2, 0))
        assert "t0-t1" in text and "b0-b1" in text


class TestComposition:
    def test_identity_composition(self):
        for n in (1, 2, 4):
            d = identity_diagram(n)
            assert compose_diagrams(d, d) == d

    def test_cup_then_cap_makes_loop(self):
        cup = diagram_from_arcs(0, 2, [(("b", 0), ("b", 1))])
        cap = diagram_from_arcs(2, 0, [(("t", 0), ("t", 1))])
        glued = compose_diagrams(cup, cap)
        assert glued.n == glued.m == 0
        assert glued.loop_count == 1

    def test_generator_squared(self):
        e = cap_cup_diagram(2, 0)
        glued = compose_diagrams(e, e)
        assert glued.strip_loops() == e
        assert glued.loop_count == 1

    def test_arity_mismatch(self):
        with pytest.raises(ValueError, match="arity mismatch"):
            compose_diagrams(identity_diagram(2), identity_diagram(3))

    def test_associativity_spot(self):
        a = cap_cup_diagram(4, 0)
        b = cap_cup_diagram(4, 1)
        c = cap_cup_diagram(4, 2)
        lhs = compose_diagrams(compose_diagrams(a, b), c)
        rhs = compose_diagrams(a, compose_diagrams(b, c))
        assert lhs == rhs

    def test_tensor(self):
        d = tensor_diagrams(identity_diagram(1), cap_cup_diagram(2, 0))
        assert (d.n, d.m) == (3, 3)
        assert d == cap_cup_diagram(3, 1)

    def test_nested_caps_shape(self):
        d = nested_caps_diagram(2, 2, 2)
        assert (d.n, d.m) == (4, 0)
        # innermost pair (1,2), outer pair (0,3)
        assert d.pairing[1] == 2 and d.pairing[0] == 3
        u = nested_cups_diagram(2, 2, 2)
        assert (u.n, u.m) == (0, 4)


class TestSkeinElement:
    def test_loop_normalization(self):
        level = 3
        looped = PlanarDiagram(0, 0, (), loop_count=2)
        elt = SkeinElement.from_diagram(level, looped)
        empty = PlanarDiagram(0, 0, ())
        assert elt.terms == {empty: loop_value(level) ** 2}

    def test_compose_examples(self):
        level = 4
        ident = identity_element(level, 2)
        assert ident.compose(ident) == ident
        # cup stacked on cap closes into a loop worth the loop value
        closed = cup_element(level).compose(cap_element(level))
        empty = SkeinElement.from_diagram(
            level, PlanarDiagram(0, 0, ()), loop_value(level)
        )
        assert closed == empty
        # e * e = loop_value * e
        e = generator_element(level, 2, 0)
        assert e.compose(e) == e.scale(loop_value(level))

    def test_closure_counts_loops(self):
        level = 3
        assert identity_element(level, 1).closure() == loop_value(level)
        assert identity_element(level, 2).closure() == loop_value(level) ** 2
        e = generator_element(level, 2, 0)
        assert e.closure() == loop_value(level)

    def test_closure_needs_square(self):
        with pytest.raises(ValueError):
            cup_element(3).closure()

    def test_markov_property(self):
        # closure(a b) = closure(b a) for composable square elements
        level = 4
        a = generator_element(level, 3, 0) + identity_element(level, 3).scale(
            root_power(level, 2)
        )
        b = generator_element(level, 3, 1)
        assert a.compose(b).closure() == b.compose(a).closure()

    def test_level_mismatch(self):
        with pytest.raises(ValueError, match="level mismatch"):
            identity_element(3, 2).compose(identity_element(4, 2))

    def test_arity_mismatch(self):
        with pytest.raises(ValueError, match="arity mismatch"):
            identity_element(3, 2).compose(identity_element(3, 3))

    def test_linear_structure(self):
        level = 3
        e = generator_element(level, 2, 0)
        ident = identity_element(level, 2)
        assert (e + ident) - e == ident
        assert e.scale(0).is_zero()
        assert (-e) + e == SkeinElement.zero_element(level, 2, 2)


class TestJonesWenzl:
    def test_zero_and_one(self):
        assert jones_wenzl(3, 0).terms == {PlanarDiagram(0, 0, ()): one(3)}
        assert jones_wenzl(3, 1) == identity_element(3, 1)

    def test_two_strand_form(self):
        level = 5
        p2 = jones_wenzl(level, 2)
        expected = identity_element(level, 2) - generator_element(
            level, 2, 0
        ).scale(loop_value(level).inverse())
        assert p2 == expected

    @pytest.mark.parametrize("level", [2, 3, 4, 5, 6])
    def test_idempotent(self, level):
        for n in range(level):
            p = jones_wenzl(level, n)
            assert p.compose(p) == p

    @pytest.mark.parametrize("level", [2, 3, 4, 5, 6])
    def test_killed_by_caps(self, level):
        for n in range(2, level):
            p = jones_wenzl(level, n)
            for i in range(n - 1):
                e = generator_element(level, n, i)
                assert e.compose(p).is_zero()
                assert p.compose(e).is_zero()

    @pytest.mark.parametrize("level", [2, 3, 4, 5, 6])
    def test_closure_is_signed_dimension(self, level):
        for n in range(level):
            expected = quantum_int(level, n + 1)
            if n % 2:
                expected = -expected
            assert jones_wenzl(level, n).closure() == expected

    def test_vanishing_quantum_integer_rejected(self):
        with pytest.raises(ValueError, match="quantum integer vanishes"):
            jones_wenzl(3, 3)
        with pytest.raises(ValueError, match="quantum integer vanishes"):
            jones_wenzl(2, 5)


class TestCrossings:
    def test_two_term_expansion(self):
        level = 3
        x = crossing_element(level, 2, 0)
        assert x.terms == {
            identity_diagram(2): root_power(level, 1),
            cap_cup_diagram(2, 0): root_power(level, -1),
        }

    def test_mirror_inverts(self):
        level = 4
        pos = crossing_element(level, 3, 1)
        neg = crossing_element(level, 3, 1, positive=False)
        assert pos.compose(neg) == identity_element(level, 3)

    def test_kink_values(self):
        # Closing the two kink chiralities off with a cup gives the two
        # framing factors: -A^-3 for A*id + A^-1*e and -A^3 for the mirror.
        for level in (3, 5):
            cup = cup_element(level)
            pos = cup.compose(crossing_element(level, 2, 0))
            assert pos == cup.scale(-root_power(level, -3))
            neg = cup.compose(crossing_element(level, 2, 0, positive=False))
            assert neg == cup.scale(-root_power(level, 3))

    def test_reidemeister_two(self):
        level = 4
        x = crossing_element(level, 2, 0)
        y = crossing_element(level, 2, 0, positive=False)
        assert x.compose(y) == identity_element(level, 2)
