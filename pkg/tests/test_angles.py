from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamination_invariants.angles import (
    STAR,
    ZERO,
    Angle,
    DirectedArc,
    arc_length,
    binary_block,
    chords_cross,
    complementary_arcs,
    count_exact_period,
    exact_period,
    from_binary_block,
    is_periodic,
    kneading_sequence,
    orbit,
    periodic_angles,
    preperiod,
)
from lamination_invariants.exceptions import AngleError, DegenerateArcError

from .strategies import angles, periodic_angles as periodic_angle_values


def a(text: str) -> Angle:
    return Angle.parse(text)


class TestAngle:
    def test_canonical_reduction(self):
        assert Angle.of(2, 6) == Angle(1, 3)
        assert Angle.of(7, 7) == ZERO
        assert Angle.of(-1, 3) == Angle(2, 3)

    def test_rejects_non_canonical(self):
        with pytest.raises(AngleError):
            Angle(2, 6)
        with pytest.raises(AngleError):
            Angle(3, 3)

    @pytest.mark.parametrize("text, expected", [("3/7", Angle(3, 7)), ("0", ZERO), (" 2/4 ", Angle(1, 2))])
    def test_parse(self, text, expected):
        assert Angle.parse(text) == expected

    @pytest.mark.parametrize("text", ["x", "1/0", "1/2/3", ""])
    def test_parse_errors(self, text):
        with pytest.raises(AngleError):
            Angle.parse(text)

    def test_string_round_trip(self):
        assert str(a("6/14")) == "3/7"

    def test_arithmetic(self):
        assert a("1/3") + a("2/3") == ZERO
        assert a("1/7") - a("2/7") == a("6/7")
        assert -a("1/3") == a("2/3")
        assert a("1/2") + Fraction(3, 4) == a("1/4")

    def test_ordering(self):
        assert a("1/7") < a("1/5") < a("1/3")


@pytest.mark.parametrize("theta, expected", [("1/7", "2/7"), ("2/3", "1/3"), ("0", "0")])
def test_double(theta, expected):
    assert a(theta).double() == a(expected)


@given(angles())
def test_doubling_is_two_to_one(theta):
    assert theta.halve(0).double() == theta
    assert theta.halve(1).double() == theta
    assert theta.halve(0) != theta.halve(1)


class TestOrbit:
    def test_period_three(self):
        assert orbit(a("1/7")) == ([], [a("1/7"), a("2/7"), a("4/7")])

    def test_period_four(self):
        prefix, cycle = orbit(a("1/5"))
        assert prefix == [] and len(cycle) == 4

    def test_preperiodic(self):
        assert orbit(a("1/6")) == ([a("1/6")], [a("1/3"), a("2/3")])

    @given(periodic_angle_values())
    def test_cycle_length_is_order_of_two(self, theta):
        _, cycle = orbit(theta)
        point = theta
        for _ in range(len(cycle)):
            point = point.double()
        assert point == theta
        assert len(set(cycle)) == len(cycle) == exact_period(theta)

    @given(angles())
    def test_prefix_then_cycle(self, theta):
        prefix, cycle = orbit(theta)
        assert len(prefix) == preperiod(theta)
        points = prefix + cycle
        for current, following in zip(points, points[1:]):
            assert current.double() == following
        assert cycle[-1].double() == cycle[0]


@pytest.mark.parametrize("theta, expected", [("1/3", True), ("1/4", False), ("0", True)])
def test_is_periodic(theta, expected):
    assert is_periodic(a(theta)) is expected


@pytest.mark.parametrize("n", range(1, 13))
def test_exact_period_census(n):
    assert len(periodic_angles(n)) == count_exact_period(n)


def test_periodic_angles_small_periods():
    assert periodic_angles(1) == [ZERO]
    assert periodic_angles(2) == [a("1/3"), a("2/3")]
    assert periodic_angles(3) == [a(f"{k}/7") for k in range(1, 7)]
    assert len(periodic_angles(4)) == 12


class TestArcs:
    @pytest.mark.parametrize("start, end, length", [
        ("1/3", "2/3", Fraction(1, 3)),
        ("2/3", "1/3", Fraction(2, 3)),
        ("6/7", "1/7", Fraction(2, 7)),
    ])
    def test_arc_length(self, start, end, length):
        assert arc_length(DirectedArc(a(start), a(end))) == length

    def test_degenerate_arc(self):
        with pytest.raises(DegenerateArcError):
            arc_length(DirectedArc(a("1/3"), a("1/3")))

    def test_open_and_closed_containment(self):
        arc = DirectedArc(a("6/7"), a("1/7"))
        assert arc.contains(ZERO)
        assert not arc.contains(a("1/7"))
        assert arc.contains(a("1/7"), closed=True)
        assert not arc.contains(a("1/2"), closed=True)

    @given(st.sets(angles(max_den=64), min_size=2, max_size=8))
    def test_complementary_arcs_partition_the_circle(self, points):
        assert sum(arc.length for arc in complementary_arcs(points)) == 1


class TestChords:
    @pytest.mark.parametrize("p1, p2, expected", [
        (("1/7", "2/7"), ("3/7", "4/7"), False),
        (("1/7", "4/7"), ("2/7", "5/7"), True),
        (("0", "1/2"), ("1/4", "3/4"), True),
    ])
    def test_examples(self, p1, p2, expected):
        assert chords_cross(tuple(map(a, p1)), tuple(map(a, p2))) is expected

    def test_shared_endpoint(self):
        with pytest.raises(DegenerateArcError):
            chords_cross((a("1/7"), a("2/7")), (a("2/7"), a("3/7")))

    @given(st.lists(angles(max_den=60), min_size=4, max_size=4, unique=True), angles(max_den=60))
    def test_symmetric_and_rotation_invariant(self, points, rotation):
        p, q, r, s = points
        crossing = chords_cross((p, q), (r, s))
        assert crossing == chords_cross((r, s), (p, q)) == chords_cross((q, p), (s, r))
        rotated = [theta + rotation for theta in points]
        assert chords_cross(tuple(rotated[:2]), tuple(rotated[2:])) == crossing


class TestKneading:
    @pytest.mark.parametrize("theta, text", [("1/3", "(1*)"), ("3/7", "(10*)"), ("1/4", "11(0)")])
    def test_examples(self, theta, text):
        assert str(kneading_sequence(a(theta))) == text

    def test_zero_is_rejected(self):
        with pytest.raises(DegenerateArcError):
            kneading_sequence(ZERO)

    @settings(max_examples=200)
    @given(periodic_angle_values().filter(lambda theta: theta != ZERO))
    def test_star_exactly_at_multiples_of_the_period(self, theta):
        nu = kneading_sequence(theta)
        n = exact_period(theta)
        assert nu.preperiod == 0 and nu.period == n
        for k in range(1, 3 * n + 1):
            assert (nu.symbol(k) == STAR) == (k % n == 0)


class TestBinaryBlocks:
    def test_block(self):
        assert binary_block(a("1/3")) == "01"
        assert binary_block(a("3/7")) == "011"
        assert from_binary_block("0110") == a("6/15")

    def test_even_denominator(self):
        with pytest.raises(AngleError):
            binary_block(a("1/4"))

    @given(periodic_angle_values(max_den=255))
    def test_round_trip(self, theta):
        assert from_binary_block(binary_block(theta)) == theta
