"""Hypothesis strategies for angles and rationals."""

from fractions import Fraction

from hypothesis import strategies as st

from lamination_invariants.angles import Angle


@st.composite
def angles(draw, max_den: int = 2**10):
    den = draw(st.integers(min_value=1, max_value=max_den))
    num = draw(st.integers(min_value=0, max_value=den - 1))
    return Angle.of(num, den)


@st.composite
def periodic_angles(draw, max_den: int = 2**10 - 1):
    den = draw(st.integers(min_value=0, max_value=(max_den - 1) // 2)) * 2 + 1
    num = draw(st.integers(min_value=0, max_value=den - 1))
    return Angle.of(num, den)


rationals = st.fractions(min_value=Fraction(-8), max_value=Fraction(8), max_denominator=64)
