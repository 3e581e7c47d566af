"""Exact arithmetic on angles of the circle R/Z under the doubling map.

Angles are reduced rationals in [0, 1). Everything here is integer arithmetic:
denominators reach 2**n - 1 for period n, so nothing is ever converted to float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, List, Tuple, Union

from sympy import divisors, mobius
from sympy.ntheory import n_order

from .exceptions import AngleError, DegenerateArcError

STAR = "*"

Rational = Union[int, Fraction, "Angle"]


@total_ordering
@dataclass(frozen=True)
class Angle:
    """A point of R/Z stored as a reduced fraction num/den with 0 <= num < den."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or not 0 <= self.num < self.den or gcd(self.num, self.den) != 1:
            raise AngleError(f"{self.num}/{self.den} is not a canonical angle")

    @classmethod
    def of(cls, num: int, den: int = 1) -> "Angle":
        """Reduce num/den modulo 1."""
        if den == 0:
            raise AngleError("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        return cls(num // g, den // g)

    @classmethod
    def from_value(cls, value: Rational) -> "Angle":
        if isinstance(value, Angle):
            return value
        value = Fraction(value)
        return cls.of(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "Angle":
        """Parse "num/den" (or a bare integer such as "0") into a canonical angle."""
        raw = text.strip()
        try:
            if "/" in raw:
                num_text, den_text = raw.split("/", 1)
                num, den = int(num_text), int(den_text)
            else:
                num, den = int(raw), 1
        except ValueError as exc:
            raise AngleError(f"cannot parse angle {text!r}") from exc
        if den == 0:
            raise AngleError(f"cannot parse angle {text!r}: zero denominator")
        return cls.of(num, den)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def double(self) -> "Angle":
        return Angle.of(2 * self.num, self.den)

    def halve(self, bit: int) -> "Angle":
        """The preimage (theta + bit) / 2 under doubling."""
        return Angle.of(self.num + bit * self.den, 2 * self.den)

    def __add__(self, other: Rational) -> "Angle":
        other = Angle.from_value(other)
        return Angle.of(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Angle":
        return Angle.of(-self.num, self.den)

    def __sub__(self, other: Rational) -> "Angle":
        return self + (-Angle.from_value(other))

    def __lt__(self, other: "Angle") -> bool:
        if not isinstance(other, Angle):
            return NotImplemented
        return self.num * other.den < other.num * self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Angle({self.num}/{self.den})"


ZERO = Angle(0, 1)
HALF = Angle(1, 2)


@dataclass(frozen=True)
class DirectedArc:
    """The counterclockwise arc from start to end."""

    start: Angle
    end: Angle

    @property
    def length(self) -> Fraction:
        return arc_length(self)

    def offset(self, theta: Angle) -> Fraction:
        """Counterclockwise distance from start to theta, in [0, 1)."""
        return (theta - self.start).value

    def contains(self, theta: Angle, closed: bool = False) -> bool:
        """Containment test; callers choose the open or the closed arc explicitly."""
        d = self.offset(theta)
        length = self.length
        if closed:
            return d <= length
        return 0 < d < length

    def reversed(self) -> "DirectedArc":
        return DirectedArc(self.end, self.start)

    def __str__(self) -> str:
        return f"({self.start} -> {self.end})"


@dataclass(frozen=True)
class KneadingSequence:
    """Itinerary of an angle: a preperiodic prefix followed by a repeating block."""

    symbols: Tuple[str, ...]
    preperiod: int
    period: int

    def symbol(self, k: int) -> str:
        """Symbol at 1-indexed position k, extending the repeating block."""
        if k < 1:
            raise IndexError("kneading positions start at 1")
        if k <= self.preperiod:
            return self.symbols[k - 1]
        return self.symbols[self.preperiod + (k - self.preperiod - 1) % self.period]

    def __str__(self) -> str:
        prefix = "".join(self.symbols[: self.preperiod])
        block = "".join(self.symbols[self.preperiod:])
        return f"{prefix}({block})"


def double(theta: Angle) -> Angle:
    return theta.double()


def preperiod(theta: Angle) -> int:
    """Length of the preperiodic prefix: the 2-adic valuation of the denominator."""
    den = theta.den
    return (den & -den).bit_length() - 1


def exact_period(theta: Angle) -> int:
    """Length of the cycle the orbit of theta eventually enters."""
    odd = theta.den >> preperiod(theta)
    return 1 if odd == 1 else int(n_order(2, odd))


def orbit(theta: Angle) -> Tuple[List[Angle], List[Angle]]:
    """Split the doubling orbit of theta into its preperiodic prefix and its cycle."""
    prefix_length = preperiod(theta)
    points = [theta]
    for _ in range(prefix_length + exact_period(theta) - 1):
        points.append(points[-1].double())
    return points[:prefix_length], points[prefix_length:]


def is_periodic(theta: Angle) -> bool:
    return theta.den % 2 == 1


def count_exact_period(n: int) -> int:
    """Number of angles of exact period n: sum over d | n of mu(n/d) (2^d - 1)."""
    if n < 1:
        raise ValueError("period must be positive")
    return sum(int(mobius(n // d)) * (2**d - 1) for d in divisors(n))


def arc_length(arc: DirectedArc) -> Fraction:
    if arc.start == arc.end:
        raise DegenerateArcError(f"degenerate arc at {arc.start}")
    return (arc.end - arc.start).value


def complementary_arcs(points: Iterable[Angle]) -> List[DirectedArc]:
    """Arcs between circularly consecutive points of a finite set (needs two or more points)."""
    ordered = sorted(set(points))
    if len(ordered) < 2:
        raise DegenerateArcError("complementary arcs need at least two points")
    return [DirectedArc(a, b) for a, b in zip(ordered, ordered[1:] + ordered[:1])]


def chords_cross(pair1: Tuple[Angle, Angle], pair2: Tuple[Angle, Angle]) -> bool:
    """True iff the chords interleave in circular order."""
    a, b = pair1
    c, d = pair2
    if len({a, b, c, d}) != 4:
        raise DegenerateArcError(f"chords {a}-{b} and {c}-{d} share an endpoint")
    # interleaving does not depend on where the circle is cut, so cut it at 0
    lo, hi = (a, b) if a < b else (b, a)
    return (lo < c < hi) != (lo < d < hi)


def kneading_sequence(theta: Angle) -> KneadingSequence:
    """Itinerary of theta against the partition by theta/2 and (theta+1)/2."""
    if theta == ZERO:
        raise DegenerateArcError("the kneading partition of angle 0 is degenerate")
    upper = DirectedArc(theta.halve(0), theta.halve(1))
    prefix, cycle = orbit(theta)
    symbols = []
    for point in prefix + cycle:
        if point in (upper.start, upper.end):
            symbols.append(STAR)
        elif upper.contains(point):
            symbols.append("1")
        else:
            symbols.append("0")
    return KneadingSequence(tuple(symbols), len(prefix), len(cycle))


def binary_block(theta: Angle) -> str:
    """The repeating binary block of a periodic angle, of length exact_period(theta)."""
    if not is_periodic(theta):
        raise AngleError(f"{theta} has no purely periodic binary expansion")
    n = exact_period(theta)
    numerator = theta.num * (2**n - 1) // theta.den
    return format(numerator, f"0{n}b")


def from_binary_block(bits: str) -> Angle:
    """The angle 0.(bits)(bits)... in binary."""
    if not bits or set(bits) - {"0", "1"}:
        raise AngleError(f"invalid binary block {bits!r}")
    return Angle.of(int(bits, 2), 2 ** len(bits) - 1)


def periodic_angles(n: int) -> List[Angle]:
    """All angles of exact period n under doubling, increasing."""
    if n < 1:
        raise ValueError("period must be positive")
    den = 2**n - 1
    candidates = {Angle.of(k, den) for k in range(den)} if den > 1 else {ZERO}
    return sorted(theta for theta in candidates if exact_period(theta) == n)
