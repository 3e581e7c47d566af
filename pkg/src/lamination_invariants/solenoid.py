"""Truncated dyadic solenoid: backward orbits of angles under doubling.

A point of depth d stores its base angle theta_0 and tail bits b_1..b_d, standing for the
coordinates theta_k = (theta_{k-1} + b_k) / 2. Every coordinate equals
(theta_0 + c_k) / 2^k where c_k is the number written by the low k bits b_1..b_k, so the
tail read as a binary counter (b_1 least significant) is the fiber coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger

from .angles import HALF, ZERO, Angle, exact_period, is_periodic, periodic_angles
from .atlas import Atlas
from .config import settings
from .exceptions import AtlasError, SolenoidError
from .schemas import AffineMapRecord, SolenoidPointRecord


@dataclass(frozen=True)
class SolenoidPoint:
    base: Angle
    tail: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(bit not in (0, 1) for bit in self.tail):
            raise SolenoidError(f"tail bits must be 0 or 1, got {self.tail}")

    @property
    def depth(self) -> int:
        return len(self.tail)

    @property
    def counter(self) -> int:
        """The tail read as a binary number with b_1 as the least significant bit."""
        return sum(bit << index for index, bit in enumerate(self.tail))

    @classmethod
    def from_counter(cls, base: Angle, counter: int, depth: int) -> "SolenoidPoint":
        counter %= 2**depth
        return cls(base, tuple((counter >> index) & 1 for index in range(depth)))

    @classmethod
    def from_coordinates(cls, coords: Sequence[Angle]) -> "SolenoidPoint":
        """Encode theta_0..theta_d; each coordinate must double onto the previous one."""
        if not coords:
            raise SolenoidError("a solenoid point needs at least its base coordinate")
        for previous, current in zip(coords, coords[1:]):
            if current.double() != previous:
                raise SolenoidError(f"{current} does not double onto {previous}")
        return cls(coords[0], tuple(1 if theta >= HALF else 0 for theta in coords[1:]))

    def coordinates(self) -> List[Angle]:
        coords = [self.base]
        for bit in self.tail:
            coords.append(coords[-1].halve(bit))
        return coords

    def to_record(self) -> SolenoidPointRecord:
        return SolenoidPointRecord(
            base=str(self.base), tail="".join(str(bit) for bit in self.tail), depth=self.depth
        )

    @classmethod
    def from_record(cls, record: SolenoidPointRecord) -> "SolenoidPoint":
        return cls(Angle.parse(record.base), tuple(int(bit) for bit in record.tail))

    def __str__(self) -> str:
        return f"{self.base}|{''.join(str(bit) for bit in self.tail)}"


def coordinates(point: SolenoidPoint) -> List[Angle]:
    return point.coordinates()


def unit(depth: int) -> SolenoidPoint:
    if depth < 0:
        raise SolenoidError("depth must be non-negative")
    return SolenoidPoint(ZERO, (0,) * depth)


def truncate(point: SolenoidPoint, depth: int) -> SolenoidPoint:
    if not 0 <= depth <= point.depth:
        raise SolenoidError(f"cannot truncate a depth {point.depth} point to depth {depth}")
    return SolenoidPoint(point.base, point.tail[:depth])


def _check_depths(*points: SolenoidPoint) -> int:
    depths = {point.depth for point in points}
    if len(depths) != 1:
        raise SolenoidError(f"depth mismatch: {sorted(depths)}")
    return depths.pop()


def group_mul(x: SolenoidPoint, y: SolenoidPoint) -> SolenoidPoint:
    """Componentwise sum of coordinates, re-encoded."""
    _check_depths(x, y)
    return SolenoidPoint.from_coordinates([a + b for a, b in zip(x.coordinates(), y.coordinates())])


def inverse(x: SolenoidPoint) -> SolenoidPoint:
    return SolenoidPoint.from_coordinates([-theta for theta in x.coordinates()])


def invert_point(x: SolenoidPoint) -> SolenoidPoint:
    """The inversion s -> s-bar; on an abelian solenoid it is the group inverse."""
    return inverse(x)


def rho(t: Union[int, Fraction], depth: int) -> SolenoidPoint:
    """Point of the one-parameter subgroup through the unit: coordinates t / 2^k mod 1."""
    t = Fraction(t)
    return SolenoidPoint.from_coordinates([Angle.from_value(t / 2**k) for k in range(depth + 1)])


def adding_machine(x: SolenoidPoint) -> SolenoidPoint:
    return adding_machine_power(x, 1)


def adding_machine_power(x: SolenoidPoint, k: int) -> SolenoidPoint:
    """sigma^k: add k to the tail counter; carries past the depth are dropped."""
    return SolenoidPoint.from_counter(x.base, x.counter + k, x.depth)


def shift(x: SolenoidPoint) -> SolenoidPoint:
    """Natural extension of doubling: prepend the doubled base, drop the last bit."""
    if x.depth == 0:
        return SolenoidPoint(x.base.double())
    leading = 1 if x.base >= HALF else 0
    return SolenoidPoint(x.base.double(), (leading,) + x.tail[:-1])


def unshift(x: SolenoidPoint) -> SolenoidPoint:
    if x.depth == 0:
        raise SolenoidError("cannot unshift a depth 0 point")
    return SolenoidPoint(x.base.halve(x.tail[0]), x.tail[1:])


def shift_power(x: SolenoidPoint, n: int) -> SolenoidPoint:
    """shift^n; negative powers unshift and consume one level of depth each."""
    if n < 0 and x.depth < -n:
        raise SolenoidError(f"shift power {n} needs depth {-n}, point has depth {x.depth}")
    for _ in range(abs(n)):
        x = shift(x) if n > 0 else unshift(x)
    return x


def periodic_point(theta: Angle, depth: int) -> SolenoidPoint:
    """The invariant lift of the cycle of theta: every coordinate stays on the cycle."""
    if not is_periodic(theta):
        raise SolenoidError(f"{theta} has an even denominator and no periodic lift")
    if theta.den == 1:
        return unit(depth)
    return SolenoidPoint.from_coordinates(
        [Angle.of(pow(2, -k, theta.den) * theta.num, theta.den) for k in range(depth + 1)]
    )


@dataclass(frozen=True)
class AffineSolenoidMap:
    """The map x -> translation . shift^shift_power(r(x)), r the inversion when `invert`."""

    translation: SolenoidPoint
    shift_power: int = 0
    invert: bool = False

    @classmethod
    def identity(cls, depth: int) -> "AffineSolenoidMap":
        return cls(unit(depth))

    @classmethod
    def inversion(cls, depth: int) -> "AffineSolenoidMap":
        return cls(unit(depth), invert=True)

    @classmethod
    def shift_map(cls, depth: int, n: int = 1) -> "AffineSolenoidMap":
        return cls(unit(depth), shift_power=n)

    def __call__(self, x: SolenoidPoint) -> SolenoidPoint:
        return apply_affine(self, x)

    def to_record(self) -> AffineMapRecord:
        return AffineMapRecord(tau=self.translation.to_record(), n=self.shift_power, invert=self.invert)

    @classmethod
    def from_record(cls, record: AffineMapRecord) -> "AffineSolenoidMap":
        return cls(SolenoidPoint.from_record(record.tau), record.n, record.invert)


def _align(*points: SolenoidPoint) -> List[SolenoidPoint]:
    depth = min(point.depth for point in points)
    return [truncate(point, depth) for point in points]


def apply_affine(m: AffineSolenoidMap, x: SolenoidPoint) -> SolenoidPoint:
    """tau . shift^n(r(x)); the result has the smaller of the two available depths."""
    y = invert_point(x) if m.invert else x
    y = shift_power(y, m.shift_power)
    tau, y = _align(m.translation, y)
    return group_mul(tau, y)


def agree(x: SolenoidPoint, y: SolenoidPoint) -> bool:
    """Equality after truncating both points to the smaller depth."""
    x, y = _align(x, y)
    return x == y


def compose_affine(
    m1: AffineSolenoidMap,
    m2: AffineSolenoidMap,
    samples: Optional[Sequence[SolenoidPoint]] = None,
) -> AffineSolenoidMap:
    """Normal form of m1 o m2, checked pointwise on the sample set.

    The translation is recomputed as (m1 o m2)(unit); no group relation between shift and
    inversion is assumed.
    """
    consumed = max(0, -m2.shift_power) + max(0, -m1.shift_power)
    depth = max(m1.translation.depth, m2.translation.depth) + consumed
    translation = m1(m2(unit(depth)))
    normal = AffineSolenoidMap(translation, m1.shift_power + m2.shift_power, m1.invert != m2.invert)
    for x in samples if samples is not None else sample_points(depth):
        if not agree(m1(m2(x)), normal(x)):
            raise SolenoidError(f"normal form {normal} disagrees with the composition at {x}")
    return normal


def maps_agree(m1: AffineSolenoidMap, m2: AffineSolenoidMap, samples: Iterable[SolenoidPoint]) -> bool:
    return all(agree(m1(x), m2(x)) for x in samples)


def sample_points(depth: int, count: Optional[int] = None) -> List[SolenoidPoint]:
    """Deterministic sample set: periodic lifts of period <= 4, rho(1/3), rho(1/5), then
    points with base j/97 and pseudo-random tails until `count` points are collected."""
    count = count if count is not None else settings.sample_point_count
    points = [periodic_point(theta, depth) for n in range(1, 5) for theta in periodic_angles(n)]
    points += [rho(Fraction(1, 3), depth), rho(Fraction(1, 5), depth)]
    seen = set(points)
    j = 0
    while len(points) < count:
        j += 1
        candidate = SolenoidPoint.from_counter(Angle.of(j, 97), j * 2654435761, depth)
        if candidate not in seen:
            seen.add(candidate)
            points.append(candidate)
    return points


@dataclass
class AffineRelationReport:
    """Relations between shift and inversion, as observed on the sample set."""

    depth: int
    samples: int
    inversion_involution: bool
    shift_inversion_commute: bool
    dihedral_relation: bool
    shift_automorphism: bool
    inversion_automorphism: bool
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "samples": self.samples,
            "r^2 = id": self.inversion_involution,
            "r f = f r": self.shift_inversion_commute,
            "r f r = f^-1": self.dihedral_relation,
            "f is an automorphism": self.shift_automorphism,
            "r is an automorphism": self.inversion_automorphism,
        }


def observed_affine_relations(depth: int) -> AffineRelationReport:
    if depth < 2:
        raise SolenoidError("relations need depth at least 2")
    samples = sample_points(depth)
    pairs = list(zip(samples, samples[1:]))
    report = AffineRelationReport(
        depth=depth,
        samples=len(samples),
        inversion_involution=all(invert_point(invert_point(x)) == x for x in samples),
        shift_inversion_commute=all(shift(invert_point(x)) == invert_point(shift(x)) for x in samples),
        dihedral_relation=all(agree(invert_point(shift(invert_point(x))), unshift(x)) for x in samples),
        shift_automorphism=all(shift(group_mul(x, y)) == group_mul(shift(x), shift(y)) for x, y in pairs),
        inversion_automorphism=all(
            invert_point(group_mul(x, y)) == group_mul(invert_point(x), invert_point(y)) for x, y in pairs
        ),
    )
    if report.shift_inversion_commute and not report.dihedral_relation:
        report.notes.append("shift and inversion commute; the automorphisms they generate form an abelian group")
    logger.info(f"affine relations at depth {depth}: {report.as_dict()}")
    return report


def leaf_difference(x: SolenoidPoint, y: SolenoidPoint, search_bound: Union[int, Fraction]) -> Optional[Fraction]:
    """The t of smallest absolute value with x = rho(t) . y, if |t| <= search_bound.

    At depth d, t is only determined modulo 2^d, so the answer is the representative
    nearest to 0.
    """
    x, y = _align(x, y)
    z = group_mul(x, inverse(y))
    modulus = 2**z.depth
    fraction = z.base.value
    low = fraction + z.counter
    high = low - modulus
    t = low if abs(low) <= abs(high) else high
    return t if abs(t) <= search_bound else None


def leaf_compare(x: SolenoidPoint, y: SolenoidPoint, search_bound: Union[int, Fraction]) -> Optional[int]:
    """Leafwise order: 1 if x lies ahead of y along rho, -1 behind, 0 equal, None if undecided."""
    t = leaf_difference(x, y, search_bound)
    if t is None:
        return None
    return (t > 0) - (t < 0)


def same_leaf_periodic(theta1: Angle, theta2: Angle, atlas: Atlas) -> bool:
    """Whether the periodic lifts of two periodic angles share a leaf, read off the atlas portraits."""
    for theta in (theta1, theta2):
        if not is_periodic(theta):
            raise SolenoidError(f"{theta} is not periodic")
        if exact_period(theta) > atlas.max_period:
            raise AtlasError(f"{theta} has period {exact_period(theta)}, beyond the atlas bound {atlas.max_period}")
    if theta1 == theta2:
        return True
    for component in atlas:
        group = component.portrait.class_of(theta1)
        if group is not None and theta2 in group:
            return True
    return False
