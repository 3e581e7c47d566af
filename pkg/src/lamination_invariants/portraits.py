"""Formal orbit portraits under angle doubling.

A portrait is a cyclically ordered family of angle classes A_1..A_p that doubling
permutes. Validity is checked against four axioms: a common exact ray period,
doubling carrying A_i bijectively onto A_{i+1}, cyclic order preserved inside each
class, and pairwise unlinked classes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from loguru import logger
from sympy import divisors

from .angles import (
    HALF,
    Angle,
    DirectedArc,
    chords_cross,
    complementary_arcs,
    exact_period,
    is_periodic,
    orbit,
    periodic_angles,
)
from .config import settings
from .exceptions import NotRealizableError, PortraitError


class PortraitKind(str, Enum):
    """Kind of a portrait, a function of (point period, valence, ray period)."""
    TRIVIAL = "trivial"
    SATELLITE = "satellite"
    PRIMITIVE = "primitive"


class ViolationKind(str, Enum):
    STRUCTURE = "structure"
    PERIOD = "period_mismatch"
    BIJECTION = "non_bijective_doubling"
    CYCLIC_ORDER = "cyclic_order_breach"
    LINKED = "linked_classes"


class HalvingBranch(str, Enum):
    """SHIFTED_START is (t1/2 + 1/2 -> t2/2), SHIFTED_END is (t1/2 -> t2/2 + 1/2)."""

    SHIFTED_START = "shifted_start"
    SHIFTED_END = "shifted_end"


_BRANCH_BITS = {HalvingBranch.SHIFTED_START: (1, 0), HalvingBranch.SHIFTED_END: (0, 1)}


@dataclass(frozen=True)
class PortraitViolation:
    kind: ViolationKind
    detail: str


@dataclass(frozen=True)
class OrbitPortrait:
    """Angle classes in forward-orbit order; each class is kept sorted."""

    classes: Tuple[Tuple[Angle, ...], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[Angle]]) -> "OrbitPortrait":
        return cls(tuple(tuple(sorted(set(group))) for group in classes))

    @classmethod
    def parse(cls, classes: Iterable[Iterable[str]]) -> "OrbitPortrait":
        return cls.from_classes([Angle.parse(text) for text in group] for group in classes)

    @property
    def point_period(self) -> int:
        return len(self.classes)

    @property
    def valence(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    @property
    def ray_period(self) -> int:
        return exact_period(self.classes[0][0])

    @property
    def kind(self) -> PortraitKind:
        return portrait_kind(self.point_period, self.valence, self.ray_period)

    def angles(self) -> List[Angle]:
        return [theta for group in self.classes for theta in group]

    def as_sets(self) -> FrozenSet[FrozenSet[Angle]]:
        """Set-of-sets view; two portraits are equal when these agree."""
        return frozenset(frozenset(group) for group in self.classes)

    def class_of(self, theta: Angle) -> Optional[Tuple[Angle, ...]]:
        for group in self.classes:
            if theta in group:
                return group
        return None

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(str(theta) for theta in group) + "}" for group in self.classes)
        return "{" + inner + "}"


def portrait_kind(point_period: int, valence: int, ray_period: int) -> PortraitKind:
    if valence == 1:
        return PortraitKind.TRIVIAL
    if valence > 1 and ray_period == point_period * valence:
        return PortraitKind.SATELLITE
    if valence == 2 and ray_period == point_period:
        return PortraitKind.PRIMITIVE
    raise PortraitError(
        f"no portrait kind for point period {point_period}, valence {valence}, ray period {ray_period}"
    )


def _doubled(group: Iterable[Angle]) -> FrozenSet[Angle]:
    return frozenset(theta.double() for theta in group)


def _preserves_cyclic_order(group: Sequence[Angle]) -> bool:
    images = [theta.double() for theta in sorted(group)]
    start = images.index(min(images))
    rotated = images[start:] + images[:start]
    return all(a < b for a, b in zip(rotated, rotated[1:]))


def validate_portrait(candidate: OrbitPortrait) -> List[PortraitViolation]:
    """Every violated axiom of the candidate; an empty list means it is a valid portrait."""
    violations: List[PortraitViolation] = []
    classes = candidate.classes
    if not classes or any(not group for group in classes):
        return [PortraitViolation(ViolationKind.STRUCTURE, "portrait has an empty class")]

    seen: Dict[Angle, int] = {}
    for index, group in enumerate(classes):
        for theta in group:
            if theta in seen:
                violations.append(PortraitViolation(
                    ViolationKind.STRUCTURE, f"{theta} lies in classes {seen[theta] + 1} and {index + 1}"
                ))
            seen[theta] = index

    periods = {exact_period(theta) if is_periodic(theta) else None for theta in seen}
    if None in periods:
        violations.append(PortraitViolation(ViolationKind.PERIOD, "class contains a non-periodic angle"))
    elif len(periods) > 1:
        violations.append(PortraitViolation(
            ViolationKind.PERIOD, f"angles have different exact periods {sorted(periods)}"
        ))

    p = len(classes)
    for index, group in enumerate(classes):
        target = classes[(index + 1) % p]
        image = _doubled(group)
        if len(image) != len(group) or image != frozenset(target):
            violations.append(PortraitViolation(
                ViolationKind.BIJECTION,
                f"doubling does not map class {index + 1} onto class {(index + 1) % p + 1}",
            ))
        if len(group) > 2 and not _preserves_cyclic_order(group):
            violations.append(PortraitViolation(
                ViolationKind.CYCLIC_ORDER, f"doubling breaks the cyclic order of class {index + 1}"
            ))

    for (i, first), (j, second) in combinations(enumerate(classes), 2):
        if set(first) & set(second):
            continue
        for chord in combinations(first, 2):
            if any(chords_cross(chord, other) for other in combinations(second, 2)):
                violations.append(PortraitViolation(
                    ViolationKind.LINKED, f"classes {i + 1} and {j + 1} are linked"
                ))
                break
    return violations


def is_valid(candidate: OrbitPortrait) -> bool:
    return not validate_portrait(candidate)


def _all_arcs(portrait: OrbitPortrait) -> List[DirectedArc]:
    if portrait.valence < 2:
        raise PortraitError(f"portrait {portrait} has valence 1 and no complementary arcs of interest")
    return [arc for group in portrait.classes for arc in complementary_arcs(group)]


def characteristic_arc(portrait: OrbitPortrait) -> DirectedArc:
    """The strictly shortest complementary arc over all classes."""
    arcs = _all_arcs(portrait)
    shortest = min(arc.length for arc in arcs)
    winners = [arc for arc in arcs if arc.length == shortest]
    if len(winners) != 1:
        raise PortraitError(f"portrait {portrait} has {len(winners)} shortest complementary arcs")
    return winners[0]


def critical_arc(portrait: OrbitPortrait) -> DirectedArc:
    """The long arc of the class that doubles onto the class of the characteristic arc."""
    characteristic = characteristic_arc(portrait)
    first = frozenset(portrait.class_of(characteristic.start))
    preimage = [group for group in portrait.classes if _doubled(group) == first]
    if len(preimage) != 1:
        raise PortraitError(f"portrait {portrait} has no unique preimage class of its characteristic class")
    long_arcs = [arc for arc in complementary_arcs(preimage[0]) if arc.length > HALF.value]
    if len(long_arcs) != 1:
        raise PortraitError(f"portrait {portrait} has {len(long_arcs)} long arcs in the critical class")
    arc = long_arcs[0]
    if (arc.start.double(), arc.end.double()) != (characteristic.start, characteristic.end):
        raise PortraitError(f"critical arc {arc} does not double onto the characteristic arc {characteristic}")
    return arc


def halving_branch(portrait: OrbitPortrait) -> HalvingBranch:
    """Which pair of half-angles of the characteristic arc bounds the critical arc."""
    characteristic = characteristic_arc(portrait)
    arc = critical_arc(portrait)
    for branch, (start_bit, end_bit) in _BRANCH_BITS.items():
        if arc == DirectedArc(characteristic.start.halve(start_bit), characteristic.end.halve(end_bit)):
            return branch
    raise PortraitError(f"critical arc {arc} is not bounded by half-angles of {characteristic}")


def _forward_order(portrait: OrbitPortrait, first: Tuple[Angle, ...]) -> Tuple[Tuple[Angle, ...], ...]:
    by_set = {frozenset(group): group for group in portrait.classes}
    ordered = [first]
    current = first
    for _ in range(len(portrait.classes) - 1):
        current = by_set.get(_doubled(current))
        if current is None:
            raise PortraitError(f"doubling does not permute the classes of {portrait}")
        ordered.append(current)
    return tuple(ordered)


def canonical_form(portrait: OrbitPortrait) -> OrbitPortrait:
    """Classes in forward-orbit order starting at the class holding the characteristic arc."""
    portrait = OrbitPortrait.from_classes(portrait.classes)
    if portrait.valence >= 2:
        first = portrait.class_of(characteristic_arc(portrait).start)
    else:
        first = portrait.class_of(min(portrait.angles()))
    return OrbitPortrait(_forward_order(portrait, first))


def _closure(seeds: Iterable[Angle], step: int) -> FrozenSet[Angle]:
    found = set(seeds)
    frontier = list(found)
    while frontier:
        theta = frontier.pop()
        image = theta
        for _ in range(step):
            image = image.double()
        if image not in found:
            found.add(image)
            frontier.append(image)
    return frozenset(found)


def _classes_from(first: FrozenSet[Angle], limit: int) -> Optional[List[FrozenSet[Angle]]]:
    """Forward images of a candidate first class, or None if they fail to form a cycle of classes."""
    classes = [first]
    used = set(first)
    current = first
    for _ in range(limit):
        current = _doubled(current)
        if len(current) != len(first):
            return None
        if current == first:
            return classes
        if current & used:
            return None
        classes.append(current)
        used |= current
    return None


def _check_pair(theta1: Angle, theta2: Angle) -> int:
    if theta1 == theta2:
        raise NotRealizableError(theta1, theta2, "angles coincide")
    if not (is_periodic(theta1) and is_periodic(theta2)):
        raise NotRealizableError(theta1, theta2, "angles must be periodic")
    n = exact_period(theta1)
    if exact_period(theta2) != n:
        raise NotRealizableError(theta1, theta2, "angles have different exact periods")
    if DirectedArc(theta1, theta2).length >= HALF.value:
        raise NotRealizableError(theta1, theta2, "arc is not shorter than its reverse")
    return n


def _orbit_set(theta: Angle) -> FrozenSet[Angle]:
    _, cycle = orbit(theta)
    return frozenset(cycle)


def realize_portrait(
    theta1: Angle,
    theta2: Angle,
    orbits: Optional[Dict[Angle, FrozenSet[Angle]]] = None,
) -> OrbitPortrait:
    """The unique valid portrait whose characteristic arc is (theta1 -> theta2).

    For each divisor p of the ray period, the first class is the closure of
    {theta1, theta2} under the p-th iterate of doubling; the first p that yields a
    valid portrait with the requested characteristic arc wins.
    """
    n = _check_pair(theta1, theta2)
    orbit1 = orbits[theta1] if orbits is not None else _orbit_set(theta1)
    orbit2 = orbits[theta2] if orbits is not None else _orbit_set(theta2)
    arc = DirectedArc(theta1, theta2)
    # the characteristic arc contains no angle of the portrait
    if any(arc.contains(theta) for theta in orbit1 | orbit2):
        raise NotRealizableError(theta1, theta2, "an orbit point lies inside the arc")

    for p in divisors(n):
        classes = _classes_from(_closure((theta1, theta2), p), n)
        if classes is None or len(classes) != p:
            continue
        candidate = OrbitPortrait.from_classes(classes)
        if validate_portrait(candidate):
            continue
        try:
            if characteristic_arc(candidate) != arc:
                continue
        except PortraitError:
            continue
        return canonical_form(candidate)
    raise NotRealizableError(theta1, theta2)


def realize_portrait_exhaustive(theta1: Angle, theta2: Angle, limit: Optional[int] = None) -> OrbitPortrait:
    """Reference realization: try every subset of the two orbits as the first class."""
    n = _check_pair(theta1, theta2)
    limit = limit if limit is not None else settings.exhaustive_realization_limit
    if n > limit:
        raise PortraitError(f"exhaustive realization is limited to ray period {limit}, got {n}")
    union = _orbit_set(theta1) | _orbit_set(theta2)
    others = sorted(union - {theta1, theta2})
    arc = DirectedArc(theta1, theta2)
    found = []
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            classes = _classes_from(frozenset((theta1, theta2, *extra)), len(union))
            if classes is None or frozenset().union(*classes) != union:
                continue
            candidate = OrbitPortrait.from_classes(classes)
            if validate_portrait(candidate):
                continue
            try:
                if characteristic_arc(candidate) == arc:
                    found.append(candidate)
            except PortraitError:
                continue
    if not found:
        raise NotRealizableError(theta1, theta2)
    if len(found) > 1:
        raise PortraitError(f"({theta1}, {theta2}) is realized by {len(found)} groupings")
    return canonical_form(found[0])


def rotation_number(portrait: OrbitPortrait) -> Fraction:
    """Cyclic shift of the first return map on A_1, as a reduced fraction s/v."""
    if portrait.kind is not PortraitKind.SATELLITE:
        raise PortraitError(f"rotation number is defined for satellite portraits, {portrait} is {portrait.kind.value}")
    first = sorted(portrait.classes[0])
    v = len(first)

    def first_return(theta: Angle) -> Angle:
        for _ in range(portrait.point_period):
            theta = theta.double()
        return theta

    shift = first.index(first_return(first[0]))
    for index, theta in enumerate(first):
        if first_return(theta) != first[(index + shift) % v]:
            raise PortraitError(f"first return map of {portrait} is not a rotation")
    return Fraction(shift, v)


def rotate_portrait(portrait: OrbitPortrait, theta: Angle) -> OrbitPortrait:
    """Add theta to every angle; the result is only a candidate portrait."""
    return OrbitPortrait.from_classes([angle + theta for angle in group] for group in portrait.classes)


def enumerate_portraits(max_ray_period: int) -> List[OrbitPortrait]:
    """Every valid nontrivial portrait with ray period at most max_ray_period."""
    portraits = []
    for n in range(2, max_ray_period + 1):
        angles = periodic_angles(n)
        orbits = {theta: _orbit_set(theta) for theta in angles}
        for i, theta1 in enumerate(angles):
            for theta2 in angles[i + 1:] + angles[:i]:
                if DirectedArc(theta1, theta2).length >= HALF.value:
                    break
                try:
                    portraits.append(realize_portrait(theta1, theta2, orbits))
                except NotRealizableError:
                    continue
        logger.debug(f"ray period {n}: {len(portraits)} portraits so far")
    return portraits


def _rotation_signature(portrait: OrbitPortrait) -> Tuple:
    lengths = sorted(
        tuple(sorted(arc.length for arc in complementary_arcs(group))) for group in portrait.classes
    )
    return portrait.point_period, portrait.valence, tuple(lengths)


@dataclass(frozen=True)
class RotationCounterexample:
    first: OrbitPortrait
    second: OrbitPortrait
    rotation: Angle


@dataclass
class RigidityReport:
    max_ray_period: int
    portraits: int = 0
    pairs_checked: int = 0
    rotations_tested: int = 0
    counterexamples: List[RotationCounterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def rigidity_sweep(max_ray_period: int, portraits: Optional[List[OrbitPortrait]] = None) -> RigidityReport:
    """Check that no rotation carries one valid nontrivial portrait onto another (or itself, nontrivially).

    Rotations preserve arc lengths, so only portraits with equal length signatures
    are compared; for each such pair every rotation sending an angle of the first
    onto the smallest angle of the second is tested.
    """
    if max_ray_period < 2:
        raise ValueError("max_ray_period must be at least 2")
    if portraits is None:
        portraits = enumerate_portraits(max_ray_period)
    report = RigidityReport(max_ray_period=max_ray_period, portraits=len(portraits))
    buckets: Dict[Tuple, List[OrbitPortrait]] = defaultdict(list)
    for portrait in portraits:
        buckets[_rotation_signature(portrait)].append(portrait)

    for bucket in buckets.values():
        for first in bucket:
            first_sets = first.as_sets()
            for second in bucket:
                report.pairs_checked += 1
                second_sets = second.as_sets()
                anchor = min(second.angles())
                for angle in first.angles():
                    rotation = anchor - angle
                    report.rotations_tested += 1
                    if rotate_portrait(first, rotation).as_sets() != second_sets:
                        continue
                    if first_sets != second_sets or rotation != Angle(0, 1):
                        report.counterexamples.append(RotationCounterexample(first, second, rotation))
    logger.info(
        f"rigidity sweep to ray period {max_ray_period}: {report.portraits} portraits, "
        f"{report.pairs_checked} pairs, {len(report.counterexamples)} counterexamples"
    )
    return report
