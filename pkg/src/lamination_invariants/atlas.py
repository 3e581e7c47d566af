"""Atlas of hyperbolic components as root-angle pairs, with wakes and internal addresses."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger
from pydantic import ValidationError

from .angles import (
    ZERO,
    Angle,
    DirectedArc,
    binary_block,
    chords_cross,
    exact_period,
    from_binary_block,
    is_periodic,
    kneading_sequence,
    orbit,
    periodic_angles,
)
from .config import settings
from .exceptions import AngleError, AtlasError, NotRealizableError
from .portraits import (
    OrbitPortrait,
    PortraitKind,
    characteristic_arc,
    realize_portrait,
    rotation_number,
)
from .schemas import AddressEntryRecord, AtlasHeader, ComponentRecord

RootPair = Tuple[Angle, Angle]


class ComponentKind(str, Enum):
    MAIN_CARDIOID = "main_cardioid"
    PRIMITIVE = "primitive"
    SATELLITE = "satellite"


@dataclass(frozen=True)
class AddressEntry:
    period: int
    label: Optional[Fraction] = None

    def __str__(self) -> str:
        return str(self.period)


@dataclass(frozen=True)
class LabelledAddress:
    """Internal address whose arrows may carry rotation-number labels."""

    entries: Tuple[AddressEntry, ...]

    def __post_init__(self):
        periods = self.periods
        if not periods or periods[0] != 1:
            raise AtlasError(f"internal address {periods} must start at 1")
        if any(a >= b for a, b in zip(periods, periods[1:])):
            raise AtlasError(f"internal address {periods} must increase strictly")

    @classmethod
    def unlabelled(cls, periods: Sequence[int]) -> "LabelledAddress":
        return cls(tuple(AddressEntry(period) for period in periods))

    @property
    def periods(self) -> List[int]:
        return [entry.period for entry in self.entries]

    @property
    def labels(self) -> List[Optional[Fraction]]:
        return [entry.label for entry in self.entries]

    def __str__(self) -> str:
        parts = [str(self.entries[0].period)]
        for entry in self.entries[1:]:
            arrow = f"->({entry.label})" if entry.label is not None else "->"
            parts.append(f"{arrow} {entry.period}")
        return " ".join(parts)


@dataclass(frozen=True)
class HyperbolicComponent:
    """A hyperbolic component named by its root angles (theta1 -> theta2)."""

    period: int
    root_pair: RootPair
    kind: ComponentKind
    rotation: Optional[Fraction]
    address: LabelledAddress
    portrait: OrbitPortrait

    @property
    def is_main_cardioid(self) -> bool:
        return self.kind is ComponentKind.MAIN_CARDIOID

    def wake(self) -> DirectedArc:
        if self.is_main_cardioid:
            raise AtlasError("the main cardioid has no wake")
        return DirectedArc(*self.root_pair)

    def wake_contains(self, theta: Angle, closed: bool = False) -> bool:
        """Containment in the wake; wakes never contain angle 0, so plain comparison suffices."""
        if self.is_main_cardioid:
            return False
        low, high = self.root_pair
        if closed:
            return low <= theta <= high
        return low < theta < high

    def __str__(self) -> str:
        if self.is_main_cardioid:
            return "main cardioid"
        return f"period {self.period} ({self.root_pair[0]}, {self.root_pair[1]})"

    def to_record(self) -> ComponentRecord:
        return ComponentRecord(
            period=self.period,
            root_pair=[str(theta) for theta in self.root_pair],
            kind=self.kind.value,
            rotation=str(self.rotation) if self.rotation is not None else None,
            address=[
                AddressEntryRecord(period=entry.period, label=str(entry.label) if entry.label is not None else None)
                for entry in self.address.entries
            ],
            portrait=[[str(theta) for theta in group] for group in self.portrait.classes],
        )

    @classmethod
    def from_record(cls, record: ComponentRecord) -> "HyperbolicComponent":
        return cls(
            period=record.period,
            root_pair=(Angle.parse(record.root_pair[0]), Angle.parse(record.root_pair[1])),
            kind=ComponentKind(record.kind),
            rotation=Fraction(record.rotation) if record.rotation is not None else None,
            address=LabelledAddress(tuple(
                AddressEntry(entry.period, Fraction(entry.label) if entry.label is not None else None)
                for entry in record.address
            )),
            portrait=OrbitPortrait(tuple(tuple(Angle.parse(text) for text in group) for group in record.portrait)),
        )


MAIN_CARDIOID = HyperbolicComponent(
    period=1,
    root_pair=(ZERO, ZERO),
    kind=ComponentKind.MAIN_CARDIOID,
    rotation=None,
    address=LabelledAddress.unlabelled([1]),
    portrait=OrbitPortrait(((ZERO,),)),
)


def enumerate_periodic_angles(n: int) -> List[Angle]:
    return periodic_angles(n)


def pair_root_angles(max_period: int) -> Dict[int, List[RootPair]]:
    """Lavaurs pairing: for increasing periods, join the smallest free angle to the next free
    angle counterclockwise whose chord crosses no chord drawn so far."""
    if max_period < 1:
        raise AtlasError("max_period must be at least 1")
    chords: List[RootPair] = []
    pairs: Dict[int, List[RootPair]] = {1: []}
    for n in range(2, max_period + 1):
        free = periodic_angles(n)
        period_pairs = []
        while free:
            first = free[0]
            partner = next(
                (candidate for candidate in free[1:]
                 if not any(chords_cross((first, candidate), chord) for chord in chords)),
                None,
            )
            if partner is None:
                raise AtlasError(f"no admissible partner for {first} at period {n}")
            chords.append((first, partner))
            period_pairs.append((first, partner))
            free = [theta for theta in free if theta not in (first, partner)]
        pairs[n] = period_pairs
        logger.debug(f"period {n}: {len(period_pairs)} root pairs")
    return pairs


def _differs(a: str, b: str) -> bool:
    # the star differs from both binary symbols; two stars never meet below the period
    return a != b


def internal_address(theta: Angle, horizon: int = 64) -> List[int]:
    """Internal address of theta read off its kneading sequence.

    S_0 = 1 and S_{k+1} = min{j > S_k : nu_j != nu_{j - S_k}}. For a periodic angle the
    address ends at its exact period. For a preperiodic angle the address is infinite in
    general and is cut at `horizon`, or ends where the minimum does not exist.
    """
    if theta == ZERO:
        raise AngleError("angle 0 has the trivial address [1]")
    nu = kneading_sequence(theta)
    address = [1]
    if is_periodic(theta):
        n = nu.period
        while address[-1] < n:
            r = address[-1]
            address.append(next(j for j in range(r + 1, n + 1) if _differs(nu.symbol(j), nu.symbol(j - r))))
        return address

    reach = nu.preperiod + nu.period
    while address[-1] < horizon:
        r = address[-1]
        # past r + preperiod both symbols are periodic, so one full period settles the question
        step = next((j for j in range(r + 1, r + reach + 1) if _differs(nu.symbol(j), nu.symbol(j - r))), None)
        if step is None or step > horizon:
            break
        address.append(step)
    return address


@lru_cache(maxsize=None)
def bulb_root_pair(p: int, q: int) -> RootPair:
    """Root angles of the p/q bulb of the main cardioid."""
    if not 0 < p < q or Fraction(p, q).denominator != q:
        raise AtlasError(f"{p}/{q} is not a reduced rotation number")
    digits = "".join("1" if (j * p) % q >= q - p else "0" for j in range(q))
    _, cycle = orbit(from_binary_block(digits))
    arc = characteristic_arc(OrbitPortrait.from_classes([cycle]))
    return arc.start, arc.end


def tune(outer: RootPair, inner: RootPair, outer_period: int) -> RootPair:
    """Substitute the binary blocks of the outer root angles for the digits of the inner ones."""
    if outer_period == 1:
        return inner
    low, high = binary_block(outer[0]), binary_block(outer[1])
    if len(low) != outer_period or len(high) != outer_period:
        raise AtlasError(f"root angles {outer} do not have exact period {outer_period}")

    def substitute(theta: Angle) -> Angle:
        return from_binary_block("".join(high if bit == "1" else low for bit in binary_block(theta)))

    return substitute(inner[0]), substitute(inner[1])


def satellite_root_pair(component: HyperbolicComponent, rotation: Fraction) -> RootPair:
    """Root angles of the satellite attached to `component` at internal angle `rotation`."""
    inner = bulb_root_pair(rotation.numerator, rotation.denominator)
    return tune(component.root_pair, inner, component.period)


def visible(h1: HyperbolicComponent, h2: HyperbolicComponent) -> bool:
    """Whether h2 lies in the wake of h1."""
    if h1.is_main_cardioid:
        raise AtlasError("visibility is measured from a component other than the main cardioid")
    if h1 == h2:
        raise AtlasError("visibility compares two distinct components")
    return all(h1.wake_contains(theta) for theta in h2.root_pair)


def wake(component: HyperbolicComponent) -> DirectedArc:
    return component.wake()


def _build_component(n: int, pair: RootPair) -> HyperbolicComponent:
    try:
        portrait = realize_portrait(*pair)
    except NotRealizableError as exc:
        raise AtlasError(f"Lavaurs pair ({pair[0]}, {pair[1]}) is not a root pair: {exc}") from exc
    kind = ComponentKind(portrait.kind.value)
    rotation = rotation_number(portrait) if portrait.kind is PortraitKind.SATELLITE else None
    expected_point_period = n // portrait.valence if rotation is not None else n
    if portrait.point_period != expected_point_period:
        raise AtlasError(f"portrait of ({pair[0]}, {pair[1]}) has point period {portrait.point_period}")
    return HyperbolicComponent(n, pair, kind, rotation, LabelledAddress.unlabelled([1]), portrait)


class Atlas:
    """Hyperbolic components up to a period bound, indexed by root angle."""

    def __init__(self, max_period: int, components: Iterable[HyperbolicComponent]):
        self.max_period = max_period
        self.components: Tuple[HyperbolicComponent, ...] = tuple(
            sorted(components, key=lambda c: (c.period, c.root_pair[0]))
        )
        self._by_angle: Dict[Angle, HyperbolicComponent] = {}
        for component in self.components:
            for theta in component.root_pair:
                self._by_angle[theta] = component

    @classmethod
    def build(cls, max_period: int) -> "Atlas":
        if max_period < 1:
            raise AtlasError("max_period must be at least 1")
        logger.info(f"Building atlas up to period {max_period}")
        bare = [MAIN_CARDIOID]
        for n, pairs in pair_root_angles(max_period).items():
            bare.extend(_build_component(n, pair) for pair in pairs)
        draft = cls(max_period, bare)
        atlas = cls(max_period, [
            replace(component, address=labelled_internal_address(component, draft))
            for component in draft.components
        ])
        logger.info(f"Built atlas with {len(atlas)} components: {atlas.counts_per_period()}")
        return atlas

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __contains__(self, component: HyperbolicComponent) -> bool:
        return self._by_angle.get(component.root_pair[0]) == component

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Atlas):
            return NotImplemented
        return self.max_period == other.max_period and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.max_period, self.components))

    @property
    def main_cardioid(self) -> HyperbolicComponent:
        return self.components[0]

    def counts_per_period(self) -> Dict[int, int]:
        counts = {n: 0 for n in range(1, self.max_period + 1)}
        for component in self.components:
            counts[component.period] += 1
        return counts

    def of_period(self, n: int) -> List[HyperbolicComponent]:
        return [component for component in self.components if component.period == n]

    def ancestors(self, component: HyperbolicComponent) -> List[HyperbolicComponent]:
        """Components other than the main cardioid whose closed wake holds the root pair, itself included."""
        self._require(component)
        if component.is_main_cardioid:
            return []
        return [
            other for other in self.components
            if other == component or all(other.wake_contains(theta) for theta in component.root_pair)
        ]

    def combinatorial_arc(self, component: HyperbolicComponent) -> List[HyperbolicComponent]:
        """Main cardioid followed by the lowest-period component at each step towards `component`."""
        self._require(component)
        chain = [self.main_cardioid]
        if component.is_main_cardioid:
            return chain
        candidates = self.ancestors(component)
        while chain[-1] != component:
            current = chain[-1]
            inside = [
                other for other in candidates
                if other.period > current.period
                and (current.is_main_cardioid or visible(current, other))
            ]
            lowest = min(other.period for other in inside)
            winners = [other for other in inside if other.period == lowest]
            if len(winners) != 1:
                raise AtlasError(f"{len(winners)} components of period {lowest} compete on the arc to {component}")
            chain.append(winners[0])

        expected = internal_address(component.root_pair[0])
        if [step.period for step in chain] != expected:
            raise AtlasError(
                f"combinatorial arc periods {[step.period for step in chain]} of {component} "
                f"disagree with the kneading address {expected}"
            )
        return chain

    def limb_of(self, parent: HyperbolicComponent, child: HyperbolicComponent) -> Fraction:
        """Internal angle p/q of the limb of `parent` that contains `child`."""
        for q in range(2, child.period + 2):
            for p in range(1, q):
                rotation = Fraction(p, q)
                if rotation.denominator != q:
                    continue
                limb = DirectedArc(*satellite_root_pair(parent, rotation))
                if all(limb.contains(theta, closed=True) for theta in child.root_pair):
                    return rotation
        raise AtlasError(f"{child} lies in no limb of {parent}")

    def query_by_angle(self, theta: Angle, enclosing: bool = False) -> HyperbolicComponent:
        """The component with root angle theta, or with `enclosing` the innermost wake holding theta."""
        if enclosing:
            holders = [c for c in self.components if c.wake_contains(theta, closed=True)]
            if not holders:
                return self.main_cardioid
            return min(holders, key=lambda c: c.wake().length)
        if theta in self._by_angle:
            return self._by_angle[theta]
        if is_periodic(theta) and exact_period(theta) > self.max_period:
            raise AtlasError(f"{theta} has period {exact_period(theta)}, beyond the atlas bound {self.max_period}")
        raise AtlasError(f"no component has root angle {theta}")

    def query_by_address(self, address: Union[LabelledAddress, Sequence[int]]) -> List[HyperbolicComponent]:
        """Every component with this address; a plain period list ignores labels."""
        if isinstance(address, LabelledAddress):
            matches = [c for c in self.components if c.address == address]
        else:
            periods = list(address)
            if periods and periods[-1] > self.max_period:
                raise AtlasError(f"address {periods} ends beyond the atlas bound {self.max_period}")
            matches = [c for c in self.components if c.address.periods == periods]
        if not matches:
            raise AtlasError(f"no component has internal address {address}")
        return matches

    def _require(self, component: HyperbolicComponent):
        if component not in self:
            raise AtlasError(f"{component} is not in the atlas")

    def save(self, path: Union[str, Path]) -> Path:
        """Write the atlas as newline-delimited JSON: a header line, then one line per component."""
        path = Path(path)
        header = AtlasHeader(max_period=self.max_period, component_count=len(self.components))
        lines = [header.model_dump_json()]
        lines.extend(component.to_record().model_dump_json() for component in self.components)
        try:
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            logger.error(f"Error writing atlas to {path}: {str(e)}")
            raise AtlasError(f"cannot write atlas to {path}: {e}") from e
        logger.info(f"Saved atlas with {len(self.components)} components to {path}")
        return path

    @classmethod
    def load(cls, path: Union[str, Path, None] = None) -> "Atlas":
        path = Path(path or settings.lamination_atlas_path)
        try:
            lines = [line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
        except OSError as e:
            logger.error(f"Error reading atlas from {path}: {str(e)}")
            raise AtlasError(f"cannot read atlas from {path}: {e}") from e
        if not lines:
            raise AtlasError(f"atlas file {path} is empty")
        try:
            header = AtlasHeader.model_validate_json(lines[0])
            records = [ComponentRecord.model_validate_json(line) for line in lines[1:]]
            components = [HyperbolicComponent.from_record(record) for record in records]
        except (ValidationError, ValueError) as e:
            raise AtlasError(f"malformed atlas file {path}: {e}") from e
        if header.format_version != settings.atlas_format_version:
            raise AtlasError(f"atlas format version {header.format_version} is not supported")
        if header.component_count != len(components):
            raise AtlasError(f"atlas header announces {header.component_count} components, found {len(components)}")
        logger.info(f"Loaded atlas with {len(components)} components from {path}")
        return cls(header.max_period, components)


def labelled_internal_address(component: HyperbolicComponent, atlas: Atlas) -> LabelledAddress:
    """Internal address with each arrow labelled by the rotation number it turns through.

    Arrows into satellite entries carry the rotation number of that entry's root
    portrait. Arrows into primitive entries carry the limb p/q of the previous entry
    when q > 2.
    """
    chain = atlas.combinatorial_arc(component)
    entries = [AddressEntry(1)]
    for previous, step in zip(chain, chain[1:]):
        if step.kind is ComponentKind.SATELLITE:
            label = step.rotation
        else:
            limb = atlas.limb_of(previous, step)
            label = limb if limb.denominator > 2 else None
        entries.append(AddressEntry(step.period, label))
    return LabelledAddress(tuple(entries))


def atlas_build(max_period: int) -> Atlas:
    return Atlas.build(max_period)


def atlas_save(atlas: Atlas, path: Union[str, Path]) -> Path:
    return atlas.save(path)


def atlas_load(path: Union[str, Path, None] = None) -> Atlas:
    return Atlas.load(path)


__all__ = [
    "AddressEntry",
    "Atlas",
    "ComponentKind",
    "HyperbolicComponent",
    "LabelledAddress",
    "MAIN_CARDIOID",
    "atlas_build",
    "atlas_load",
    "atlas_save",
    "bulb_root_pair",
    "enumerate_periodic_angles",
    "internal_address",
    "labelled_internal_address",
    "pair_root_angles",
    "satellite_root_pair",
    "tune",
    "visible",
    "wake",
]
