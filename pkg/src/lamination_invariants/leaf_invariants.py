"""Invariants of regular leaf spaces: unbounded Fatou component counts per periodic leaf
cycle, LU profiles, irregular points and the invariant bundle that separates parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from .angles import ZERO, Angle, periodic_angles
from .atlas import AddressEntry, Atlas, ComponentKind, HyperbolicComponent, LabelledAddress
from .exceptions import AtlasError, LeafInvariantError
from .portraits import OrbitPortrait, PortraitKind, canonical_form
from .schemas import AddressEntryRecord, BundleRecord, DiscrepancyRecord, LeafCycleEntry


class RecordSource(str, Enum):
    ADDRESS_RULE = "address_rule"
    PORTRAIT_RULE = "portrait_rule"


@dataclass(frozen=True)
class LeafCycleRecord:
    """A cycle of `leaf_count` periodic leaves, each with `unbounded_count` unbounded Fatou components."""

    point_period: int
    leaf_count: int
    unbounded_count: int
    source: RecordSource

    def __post_init__(self):
        if self.unbounded_count < 1:
            raise LeafInvariantError(f"unbounded count must be positive, got {self.unbounded_count}")

    def counts(self) -> Tuple[int, int]:
        """The comparable part of a record: (leaf_count, unbounded_count)."""
        return self.leaf_count, self.unbounded_count

    def to_entry(self) -> LeafCycleEntry:
        return LeafCycleEntry(
            point_period=self.point_period,
            leaf_count=self.leaf_count,
            unbounded_count=self.unbounded_count,
            source=self.source.value,
        )


def unbounded_count(portrait: OrbitPortrait, is_dynamic_root: bool, kind: PortraitKind) -> int:
    """Number of unbounded Fatou components in a leaf through a point of the portrait's cycle."""
    v = portrait.valence
    if not is_dynamic_root:
        return v
    if kind is PortraitKind.SATELLITE:
        return 2 * v
    if kind is PortraitKind.PRIMITIVE:
        return 3
    raise LeafInvariantError(f"a {kind.value} portrait cannot carry the dynamic root")


def beta_leaf_record() -> LeafCycleRecord:
    """The leaf through the lift of the beta fixed point, landing point of the single ray 0."""
    beta = OrbitPortrait(((ZERO,),))
    return LeafCycleRecord(1, 1, unbounded_count(beta, False, PortraitKind.TRIVIAL), RecordSource.PORTRAIT_RULE)


def _periods(address: Union[LabelledAddress, Sequence[int]]) -> List[int]:
    periods = address.periods if isinstance(address, LabelledAddress) else list(address)
    if not periods or periods[0] != 1 or any(a >= b for a, b in zip(periods, periods[1:])):
        raise LeafInvariantError(f"{periods} is not an internal address")
    return periods


def lu_profile_from_address(address: Union[LabelledAddress, Sequence[int]]) -> List[LeafCycleRecord]:
    """One record per arrow n_{j-1} -> n_j: n_j leaves with n_j/n_{j-1} unbounded components
    when the periods divide (doubled at the last arrow), else 2 (3 at the last arrow)."""
    periods = _periods(address)
    last = len(periods) - 1
    records = []
    for j in range(1, len(periods)):
        parent, n = periods[j - 1], periods[j]
        if n % parent == 0:
            count = n // parent if j < last else 2 * n // parent
        else:
            count = 2 if j < last else 3
        records.append(LeafCycleRecord(n, n, count, RecordSource.ADDRESS_RULE))
    return records


def lu_profile_from_portraits(component: HyperbolicComponent, atlas: Atlas) -> List[LeafCycleRecord]:
    """One record per step of the combinatorial arc, read from that step's root portrait."""
    chain = atlas.combinatorial_arc(component)[1:]
    records = []
    for index, step in enumerate(chain):
        portrait = step.portrait
        is_root = index == len(chain) - 1
        records.append(LeafCycleRecord(
            portrait.point_period,
            portrait.point_period,
            unbounded_count(portrait, is_root, portrait.kind),
            RecordSource.PORTRAIT_RULE,
        ))
    return records


@dataclass(frozen=True)
class LuDiscrepancy:
    component: HyperbolicComponent
    step: int
    period: int
    parent_period: int
    step_kind: ComponentKind
    differing_fields: Tuple[str, ...]
    address_rule: LeafCycleRecord
    portrait_rule: LeafCycleRecord

    @property
    def classification(self) -> str:
        """satellite_leaf_count when only the leaf count differs, as n_j against n_{j-1}."""
        expected = (
            self.step_kind is ComponentKind.SATELLITE
            and self.address_rule.leaf_count == self.period
            and self.portrait_rule.leaf_count == self.parent_period
            and self.address_rule.unbounded_count == self.portrait_rule.unbounded_count
        )
        return "satellite_leaf_count" if expected else "unexpected"

    def to_record(self) -> DiscrepancyRecord:
        return DiscrepancyRecord(
            root_pair=[str(theta) for theta in self.component.root_pair],
            step=self.step,
            period=self.period,
            parent_period=self.parent_period,
            step_kind=self.step_kind.value,
            differing_fields=list(self.differing_fields),
            address_rule=self.address_rule.to_entry(),
            portrait_rule=self.portrait_rule.to_entry(),
            classification=self.classification,
        )


def lu_discrepancies(component: HyperbolicComponent, atlas: Atlas) -> List[LuDiscrepancy]:
    """Steps where the address rule and the portrait rule disagree."""
    chain = atlas.combinatorial_arc(component)
    by_address = lu_profile_from_address(component.address)
    by_portrait = lu_profile_from_portraits(component, atlas)
    found = []
    for step, (a, p) in enumerate(zip(by_address, by_portrait), start=1):
        differing = tuple(
            name for name in ("point_period", "leaf_count", "unbounded_count")
            if getattr(a, name) != getattr(p, name)
        )
        if differing:
            found.append(LuDiscrepancy(
                component, step, chain[step].period, chain[step - 1].period, chain[step].kind, differing, a, p
            ))
    return found


@dataclass
class LuDiscrepancyReport:
    components_checked: int = 0
    discrepancies: List[LuDiscrepancy] = field(default_factory=list)

    @property
    def unbounded_counts_agree(self) -> bool:
        return all("unbounded_count" not in d.differing_fields for d in self.discrepancies)

    @property
    def unexpected(self) -> List[LuDiscrepancy]:
        return [d for d in self.discrepancies if d.classification != "satellite_leaf_count"]


def lu_discrepancy_report(atlas: Atlas, max_period: Optional[int] = None) -> LuDiscrepancyReport:
    max_period = max_period or atlas.max_period
    report = LuDiscrepancyReport()
    for component in atlas:
        if component.is_main_cardioid or component.period > max_period:
            continue
        report.components_checked += 1
        report.discrepancies.extend(lu_discrepancies(component, atlas))
    logger.info(
        f"LU discrepancy report to period {max_period}: {len(report.discrepancies)} disagreements "
        f"over {report.components_checked} components, {len(report.unexpected)} unexpected"
    )
    return report


@dataclass(frozen=True)
class NonperiodicViolation:
    component: HyperbolicComponent
    angle: Angle
    valence: int
    landing_class: Tuple[Angle, ...]


@dataclass
class NonperiodicBoundReport:
    max_period: int
    components_checked: int = 0
    angles_checked: int = 0
    violations: List[NonperiodicViolation] = field(default_factory=list)


def nonperiodic_bound_check(
    atlas: Atlas,
    max_period: int,
    components: Optional[Sequence[HyperbolicComponent]] = None,
) -> NonperiodicBoundReport:
    """Valence of every periodic angle off the address chain, under each component's identifications.

    A component identifies the angles that share a class in the root portrait of any
    component whose wake contains it, itself included. Off the address chain no such
    class may hold more than two angles.
    """
    if max_period > atlas.max_period:
        raise AtlasError(f"max_period {max_period} exceeds the atlas bound {atlas.max_period}")
    angles = [theta for n in range(1, max_period + 1) for theta in periodic_angles(n)]
    report = NonperiodicBoundReport(max_period=max_period)
    for component in components if components is not None else atlas.components:
        chain_angles = {theta for step in atlas.combinatorial_arc(component) for theta in step.portrait.angles()}
        landing: Dict[Angle, Tuple[Angle, ...]] = {}
        for ancestor in atlas.ancestors(component):
            for group in ancestor.portrait.classes:
                for theta in group:
                    landing[theta] = group
        report.components_checked += 1
        for theta in angles:
            if theta in chain_angles:
                continue
            report.angles_checked += 1
            group = landing.get(theta, (theta,))
            if len(group) > 2:
                report.violations.append(NonperiodicViolation(component, theta, len(group), group))
    logger.info(
        f"nonperiodic bound check to period {max_period}: {report.components_checked} components, "
        f"{len(report.violations)} violations"
    )
    return report


def irregular_points(component: HyperbolicComponent) -> int:
    return component.period + 1


@dataclass(frozen=True)
class InvariantBundle:
    root_pair: Tuple[Angle, Angle]
    period: int
    root_portrait_canonical: OrbitPortrait
    kind: ComponentKind
    labelled_address: LabelledAddress
    lu_profile: Tuple[LeafCycleRecord, ...]
    irregular_points: int

    def to_record(self) -> BundleRecord:
        return BundleRecord(
            root_pair=[str(theta) for theta in self.root_pair],
            period=self.period,
            kind=self.kind.value,
            labelled_address=[
                AddressEntryRecord(period=entry.period, label=str(entry.label) if entry.label is not None else None)
                for entry in self.labelled_address.entries
            ],
            root_portrait=[[str(theta) for theta in group] for group in self.root_portrait_canonical.classes],
            lu_profile=[record.to_entry() for record in self.lu_profile],
            irregular_points=self.irregular_points,
        )


def invariant_bundle(component: HyperbolicComponent, atlas: Atlas) -> InvariantBundle:
    if component not in atlas:
        raise AtlasError(f"{component} is not in the atlas")
    profile = () if component.is_main_cardioid else tuple(lu_profile_from_address(component.address))
    return InvariantBundle(
        root_pair=component.root_pair,
        period=component.period,
        root_portrait_canonical=canonical_form(component.portrait),
        kind=component.kind,
        labelled_address=component.address,
        lu_profile=profile,
        irregular_points=irregular_points(component),
    )


def mirror_bundle(bundle: InvariantBundle) -> InvariantBundle:
    """Bundle of the complex-conjugate parameter: angles negated, labels p/q sent to (q-p)/q."""
    mirrored = OrbitPortrait.from_classes([-theta for theta in group] for group in bundle.root_portrait_canonical.classes)
    low, high = bundle.root_pair
    entries = tuple(
        AddressEntry(entry.period, 1 - entry.label if entry.label is not None else None)
        for entry in bundle.labelled_address.entries
    )
    return InvariantBundle(
        root_pair=(-high, -low),
        period=bundle.period,
        root_portrait_canonical=canonical_form(mirrored),
        kind=bundle.kind,
        labelled_address=LabelledAddress(entries),
        lu_profile=bundle.lu_profile,
        irregular_points=bundle.irregular_points,
    )


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class Distinguished:
    """The first bundle field that tells two parameters apart."""

    field: str
    left: str
    right: str


_COMPARED_FIELDS = ("period", "kind", "lu_profile", "labelled_address", "root_portrait")


def _field_view(bundle: InvariantBundle, name: str):
    if name == "period":
        return bundle.period, str(bundle.period)
    if name == "kind":
        return bundle.kind, bundle.kind.value
    if name == "lu_profile":
        counts = tuple(record.counts() for record in bundle.lu_profile)
        return counts, str(list(counts))
    if name == "labelled_address":
        return bundle.labelled_address, str(bundle.labelled_address)
    portrait = bundle.root_portrait_canonical
    return portrait.as_sets(), str(portrait)


def distinguish(b1: InvariantBundle, b2: InvariantBundle) -> Union[Equal, Distinguished]:
    for name in _COMPARED_FIELDS:
        left, left_text = _field_view(b1, name)
        right, right_text = _field_view(b2, name)
        if left != right:
            return Distinguished(name, left_text, right_text)
    return Equal()
