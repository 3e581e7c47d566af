"""Serialized records for atlases, portraits, solenoid points, bundles and command results."""

from enum import Enum
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .angles import Angle
from .config import settings


def _canonical_angle(text: str) -> str:
    return str(Angle.parse(text))


def _canonical_fraction(text: Optional[str]) -> Optional[str]:
    if text is None:
        return None
    num, _, den = text.partition("/")
    try:
        numerator, denominator = int(num), int(den or 1)
    except ValueError as exc:
        raise ValueError(f"invalid fraction {text!r}") from exc
    if denominator <= 0 or not 0 < numerator < denominator:
        raise ValueError(f"label {text!r} must be a fraction strictly between 0 and 1")
    return text


class PortraitRecord(BaseModel):
    """Orbit portrait with its derived data."""

    classes: List[List[str]] = Field(..., description="Classes in forward-orbit order, angles as num/den")
    kind: str = Field(..., description="trivial, satellite or primitive")
    point_period: int = Field(..., ge=1, description="Number of classes")
    valence: int = Field(..., ge=1, description="Angles per class")
    ray_period: int = Field(..., ge=1, description="Exact period of every angle")
    rotation: Optional[str] = Field(None, description="Combinatorial rotation number (satellite only)")
    characteristic_arc: Optional[List[str]] = Field(None, description="Shortest complementary arc [start, end]")
    critical_arc: Optional[List[str]] = Field(None, description="Long arc mapping onto the characteristic arc")
    critical_arc_branch: Optional[str] = Field(
        None, description="shifted_start or shifted_end: which half-angles of the characteristic arc bound it"
    )

    @field_validator("classes")
    @classmethod
    def validate_classes(cls, v):
        """Ensure every angle is canonical."""
        return [[_canonical_angle(theta) for theta in group] for group in v]


class AddressEntryRecord(BaseModel):
    """One entry of a labelled internal address."""

    period: int = Field(..., ge=1, description="Period of the entry")
    label: Optional[str] = Field(None, description="Rotation number on the arrow into this entry")

    @field_validator("label")
    @classmethod
    def validate_label(cls, v):
        return _canonical_fraction(v)


class AtlasHeader(BaseModel):
    """First line of an atlas file."""

    record_type: Literal["atlas_header"] = "atlas_header"
    format_version: int = Field(default_factory=lambda: settings.atlas_format_version, ge=1)
    max_period: int = Field(..., ge=1, description="Largest period enumerated")
    component_count: int = Field(..., ge=1, description="Number of component records that follow")


class ComponentRecord(BaseModel):
    """One hyperbolic component, one line of an atlas file."""

    period: int = Field(..., ge=1, description="Period of the component")
    root_pair: List[str] = Field(..., min_length=2, max_length=2, description="Root angles, shortest arc first")
    kind: str = Field(..., description="main_cardioid, primitive or satellite")
    rotation: Optional[str] = Field(None, description="Rotation number (satellite only)")
    address: List[AddressEntryRecord] = Field(..., min_length=1, description="Labelled internal address")
    portrait: List[List[str]] = Field(..., description="Root portrait classes in forward-orbit order")

    @field_validator("root_pair")
    @classmethod
    def validate_root_pair(cls, v):
        return [_canonical_angle(theta) for theta in v]

    @field_validator("rotation")
    @classmethod
    def validate_rotation(cls, v):
        return _canonical_fraction(v)

    @model_validator(mode="after")
    def validate_address(self):
        """Ensure the address starts at 1, increases strictly and ends at the period."""
        periods = [entry.period for entry in self.address]
        if periods[0] != 1 or any(a >= b for a, b in zip(periods, periods[1:])):
            raise ValueError(f"address {periods} must start at 1 and increase strictly")
        if periods[-1] != self.period:
            raise ValueError(f"address {periods} must end at the period {self.period}")
        return self


class SolenoidPointRecord(BaseModel):
    """Truncated backward orbit: base angle and tail bits b_1..b_d."""

    base: str = Field(..., description="Coordinate theta_0 as num/den")
    tail: str = Field("", pattern=r"^[01]*$", description="Bits b_1..b_d")
    depth: int = Field(..., ge=0, description="Number of tail bits")

    @field_validator("base")
    @classmethod
    def validate_base(cls, v):
        return _canonical_angle(v)

    @model_validator(mode="after")
    def validate_depth(self):
        if len(self.tail) != self.depth:
            raise ValueError(f"tail has {len(self.tail)} bits, depth is {self.depth}")
        return self


class AffineMapRecord(BaseModel):
    """Affine solenoid map tau o shift^n o r."""

    tau: SolenoidPointRecord = Field(..., description="Translation")
    n: int = Field(..., description="Power of the shift")
    invert: bool = Field(False, description="Whether r is the inversion")


class LeafCycleEntry(BaseModel):
    """One cycle of periodic leaves with its unbounded Fatou component count."""

    point_period: int = Field(..., ge=1)
    leaf_count: int = Field(..., ge=1)
    unbounded_count: int = Field(..., ge=1, description="E(L) for each leaf of the cycle")
    source: str = Field(..., description="address_rule or portrait_rule")


class BundleRecord(BaseModel):
    """Invariant bundle of a superattracting parameter."""

    schema_version: int = Field(default_factory=lambda: settings.record_schema_version)
    root_pair: List[str] = Field(..., min_length=2, max_length=2)
    period: int = Field(..., ge=1)
    kind: str
    labelled_address: List[AddressEntryRecord]
    root_portrait: List[List[str]]
    lu_profile: List[LeafCycleEntry] = Field(default_factory=list)
    irregular_points: int = Field(..., ge=2)

    @model_validator(mode="after")
    def validate_irregular_points(self):
        if self.irregular_points != self.period + 1:
            raise ValueError("irregular_points must equal period + 1")
        return self


class DiscrepancyRecord(BaseModel):
    """One step where the address rule and the portrait rule disagree."""

    schema_version: int = Field(default_factory=lambda: settings.record_schema_version)
    root_pair: List[str] = Field(..., min_length=2, max_length=2)
    step: int = Field(..., ge=1, description="Index j of the address arrow n_{j-1} -> n_j")
    period: int = Field(..., ge=1, description="n_j")
    parent_period: int = Field(..., ge=1, description="n_{j-1}")
    step_kind: str
    differing_fields: List[str]
    address_rule: LeafCycleEntry
    portrait_rule: LeafCycleEntry
    classification: str = Field(..., description="satellite_leaf_count or unexpected")


class SweepOutcome(BaseModel):
    """Result of one verification sweep."""

    name: str
    checked: int = Field(0, ge=0, description="Number of items examined")
    counterexamples: List[str] = Field(default_factory=list)
    informational: bool = Field(False, description="Informational sweeps never fail verification")
    details: dict = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.informational or not self.counterexamples


class CommandStatus(str, Enum):
    OK = "ok"
    VIOLATION = "violation"
    ERROR = "error"


EXIT_CODES = {CommandStatus.OK: 0, CommandStatus.VIOLATION: 1, CommandStatus.ERROR: 2}


class VerificationReport(BaseModel):
    """Outcome of every sweep run by verify."""

    max_period: int
    depth: int
    components_checked: int
    outcomes: List[SweepOutcome]
    status: CommandStatus


class CommandResult(BaseModel):
    """Structured output of every CLI command."""

    status: CommandStatus = CommandStatus.OK
    payload: List[Any] = Field(default_factory=list)
    diagnostics: List[str] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]
