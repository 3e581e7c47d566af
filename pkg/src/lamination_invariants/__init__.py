"""Combinatorial invariants of quadratic laminations: angles, orbit portraits, the parameter
atlas, the truncated dyadic solenoid and leaf-space invariants."""

__version__ = "0.1.0"
__author__ = "Lamination Invariants Team"

from .angles import Angle, DirectedArc, KneadingSequence
from .atlas import Atlas, HyperbolicComponent, LabelledAddress, atlas_build, internal_address
from .config import Settings
from .exceptions import LaminationError
from .leaf_invariants import InvariantBundle, LeafCycleRecord, distinguish, invariant_bundle
from .portraits import OrbitPortrait, PortraitKind, realize_portrait
from .solenoid import AffineSolenoidMap, SolenoidPoint

__all__ = [
    "AffineSolenoidMap",
    "Angle",
    "Atlas",
    "DirectedArc",
    "HyperbolicComponent",
    "InvariantBundle",
    "KneadingSequence",
    "LabelledAddress",
    "LaminationError",
    "LeafCycleRecord",
    "OrbitPortrait",
    "PortraitKind",
    "Settings",
    "SolenoidPoint",
    "atlas_build",
    "distinguish",
    "internal_address",
    "invariant_bundle",
    "realize_portrait",
]
