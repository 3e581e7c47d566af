"""Verification sweeps over an atlas and the truncated solenoid."""

from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional

from loguru import logger

from .angles import HALF, count_exact_period, periodic_angles
from .atlas import Atlas
from .exceptions import LaminationError, PortraitError
from .leaf_invariants import (
    Distinguished,
    distinguish,
    invariant_bundle,
    irregular_points,
    lu_discrepancy_report,
    nonperiodic_bound_check,
)
from .portraits import (
    HalvingBranch,
    characteristic_arc,
    critical_arc,
    enumerate_portraits,
    halving_branch,
    realize_portrait,
    rigidity_sweep,
)
from .schemas import CommandStatus, SweepOutcome, VerificationReport
from .solenoid import (
    adding_machine,
    adding_machine_power,
    group_mul,
    inverse,
    invert_point,
    observed_affine_relations,
    periodic_point,
    sample_points,
    rho,
    shift,
    shift_power,
    unit,
)

_RHO_SAMPLES = [Fraction(0), Fraction(1), Fraction(1, 3), Fraction(2, 5), Fraction(-3, 7), Fraction(5, 2), Fraction(7, 9)]
_LIFT_PERIOD_LIMIT = 8


def census_sweep(atlas: Atlas) -> SweepOutcome:
    counts = atlas.counts_per_period()
    counterexamples = []
    for n, found in counts.items():
        expected = 1 if n == 1 else count_exact_period(n) // 2
        if found != expected:
            counterexamples.append(f"period {n}: {found} components, expected {expected}")
    return SweepOutcome(
        name="component_census",
        checked=len(atlas),
        counterexamples=counterexamples,
        details={str(n): found for n, found in counts.items()},
    )


def rigidity_outcome(max_period: int, portraits, atlas: Atlas) -> SweepOutcome:
    report = rigidity_sweep(max_period, portraits)
    counterexamples = [
        f"rotation by {c.rotation} carries {c.first} onto {c.second}" for c in report.counterexamples
    ]
    if report.portraits != len(atlas) - 1:
        counterexamples.append(f"{report.portraits} portraits against {len(atlas) - 1} components")
    return SweepOutcome(
        name="rotation_rigidity",
        checked=report.pairs_checked,
        counterexamples=counterexamples,
        details={"portraits": report.portraits, "rotations_tested": report.rotations_tested},
    )


def critical_arc_sweep(portraits) -> SweepOutcome:
    """Length ordering, half-angle endpoints and round trip for every portrait.

    The half-angle branch bounding each critical arc is tallied in the details; either branch passes."""
    counterexamples = []
    branches: Counter = Counter()
    for portrait in portraits:
        try:
            characteristic = characteristic_arc(portrait)
            critical = critical_arc(portrait)
            branch = halving_branch(portrait)
        except PortraitError as exc:
            counterexamples.append(f"{portrait}: {exc}")
            continue
        branches[branch.value] += 1
        if not characteristic.length < HALF.value < critical.length:
            counterexamples.append(f"{portrait}: arcs {characteristic} and {critical} break the length ordering")
        if realize_portrait(characteristic.start, characteristic.end).as_sets() != portrait.as_sets():
            counterexamples.append(f"{portrait}: realization of {characteristic} differs")
    return SweepOutcome(
        name="critical_arc_formula",
        checked=len(portraits),
        counterexamples=counterexamples,
        details={branch.value: branches[branch.value] for branch in HalvingBranch},
    )


def address_injectivity_sweep(atlas: Atlas) -> SweepOutcome:
    seen: Dict[str, List[str]] = defaultdict(list)
    for component in atlas:
        seen[str(component.address)].append(str(component))
    collisions = [f"{address}: {', '.join(names)}" for address, names in seen.items() if len(names) > 1]
    return SweepOutcome(name="labelled_address_injectivity", checked=len(atlas), counterexamples=collisions)


def unlabelled_witness_sweep(atlas: Atlas) -> SweepOutcome:
    """Pairs of distinct components sharing their unlabelled address."""
    groups = Counter(tuple(component.address.periods) for component in atlas)
    witnesses = {
        " -> ".join(str(n) for n in periods): count for periods, count in groups.items() if count > 1
    }
    counterexamples = []
    if atlas.max_period >= 3 and not witnesses:
        counterexamples.append("no two components share an unlabelled address")
    return SweepOutcome(
        name="unlabelled_address_witness", checked=len(atlas), counterexamples=counterexamples, details=witnesses
    )


def bundle_injectivity_sweep(atlas: Atlas) -> SweepOutcome:
    bundles = [(component, invariant_bundle(component, atlas)) for component in atlas]
    counterexamples = []
    witnesses: Counter = Counter()
    checked = 0
    for (c1, b1), (c2, b2) in combinations(bundles, 2):
        checked += 1
        verdict = distinguish(b1, b2)
        if isinstance(verdict, Distinguished):
            witnesses[verdict.field] += 1
        else:
            counterexamples.append(f"{c1} and {c2} have equal bundles")
    return SweepOutcome(
        name="bundle_injectivity", checked=checked, counterexamples=counterexamples, details=dict(witnesses)
    )


def solenoid_algebra_sweep(depth: int) -> SweepOutcome:
    samples = sample_points(depth)
    one = unit(depth)
    counterexamples: List[str] = []

    def check(name: str, predicate: Callable[[], bool]):
        if not predicate():
            counterexamples.append(name)

    triples = list(zip(samples, samples[1:], samples[2:]))
    pairs = list(zip(samples, samples[1:]))
    check("identity", lambda: all(group_mul(x, one) == x for x in samples))
    check("inverses", lambda: all(group_mul(x, inverse(x)) == one for x in samples))
    check("commutativity", lambda: all(group_mul(x, y) == group_mul(y, x) for x, y in pairs))
    check("associativity", lambda: all(
        group_mul(group_mul(x, y), z) == group_mul(x, group_mul(y, z)) for x, y, z in triples
    ))
    check("rho homomorphism", lambda: all(
        rho(s + t, depth) == group_mul(rho(s, depth), rho(t, depth))
        for s in _RHO_SAMPLES for t in _RHO_SAMPLES
    ))
    check("shift automorphism", lambda: all(shift(group_mul(x, y)) == group_mul(shift(x), shift(y)) for x, y in pairs))
    check("inversion automorphism", lambda: all(
        invert_point(group_mul(x, y)) == group_mul(invert_point(x), invert_point(y)) for x, y in pairs
    ))
    check("adding machine is rho(1)", lambda: all(adding_machine(x) == group_mul(rho(1, depth), x) for x in samples))
    check("adding machine order", lambda: all(
        adding_machine_power(x, 2**depth) == x and adding_machine_power(x, 2 ** (depth - 1)) != x for x in samples
    ))

    def periodic_lifts() -> bool:
        lifts = {}
        for n in range(1, min(depth, _LIFT_PERIOD_LIMIT) + 1):
            for theta in periodic_angles(n):
                point = periodic_point(theta, depth)
                lifted = shift_power(point, n)
                if lifted != point or point in lifts:
                    return False
                lifts[point] = theta
        return True

    check("periodic lifts fixed and injective", periodic_lifts)
    return SweepOutcome(name="solenoid_algebra", checked=len(samples), counterexamples=counterexamples)


def irregular_points_sweep(atlas: Atlas) -> SweepOutcome:
    counterexamples = [
        f"{component}: {irregular_points(component)} irregular points"
        for component in atlas
        if irregular_points(component) != component.period + 1
    ]
    return SweepOutcome(name="irregular_points", checked=len(atlas), counterexamples=counterexamples)


def lu_discrepancy_outcome(atlas: Atlas) -> SweepOutcome:
    report = lu_discrepancy_report(atlas)
    return SweepOutcome(
        name="lu_discrepancy",
        checked=report.components_checked,
        counterexamples=[
            f"{d.component} step {d.step} ({d.parent_period} -> {d.period}): {d.classification}"
            for d in report.discrepancies
        ],
        informational=True,
        details={
            "unbounded_counts_agree": report.unbounded_counts_agree,
            "unexpected": len(report.unexpected),
        },
    )


def nonperiodic_bound_outcome(atlas: Atlas) -> SweepOutcome:
    report = nonperiodic_bound_check(atlas, atlas.max_period)
    return SweepOutcome(
        name="nonperiodic_valence_bound",
        checked=report.angles_checked,
        counterexamples=[f"{v.component}: {v.angle} has valence {v.valence}" for v in report.violations],
        informational=True,
    )


def affine_relations_outcome(depth: int) -> SweepOutcome:
    report = observed_affine_relations(depth)
    return SweepOutcome(
        name="affine_relations", checked=report.samples, informational=True, details=report.as_dict()
    )


def run_verification(max_period: int, depth: int, atlas: Optional[Atlas] = None) -> VerificationReport:
    """Run every sweep; the report status is ok when no failing sweep found a counterexample."""
    if max_period < 2:
        raise LaminationError("verification needs max_period at least 2")
    if depth < 2 * max_period:
        raise LaminationError(f"depth {depth} must be at least twice max_period {max_period}")
    logger.info(f"Verification started: max_period={max_period}, depth={depth}")
    if atlas is None or atlas.max_period != max_period:
        atlas = Atlas.build(max_period)
    portraits = enumerate_portraits(max_period)
    outcomes = [
        census_sweep(atlas),
        rigidity_outcome(max_period, portraits, atlas),
        critical_arc_sweep(portraits),
        address_injectivity_sweep(atlas),
        unlabelled_witness_sweep(atlas),
        bundle_injectivity_sweep(atlas),
        solenoid_algebra_sweep(depth),
        irregular_points_sweep(atlas),
        lu_discrepancy_outcome(atlas),
        nonperiodic_bound_outcome(atlas),
        affine_relations_outcome(depth),
    ]
    for outcome in outcomes:
        logger.debug(f"{outcome.name}: checked {outcome.checked}, {len(outcome.counterexamples)} counterexamples")
    status = CommandStatus.OK if all(outcome.passed for outcome in outcomes) else CommandStatus.VIOLATION
    logger.info(f"Verification finished with status {status.value}")
    return VerificationReport(
        max_period=max_period,
        depth=depth,
        components_checked=len(atlas),
        outcomes=outcomes,
        status=status,
    )
