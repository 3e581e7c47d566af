"""Command-line interface: one JSON CommandResult per line on stdout, logs on stderr."""

import sys
from functools import wraps
from pathlib import Path
from typing import Callable, List, Optional

import click
import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from .angles import Angle, exact_period, is_periodic, kneading_sequence, orbit, preperiod
from .atlas import Atlas, HyperbolicComponent, internal_address
from .config import settings
from .exceptions import AtlasError, LaminationError
from .leaf_invariants import invariant_bundle
from .portraits import (
    OrbitPortrait,
    PortraitKind,
    characteristic_arc,
    critical_arc,
    halving_branch,
    realize_portrait,
    rotation_number,
)
from .render import count_chords, render_portrait_svg, render_wakes_svg, write_svg
from .schemas import EXIT_CODES, CommandResult, CommandStatus, PortraitRecord
from .verification import run_verification

app = typer.Typer(help="Combinatorial invariants of quadratic laminations.", no_args_is_help=True)
atlas_app = typer.Typer(help="Build, query and inspect atlases of hyperbolic components.", no_args_is_help=True)
render_app = typer.Typer(help="Write SVG chord diagrams.", no_args_is_help=True)
app.add_typer(atlas_app, name="atlas")
app.add_typer(render_app, name="render")

console = Console()


def guarded(func: Callable[..., CommandResult]) -> Callable[..., CommandResult]:
    """Turn library errors into an error result instead of a traceback."""

    @wraps(func)
    def wrapper(*args, **kwargs) -> CommandResult:
        try:
            return func(*args, **kwargs)
        except LaminationError as e:
            logger.debug(f"{func.__name__} failed: {e}")
            return CommandResult(status=CommandStatus.ERROR, diagnostics=[str(e)])
        except (MemoryError, RecursionError) as e:
            return CommandResult(status=CommandStatus.ERROR, diagnostics=[f"resource exhaustion: {type(e).__name__}"])

    return wrapper


def portrait_record(portrait: OrbitPortrait) -> PortraitRecord:
    nontrivial = portrait.valence >= 2
    characteristic = characteristic_arc(portrait) if nontrivial else None
    critical = critical_arc(portrait) if nontrivial else None
    return PortraitRecord(
        classes=[[str(theta) for theta in group] for group in portrait.classes],
        kind=portrait.kind.value,
        point_period=portrait.point_period,
        valence=portrait.valence,
        ray_period=portrait.ray_period,
        rotation=str(rotation_number(portrait)) if portrait.kind is PortraitKind.SATELLITE else None,
        characteristic_arc=[str(characteristic.start), str(characteristic.end)] if characteristic else None,
        critical_arc=[str(critical.start), str(critical.end)] if critical else None,
        critical_arc_branch=halving_branch(portrait).value if nontrivial else None,
    )


def _parse_pair(text: str) -> List[Angle]:
    parts = [part for part in text.split(",") if part.strip()]
    if len(parts) != 2:
        raise AtlasError(f"expected two comma-separated angles, got {text!r}")
    return [Angle.parse(part) for part in parts]


def _parse_address(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise AtlasError(f"address {text!r} must be comma-separated periods") from e


@guarded
def cmd_orbit(theta: str) -> CommandResult:
    angle = Angle.parse(theta)
    prefix, cycle = orbit(angle)
    return CommandResult(payload=[{
        "angle": str(angle),
        "prefix": [str(t) for t in prefix],
        "cycle": [str(t) for t in cycle],
        "preperiod": preperiod(angle),
        "period": exact_period(angle),
    }])


@guarded
def cmd_address(theta: str) -> CommandResult:
    angle = Angle.parse(theta)
    return CommandResult(payload=[{"angle": str(angle), "address": internal_address(angle)}])


@guarded
def cmd_kneading(theta: str) -> CommandResult:
    angle = Angle.parse(theta)
    nu = kneading_sequence(angle)
    return CommandResult(payload=[{
        "angle": str(angle),
        "kneading": str(nu),
        "preperiod": nu.preperiod,
        "period": nu.period,
    }])


@guarded
def cmd_portrait(theta1: str, theta2: str) -> CommandResult:
    portrait = realize_portrait(Angle.parse(theta1), Angle.parse(theta2))
    return CommandResult(payload=[portrait_record(portrait).model_dump()])


def _component_payload(component: HyperbolicComponent) -> dict:
    return component.to_record().model_dump()


@guarded
def cmd_atlas_build(max_period: int, path: Path) -> CommandResult:
    atlas = Atlas.build(max_period)
    atlas.save(path)
    counts = {str(n): count for n, count in atlas.counts_per_period().items()}
    return CommandResult(payload=[{"path": str(path), "components": len(atlas), "counts": counts}])


@guarded
def cmd_atlas_query(path: Path, angle: Optional[str] = None, address: Optional[str] = None,
                    enclosing: bool = False) -> CommandResult:
    if angle is None and address is None:
        raise AtlasError("query needs --angle or --address")
    atlas = Atlas.load(path)
    if angle is not None:
        matches = [atlas.query_by_angle(Angle.parse(angle), enclosing=enclosing)]
    else:
        matches = atlas.query_by_address(_parse_address(address))
    return CommandResult(payload=[_component_payload(component) for component in matches])


@guarded
def cmd_atlas_info(path: Path) -> CommandResult:
    atlas = Atlas.load(path)
    counts = {str(n): count for n, count in atlas.counts_per_period().items()}
    return CommandResult(payload=[{
        "path": str(path),
        "max_period": atlas.max_period,
        "components": len(atlas),
        "counts": counts,
    }])


@guarded
def cmd_verify(max_period: int, depth: int) -> CommandResult:
    report = run_verification(max_period, depth)
    diagnostics = [
        f"{outcome.name}: {len(outcome.counterexamples)} counterexamples"
        for outcome in report.outcomes if not outcome.passed
    ]
    return CommandResult(status=report.status, payload=[report.model_dump(mode="json")], diagnostics=diagnostics)


@guarded
def cmd_render_portrait(angles: str, out: Path) -> CommandResult:
    theta1, theta2 = _parse_pair(angles)
    svg = render_portrait_svg(realize_portrait(theta1, theta2))
    write_svg(svg, out)
    return CommandResult(payload=[{"out": str(out), "chords": count_chords(svg)}])


@guarded
def cmd_render_wakes(max_period: int, out: Path, path: Optional[Path] = None) -> CommandResult:
    atlas = Atlas.load(path) if path is not None else Atlas.build(max_period)
    svg = render_wakes_svg(atlas, max_period)
    write_svg(svg, out)
    return CommandResult(payload=[{"out": str(out), "chords": count_chords(svg)}])


@guarded
def cmd_bundle(angle: str, path: Optional[Path] = None) -> CommandResult:
    theta = Angle.parse(angle)
    if path is not None:
        atlas = Atlas.load(path)
    else:
        atlas = Atlas.build(exact_period(theta) if is_periodic(theta) else settings.default_max_period)
    bundle = invariant_bundle(atlas.query_by_angle(theta), atlas)
    return CommandResult(payload=[bundle.to_record().model_dump()])


def _print_pretty(result: CommandResult):
    colour = {"ok": "green", "violation": "yellow", "error": "red"}[result.status.value]
    console.print(f"[bold {colour}]{result.status.value}[/bold {colour}]")
    for record in result.payload:
        table = Table(show_header=True, header_style="bold")
        table.add_column("field")
        table.add_column("value")
        for key, value in record.items():
            table.add_row(str(key), str(value))
        console.print(table)
    for line in result.diagnostics:
        console.print(f"[dim]{line}[/dim]")


def emit(result: CommandResult, pretty: bool = False):
    if pretty:
        _print_pretty(result)
    else:
        typer.echo(result.model_dump_json())
    raise typer.Exit(code=result.exit_code)


PrettyOption = typer.Option(False, "--pretty", help="Rich tables instead of JSON.")
AtlasOption = typer.Option(None, "--atlas", help="Atlas file (default from LAMINATION_ATLAS_PATH).")


def _atlas_path(path: Optional[Path]) -> Path:
    return path or Path(settings.lamination_atlas_path)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr.")):
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else settings.log_level)


@app.command("orbit")
def orbit_command(theta: str = typer.Argument(..., help="Angle as num/den"), pretty: bool = PrettyOption):
    """Doubling orbit of an angle."""
    emit(cmd_orbit(theta), pretty)


@app.command("address")
def address_command(theta: str = typer.Argument(..., help="Angle as num/den"), pretty: bool = PrettyOption):
    """Internal address of an angle."""
    emit(cmd_address(theta), pretty)


@app.command("kneading")
def kneading_command(theta: str = typer.Argument(..., help="Angle as num/den"), pretty: bool = PrettyOption):
    """Kneading sequence of an angle."""
    emit(cmd_kneading(theta), pretty)


@app.command("portrait")
def portrait_command(
    theta1: str = typer.Argument(..., help="First root angle"),
    theta2: str = typer.Argument(..., help="Second root angle"),
    pretty: bool = PrettyOption,
):
    """Orbit portrait with characteristic arc (theta1 -> theta2)."""
    emit(cmd_portrait(theta1, theta2), pretty)


@atlas_app.command("build")
def atlas_build_command(
    max_period: int = typer.Option(..., "--max-period", min=1),
    path: Optional[Path] = AtlasOption,
    pretty: bool = PrettyOption,
):
    emit(cmd_atlas_build(max_period, _atlas_path(path)), pretty)


@atlas_app.command("query")
def atlas_query_command(
    angle: Optional[str] = typer.Option(None, "--angle"),
    address: Optional[str] = typer.Option(None, "--address", help="Comma-separated periods, e.g. 1,2,3"),
    enclosing: bool = typer.Option(False, "--enclosing", help="Innermost wake containing the angle."),
    path: Optional[Path] = AtlasOption,
    pretty: bool = PrettyOption,
):
    emit(cmd_atlas_query(_atlas_path(path), angle, address, enclosing), pretty)


@atlas_app.command("info")
def atlas_info_command(path: Optional[Path] = AtlasOption, pretty: bool = PrettyOption):
    emit(cmd_atlas_info(_atlas_path(path)), pretty)


@app.command("verify")
def verify_command(
    max_period: int = typer.Option(settings.default_max_period, "--max-period"),
    depth: int = typer.Option(settings.default_depth, "--depth"),
    pretty: bool = PrettyOption,
):
    """Run every verification sweep."""
    emit(cmd_verify(max_period, depth), pretty)


@render_app.command("portrait")
def render_portrait_command(
    angles: str = typer.Option(..., "--angles", help="Root pair as A,B"),
    out: Path = typer.Option(Path("portrait.svg"), "--out"),
    pretty: bool = PrettyOption,
):
    emit(cmd_render_portrait(angles, out), pretty)


@render_app.command("wakes")
def render_wakes_command(
    max_period: int = typer.Option(..., "--max-period", min=2),
    out: Path = typer.Option(Path("wakes.svg"), "--out"),
    path: Optional[Path] = AtlasOption,
    pretty: bool = PrettyOption,
):
    emit(cmd_render_wakes(max_period, out, path), pretty)


@app.command("bundle")
def bundle_command(
    angle: str = typer.Option(..., "--angle", help="A root angle of the component"),
    path: Optional[Path] = AtlasOption,
    pretty: bool = PrettyOption,
):
    """Invariant bundle of the component with this root angle."""
    emit(cmd_bundle(angle, path), pretty)


def run(argv: Optional[List[str]] = None):
    """Entry point. Usage errors are reported as an error CommandResult like every other failure."""
    try:
        code = app(args=argv, prog_name=settings.app_name, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        result = CommandResult(status=CommandStatus.ERROR, diagnostics=[e.format_message()])
        typer.echo(result.model_dump_json())
        code = result.exit_code
    except click.Abort:
        code = EXIT_CODES[CommandStatus.ERROR]
    sys.exit(code or 0)
