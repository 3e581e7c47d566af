"""Build an atlas file and print a census of its components."""

import typer
from dotenv import load_dotenv
from loguru import logger

load_dotenv()

from lamination_invariants.atlas import Atlas  # noqa: E402
from lamination_invariants.config import settings  # noqa: E402
from lamination_invariants.exceptions import AtlasError  # noqa: E402


def build(max_period: int, path: str) -> Atlas:
    """Build, save and reload the atlas so the written file is known to parse."""
    atlas = Atlas.build(max_period)
    atlas.save(path)
    reloaded = Atlas.load(path)
    if reloaded != atlas:
        raise AtlasError(f"atlas written to {path} does not read back unchanged")
    return atlas


def main(
    max_period: int = typer.Option(settings.default_max_period, "--max-period", min=1),
    path: str = typer.Option(settings.lamination_atlas_path, "--atlas"),
):
    try:
        atlas = build(max_period, path)
    except AtlasError as e:
        logger.error(f"Atlas build failed: {str(e)}")
        raise typer.Exit(code=2)

    typer.echo(f"Atlas written to {path}")
    for period, count in atlas.counts_per_period().items():
        typer.echo(f"  period {period:>2}: {count:>4} components")


if __name__ == "__main__":
    typer.run(main)
