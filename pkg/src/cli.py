"""mdimlab command line: space, mdim, irregular and report."""

import logging
import sys
from collections.abc import Callable
from pathlib import Path

import click

from src.config import settings
from src.errors import MdimLabError
from src.observability import init_tracing
from src.pipelines.models import ExperimentConfig, load_experiment

logger = logging.getLogger(__name__)


def _run(action: Callable[[], dict]) -> None:
    try:
        action()
    except MdimLabError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)


def _load(config: Path, out: Path | None, seed: int | None, workers: int | None) -> ExperimentConfig:
    return load_experiment(config, output_dir=out, seed=seed, workers=workers)


config_option = click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Experiment TOML or JSON file.",
)
out_option = click.option(
    "--out", type=click.Path(file_okay=False, path_type=Path), default=None, help="Output directory."
)
seed_option = click.option("--seed", type=int, default=None, help="Override the config seed.")
workers_option = click.option(
    "--workers", type=int, default=None, help="Worker threads; never changes outputs."
)


@click.group()
@click.option("--log-level", default=None, help="Override MDIMLAB_LOG_LEVEL.")
def main(log_level: str | None):
    """Metric mean dimension estimates and irregular-point constructions for shifts."""
    logging.basicConfig(
        level=(log_level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    init_tracing()


@main.command()
@config_option
@out_option
@seed_option
@workers_option
def space(config_path: Path, out: Path | None, seed: int | None, workers: int | None):
    """Verify an alphabet, estimate its box dimension and build covers."""
    from src.pipelines.space import run_space

    _run(lambda: run_space(_load(config_path, out, seed, workers)))


@main.command()
@config_option
@out_option
@seed_option
@workers_option
def mdim(config_path: Path, out: Path | None, seed: int | None, workers: int | None):
    """Estimate h_top(ε) across scales and the metric mean dimension."""
    from src.pipelines.mdim import run_mdim

    _run(lambda: run_mdim(_load(config_path, out, seed, workers)))


@main.command()
@config_option
@out_option
@seed_option
@workers_option
@click.option(
    "--mode",
    type=click.Choice(["exact", "sampled"]),
    default=None,
    help="Level construction mode for this command only; defaults to the config's.",
)
def irregular(
    config_path: Path,
    out: Path | None,
    seed: int | None,
    workers: int | None,
    mode: str | None,
):
    """Build Moran levels and certify divergent Birkhoff averages."""
    from src.pipelines.irregular import run_irregular

    _run(lambda: run_irregular(_load(config_path, out, seed, workers), mode))


@main.command()
@click.argument("runs", nargs=-1, type=click.Path(path_type=Path))
@out_option
def report(runs: tuple[Path, ...], out: Path | None):
    """Merge run directories into plot-ready CSV tables."""
    from src.pipelines.report import run_report

    _run(lambda: run_report(list(runs), out or Path("runs/report")))


if __name__ == "__main__":
    main()
