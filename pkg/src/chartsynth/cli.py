"""Operator command line: staged runs over a persistent state directory.

Exit codes:
    0  success
    2  configuration error (bad file, bad value, unknown key)
    3  prerequisite violation (stage ordering)
    4  stage failure (stage could not run)
    5  partial completion (interrupted mid-stage; re-run to resume)
"""

from __future__ import annotations

import json
import shutil
import sys
from importlib import resources
from pathlib import Path

import click

from . import __version__
from .errors import ChartsynthError, ConfigError, PrerequisiteError
from .pipeline.config import STAGES, validate_config
from .pipeline.stages import RUN_ALL_ORDER, run_stage

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PREREQ = 3
EXIT_STAGE = 4
EXIT_PARTIAL = 5


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_config(path: str):
    try:
        return validate_config(path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))


def _emit(report, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        click.echo(report.render_text())


def _execute(stage: str, config, as_json: bool) -> None:
    try:
        report = run_stage(stage, config)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    except PrerequisiteError as exc:
        _fail(EXIT_PREREQ, f"{stage}: {exc}")
    except ChartsynthError as exc:
        _fail(EXIT_STAGE, f"{stage}: {exc}")
    _emit(report, as_json)
    if report.interrupted:
        sys.exit(EXIT_PARTIAL)


@click.group()
@click.version_option(version=__version__, prog_name="chartsynth")
def main():
    """Synthesize, validate, package, and evaluate chart Q&A datasets."""


@main.command()
@click.argument("stage", type=click.Choice(STAGES))
@click.option("--config", "-c", "config_path", required=True, type=click.Path(), help="Pipeline config YAML.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
def run(stage: str, config_path: str, as_json: bool):
    """Run one pipeline STAGE against the configured state directory."""
    config = _load_config(config_path)
    _execute(stage, config, as_json)


@main.command("run-all")
@click.option("--config", "-c", "config_path", required=True, type=click.Path())
@click.option("--json", "as_json", is_flag=True)
def run_all(config_path: str, as_json: bool):
    """Run the full generation pipeline in canonical stage order."""
    config = _load_config(config_path)
    for stage in RUN_ALL_ORDER:
        _execute(stage, config, as_json)


@main.command("show-config")
@click.option("--config", "-c", "config_path", required=True, type=click.Path())
def show_config(config_path: str):
    """Validate a config file and print the effective configuration."""
    config = _load_config(config_path)
    click.echo(config.effective_dump())


@main.command("init-demo")
@click.argument("directory", type=click.Path())
def init_demo(directory: str):
    """Write the bundled demo profile into DIRECTORY as demo.yaml."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    source = Path(resources.files("chartsynth.assets")) / "demo.yaml"
    destination = target / "demo.yaml"
    shutil.copyfile(source, destination)
    click.echo(f"wrote {destination}")
    click.echo(f"next: chartsynth run-all -c {destination}")


if __name__ == "__main__":
    main()
