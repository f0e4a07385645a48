# zenodae/app/main.py - Command-line front end for the experiment suites

import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

import click

from . import __version__
from .config import settings
from .errors import OutputError, TestbedError
from .middleware.invariant_tracking import UNEXPECTED_EXIT_CODE, InvariantTrackingMiddleware
from .models.experiment import ExperimentConfig, Suite
from .toolset import get_tool, list_available_tools
from .utils import parse_config
from .utils.csv_writer import write_table

logger = logging.getLogger(__name__)

EXIT_CODES_HELP = """
\b
Exit codes:
  0  success
  1  unexpected error
  2  configuration error
  3  invariant violation
  4  capacity (dense size cap) exceeded
  5  I/O error
"""


def resolve_seed(cfg: ExperimentConfig) -> int:
    """ZENO_DAE_SEED overrides the seed in the config"""
    override = os.getenv("ZENO_DAE_SEED")
    if override:
        try:
            return int(override)
        except ValueError:
            logger.warning(f"Ignoring non-integer ZENO_DAE_SEED={override!r}")
    return cfg.seed


def run_suite(
    cfg: ExperimentConfig,
    out_dir: Path,
    threads: int = 1,
    dump_operators: bool = False,
) -> Path:
    """Run one suite and write its CSV table; returns the table path"""
    tool = get_tool(cfg.suite.value)
    params = cfg.resolved()
    seed = resolve_seed(cfg)

    rows = tool.execute(params, seed, threads=threads)
    out_dir = Path(out_dir)
    path = write_table(out_dir / cfg.filename, cfg.suite.value, seed, params, tool.columns, rows)

    if dump_operators:
        dumped = tool.dump_operators(params, out_dir)
        if not dumped:
            logger.info(f"Suite {cfg.suite.value} has no operators to dump")
    return path


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@click.group(epilog=EXIT_CODES_HELP)
@click.version_option(__version__, prog_name="zeno-dae")
def cli():
    """Classical testbed for Zeno dilations of constrained linear DAEs."""


@cli.command(epilog=EXIT_CODES_HELP)
@click.argument("config_file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("results"), show_default=True, help="Directory for CSV tables.")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads for sweep points.")
@click.option("--dump-operators", is_flag=True, help="Also write the suite's operators as (row, col, re, im) triples.")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False), default=None)
@click.pass_context
def run(ctx, config_file: Path, out_dir: Path, threads: Optional[int], dump_operators: bool, log_level: Optional[str]):
    """Run the suite described by CONFIG_FILE (`key = value` lines, `#` comments)."""
    _configure_logging(log_level)
    tracker = InvariantTrackingMiddleware()
    suite_label = config_file.name

    def _run() -> Path:
        try:
            text = config_file.read_text()
        except OSError as e:
            raise OutputError(f"cannot read config {config_file}: {e}")
        cfg = parse_config(text)
        return run_suite(cfg, out_dir, threads or settings.threads, dump_operators)

    try:
        path = tracker.dispatch(suite_label, _run)
    except TestbedError as e:
        click.echo(f"error: {e.detail}", err=True)
        ctx.exit(e.exit_code)
    except Exception as e:
        click.echo(f"unexpected error: {e}", err=True)
        ctx.exit(UNEXPECTED_EXIT_CODE)

    click.echo(str(path))


@cli.command(epilog=EXIT_CODES_HELP)
@click.option("--suite", "suites", multiple=True, type=click.Choice([s.value for s in Suite]), help="Limit to these suites (repeatable).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None, help="Keep the CSV tables here.")
@click.option("--threads", type=click.IntRange(min=1), default=None)
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False), default=None)
@click.pass_context
def check(ctx, suites, out_dir: Optional[Path], threads: Optional[int], log_level: Optional[str]):
    """Run every suite at its default parameters and re-assert all invariants."""
    _configure_logging(log_level)
    tracker = InvariantTrackingMiddleware()
    selected: List[str] = list(suites) or list_available_tools()
    outcomes: Dict[str, int] = {}

    for name in selected:
        cfg = ExperimentConfig(suite=Suite(name), seed=settings.seed)
        tool = get_tool(name)
        try:
            if out_dir is not None:
                tracker.dispatch(name, lambda: run_suite(cfg, out_dir, threads or settings.threads))
            else:
                tracker.dispatch(name, lambda: tool.execute(cfg.resolved(), resolve_seed(cfg), threads or settings.threads))
            outcomes[name] = 0
        except TestbedError as e:
            outcomes[name] = e.exit_code
        except Exception:
            outcomes[name] = UNEXPECTED_EXIT_CODE
        click.echo(f"{name:8s} {'ok' if outcomes[name] == 0 else f'FAILED ({outcomes[name]})'}")

    failures = [code for code in outcomes.values() if code]
    ctx.exit(failures[0] if failures else 0)


def main():
    cli(prog_name="zeno-dae")


if __name__ == "__main__":
    main()
