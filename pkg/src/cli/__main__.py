"""
Command line for subcover.

Usage:
    python -m src.cli run --config configs/runs/theorem1_stable.json5 [--seed N] [--workers N] [--out DIR]
    python -m src.cli describe configs/specs/gamma.json5
    python -m src.cli list-experiments

Exit status: 0 when every blocking verdict passes, 1 when one fails,
2 for an invalid configuration or an ineligible spec, 3 for an internal error.
"""

import argparse
import sys
import time
import traceback
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

from src.cli.config import RunConfig, load_document, load_run_config
from src.cli.describe import describe
from src.cli.experiments import EXPERIMENTS
from src.cli.output import make_run_dir, render_summary, write_outputs
from src.core.error_logger import ErrorLogger, get_error_logger
from src.core.error_models import ConfigError, ErrorComponent, ErrorStage, SubcoverError
from src.core.logging import get_logger, init_cli_logging
from src.core.run_logger import RunLogger
from src.core.run_models import RunStatus, RunStep
from src.model.eligibility import check_eligible
from src.model.families import parse_spec
from src.simulate.rng import RngStream

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

# keys that may differ between runs without changing results
_VOLATILE_KEYS = {"workers", "out_dir"}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _fail(message: str, code: int) -> int:
    print(f"[error] {message}", file=sys.stderr)
    return code


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = load_run_config(args.config, seed=args.seed, workers=args.workers, out_dir=args.out)
        spec = config.build_spec()
    except ConfigError as e:
        get_error_logger().log_exception(e, ErrorComponent.CONFIG, ErrorStage.LOAD_CONFIG, experiment="config")
        return _fail(f"invalid config: {e}", EXIT_INVALID)

    try:
        check_eligible(spec)
    except SubcoverError as e:
        get_error_logger().log_exception(e, ErrorComponent.MODEL, ErrorStage.VALIDATE_SPEC, config.experiment,
                                         family=spec.family, seed=config.seed)
        return _fail(str(e), EXIT_INVALID)

    run_dir = make_run_dir(config.experiment, config.out_dir)
    run_logger = RunLogger(run_dir)
    error_logger = ErrorLogger(run_dir / "errors.jsonl")
    family = spec.family
    run_logger.log_step(RunStep.CONFIG_LOADED, config.experiment, family, metadata={"config": str(args.config)})

    started_at = _now()
    start = time.perf_counter()
    run_logger.log_step(RunStep.EXPERIMENT_START, config.experiment, family, started_at=started_at,
                        status=RunStatus.IN_PROGRESS)
    try:
        report = EXPERIMENTS[config.experiment].runner(config, spec, RngStream(config.seed))
    except SubcoverError as e:
        error_logger.log_exception(e, ErrorComponent.VERIFY, ErrorStage.RUN_REPLICAS, config.experiment,
                                   family=family, seed=config.seed)
        run_logger.log_step(RunStep.EXPERIMENT_START, config.experiment, family, started_at=started_at,
                            completed_at=_now(), status=RunStatus.FAILED, metadata={"error": str(e)})
        return _fail(str(e), EXIT_INVALID)
    except Exception as e:
        error_logger.log_exception(e, ErrorComponent.VERIFY, ErrorStage.RUN_REPLICAS, config.experiment,
                                   family=family, seed=config.seed, include_stack_trace=True)
        traceback.print_exc()
        return _fail(f"internal error: {type(e).__name__}: {e}", EXIT_INTERNAL)
    completed_at = _now()
    run_logger.log_step(RunStep.REPLICAS_COMPLETE, config.experiment, family, started_at=started_at,
                        completed_at=completed_at, metadata={"replicas": config.replicas})

    report.parameters["run_config"] = _stable_config(config)
    failed = [v.criterion for v in report.failed_verdicts]
    run_logger.log_step(RunStep.VERDICTS_EVALUATED, config.experiment, family,
                        metadata={"failed": len(failed), "criteria": failed})

    metadata = {
        "run_id": run_logger.run_id,
        "started_at": started_at,
        "completed_at": completed_at,
        "wall_clock_seconds": round(time.perf_counter() - start, 3),
        "workers": config.workers,
        "run_dir": str(run_dir),
    }
    try:
        write_outputs(report, run_dir, metadata)
    except OSError as e:
        error_logger.log_exception(e, ErrorComponent.CLI, ErrorStage.WRITE_REPORT, config.experiment)
        return _fail(f"cannot write outputs to {run_dir}: {e}", EXIT_INTERNAL)
    run_logger.log_step(RunStep.REPORT_WRITTEN, config.experiment, family, metadata={"run_dir": str(run_dir)})

    print(render_summary(report), end="")
    return EXIT_OK if report.passed else EXIT_VERDICT_FAILED


def _stable_config(config: RunConfig) -> dict:
    document = config.as_document()
    for key in _VOLATILE_KEYS:
        document.pop(key, None)
    return document


def cmd_describe(args: argparse.Namespace) -> int:
    path = Path(args.spec)
    try:
        if not path.exists():
            raise ConfigError("spec", f"spec file not found: {path}")
        document = load_document(path, key="spec")
        # a run config is accepted too; its spec key is described
        if "experiment" in document:
            spec = load_run_config(path).build_spec()
        else:
            spec = parse_spec(document)
    except SubcoverError as e:
        get_error_logger().log_exception(e, ErrorComponent.CLI, ErrorStage.DESCRIBE_SPEC, experiment="describe")
        return _fail(str(e), EXIT_INVALID)
    print(describe(spec), end="")
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    width = max(len(name) for name in EXPERIMENTS)
    for name, experiment in EXPERIMENTS.items():
        print(f"{name:<{width}}  {experiment.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subcover", description="Covering numbers of subordinator ranges.")
    ap.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one experiment from a config file")
    run.add_argument("--config", required=True, help="Path to a JSON5 run config")
    run.add_argument("--seed", type=int, help="Override the config seed")
    run.add_argument("--workers", type=int, help="Worker processes (results do not depend on it)")
    run.add_argument("--out", help="Run directory (default: timestamped under SUBCOVER_OUT_DIR)")
    run.set_defaults(func=cmd_run)

    desc = sub.add_parser("describe", help="Describe a spec file")
    desc.add_argument("spec", help="Path to a JSON5 spec document or run config")
    desc.set_defaults(func=cmd_describe)

    lst = sub.add_parser("list-experiments", help="List experiment names")
    lst.set_defaults(func=cmd_list)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    init_cli_logging(verbose=args.verbose)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
