# scenario_cli/main.py

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config import AppConfig

from .exceptions import ArtifactIOError, ScenarioError, ScenarioValidationError
from .models import ScenarioConfig
from .outputs import render_run_summary, render_verification
from .service import ScenarioService

EXIT_PASS = 0
EXIT_INVARIANT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

logger = logging.getLogger("scenario_cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scenario_cli",
        description="Run or verify quantum measurement and filtering scenarios",
    )
    parser.add_argument("command", choices=["run", "verify"])
    parser.add_argument("scenario", nargs="?", help="scenario name (or use --scenario)")
    parser.add_argument("--scenario", dest="scenario_flag")
    parser.add_argument("--config", help="JSON scenario file; flags override its values")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--dt", type=float)
    parser.add_argument("--t-end", dest="t_end", type=float)
    parser.add_argument("--trajectories", "-M", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--output", help="output directory (default $QSIM_OUTPUT_DIR or ./runs)")
    parser.add_argument("--format", choices=["csv", "jsonl"])
    parser.add_argument("--amp0", type=float, help="atom amplitude of |0>")
    parser.add_argument("--amp1", type=float, help="atom amplitude of |1>")
    parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="scenario parameter; VALUE is parsed as JSON when possible")
    parser.add_argument("--verbose", "-v", action="store_true")
    return parser


def _parse_param(item: str) -> Dict[str, Any]:
    key, separator, raw = item.partition("=")
    if not separator or not key:
        raise ScenarioValidationError(f"--param expects KEY=VALUE, got '{item}'")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return {key: value}


def load_config(args: argparse.Namespace) -> ScenarioConfig:
    """Config file first, then flags on top"""
    document: Dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as handle:
                document = json.load(handle)
        except OSError as e:
            raise ArtifactIOError(f"cannot read config {args.config}: {e}")
        except json.JSONDecodeError as e:
            raise ScenarioValidationError(f"config {args.config} is not valid JSON: {e}")
        if not isinstance(document, dict):
            raise ScenarioValidationError(f"config {args.config} must hold a JSON object")

    scenario = args.scenario_flag or args.scenario or document.get("scenario")
    if args.scenario and args.scenario_flag and args.scenario != args.scenario_flag:
        raise ScenarioValidationError(f"conflicting scenarios '{args.scenario}' and '{args.scenario_flag}'")
    if scenario is None:
        raise ScenarioValidationError("no scenario given")
    document["scenario"] = scenario

    for name in ("seed", "dt", "t_end", "trajectories", "workers", "output", "format"):
        value = getattr(args, name)
        if value is not None:
            document[name] = value

    params = dict(document.get("params") or {})
    for name in ("amp0", "amp1"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    for item in args.param:
        params.update(_parse_param(item))
    document["params"] = params

    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError as e:
        raise ScenarioValidationError(f"invalid scenario config: {e}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    try:
        cfg = load_config(args)
        service = ScenarioService(AppConfig.from_env())
        if args.command == "run":
            result = service.run(cfg)
            print(render_run_summary(result), end="")
            return EXIT_PASS
        report = service.verify(cfg)
        print(render_verification(report), end="")
        return EXIT_PASS if report.passed else EXIT_INVARIANT_FAILURE
    except ScenarioValidationError as e:
        logger.error(f"Validation failed: {str(e)}")
        return EXIT_VALIDATION
    except ValueError as e:
        # environment settings rejected by config.py
        logger.error(f"Validation failed: {str(e)}")
        return EXIT_VALIDATION
    except (ArtifactIOError, OSError) as e:
        logger.error(f"I/O failure: {str(e)}")
        return EXIT_IO
    except ScenarioError as e:
        logger.error(f"Scenario failed: {str(e)}")
        return EXIT_INVARIANT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
