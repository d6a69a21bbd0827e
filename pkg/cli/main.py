"""
Command-line entry point
"""
import argparse
import json
import sys
from typing import List, Optional

from pydantic import ValidationError

from utils.errors import GradevalError
from utils.logger import main_logger, set_level
from .commands import EXIT_ERROR, run_task
from .run_config import load_run_config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradeval",
        description="Gradient-based simultaneous estimation of many expectation values",
    )
    parser.add_argument("--config", required=True, help="JSON run config")
    parser.add_argument("--seed", type=int, default=None, help="Unsigned 64-bit seed")
    parser.add_argument("--mode", choices=["analytic", "circuit"], default=None, help="How f is read out")
    parser.add_argument("--trials", type=int, default=None, help="Benchmark trials (>= 30)")
    parser.add_argument("--out", default=None, help="Output path; stdout when omitted")
    parser.add_argument("--max-qubits", type=int, default=None, help="Simulated qubit budget")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse flags, run the configured task and map the outcome to an exit code

    Returns:
        0 on success, 2 when the estimate missed its accuracy target,
        1 on any configuration or runtime error
    """
    args = build_parser().parse_args(argv)
    try:
        if args.log_level:
            set_level(args.log_level)
        cfg = load_run_config(args.config, {
            'seed': args.seed,
            'mode': args.mode,
            'trials': args.trials,
            'out': args.out,
            'max_qubits': args.max_qubits,
        })
        return run_task(cfg)
    except (GradevalError, ValidationError, OSError, json.JSONDecodeError, ValueError) as e:
        main_logger.debug("Task failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
