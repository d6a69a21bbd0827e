"""Command-line front end"""

from .run_config import RunConfig, Task, load_run_config, parse_run_config
from .commands import (
    EXIT_ERROR,
    EXIT_FAILED,
    EXIT_OK,
    cmd_benchmark,
    cmd_correlate,
    cmd_cost,
    cmd_estimate,
    cmd_fixture,
    run_task,
)
from .main import build_parser, main

__all__ = [
    'RunConfig',
    'Task',
    'load_run_config',
    'parse_run_config',
    'EXIT_ERROR',
    'EXIT_FAILED',
    'EXIT_OK',
    'cmd_benchmark',
    'cmd_correlate',
    'cmd_cost',
    'cmd_estimate',
    'cmd_fixture',
    'run_task',
    'build_parser',
    'main',
]
