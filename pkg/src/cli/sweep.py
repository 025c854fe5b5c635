#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parameter sweeps for warpiso.
Fans one subcommand out over a list of parameter values on a process pool.
"""

import argparse
import copy
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple, Optional

from src.core.errors import DomainError, WarpisoError
from src.core.numerics import configure_quadrature

logger = logging.getLogger(__name__)


class SweepOutcome(NamedTuple):
    """Result of one sweep point; errors travel back as (exit_code, message)"""
    value: object
    payload: Optional[dict]
    exit_code: int = 0
    message: str = ""


def parse_sweep(text):
    """Split name=v1,v2,... into the parameter name and its raw values"""
    name, sep, values = text.partition("=")
    name = name.strip().replace("-", "_")
    raw = [value.strip() for value in values.split(",") if value.strip()]
    if not sep or not name or not raw:
        raise DomainError(f"--sweep expects name=v1,v2,..., got {text!r}")
    return name, raw


def expand_sweep(args, name, values, convert):
    """One namespace per value, in input order"""
    if not hasattr(args, name):
        raise DomainError(f"--sweep parameter {name!r} is not an option of {args.command!r}")

    tasks = []
    for raw in values:
        task = copy.copy(args)
        try:
            setattr(task, name, convert(raw))
        except (TypeError, ValueError, argparse.ArgumentTypeError):
            raise DomainError(f"invalid value {raw!r} for --sweep parameter {name!r}")
        task.sweep = None
        tasks.append((getattr(task, name), task))
    return tasks


def _run_point(job):
    runner, value, task = job
    try:
        # Spawned workers start from the default quadrature targets
        if getattr(task, "quad_tol", None):
            configure_quadrature(*task.quad_tol)
        return SweepOutcome(value, runner(task))
    except WarpisoError as e:
        # Custom exception signatures do not survive pickling; send plain data back
        return SweepOutcome(value, None, e.exit_code, str(e))


def run_sweep(runner, tasks, jobs=1):
    """
    Evaluate runner on every task and return the outcomes in input order.

    runner must be a module-level function so worker processes can import it.
    """
    jobs_list = [(runner, value, task) for value, task in tasks]
    if jobs <= 1 or len(jobs_list) <= 1:
        return [_run_point(job) for job in jobs_list]

    logger.info("Running %d sweep points on %d workers", len(jobs_list), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_run_point, jobs_list))
