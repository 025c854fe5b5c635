import argparse

import pytest

from src.cli.sweep import SweepOutcome, expand_sweep, parse_sweep, run_sweep
from src.core.errors import DomainError
from src.core.numerics import quadrature_tolerances


def square_or_fail(task):
    if task.x < 0:
        raise DomainError(f"negative input {task.x}")
    return {"square": task.x * task.x}


def report_quadrature(task):
    return {"targets": quadrature_tolerances()}


def test_parse_sweep():
    assert parse_sweep("half-width=6, 9,12") == ("half_width", ["6", "9", "12"])


@pytest.mark.parametrize("text", ["half_width", "=1,2", "half_width="])
def test_parse_sweep_errors(text):
    with pytest.raises(DomainError):
        parse_sweep(text)


def test_expand_sweep_keeps_order():
    args = argparse.Namespace(command="spectrum", x=0.0, sweep="x=3,1,2")
    tasks = expand_sweep(args, "x", ["3", "1", "2"], float)
    assert [value for value, _ in tasks] == [3.0, 1.0, 2.0]
    assert all(task.sweep is None for _, task in tasks)
    assert args.x == 0.0


def test_expand_sweep_errors():
    args = argparse.Namespace(command="spectrum", x=0.0, sweep=None)
    with pytest.raises(DomainError):
        expand_sweep(args, "y", ["1"], float)
    with pytest.raises(DomainError):
        expand_sweep(args, "x", ["one"], float)


def test_run_sweep_reports_errors_as_data():
    args = argparse.Namespace(command="spectrum", x=0.0, sweep=None)
    outcomes = run_sweep(square_or_fail, expand_sweep(args, "x", ["2", "-1", "3"], float))
    assert outcomes[0] == SweepOutcome(2.0, {"square": 4.0})
    assert outcomes[1].payload is None
    assert outcomes[1].exit_code == 1
    assert "negative input" in outcomes[1].message
    assert outcomes[2].payload == {"square": 9.0}


@pytest.mark.parametrize("jobs", [1, 2])
def test_sweep_points_use_the_stored_quadrature_targets(jobs):
    args = argparse.Namespace(command="spectrum", x=0.0, sweep=None, quad_tol=(1e-7, 1e-12))
    outcomes = run_sweep(report_quadrature, expand_sweep(args, "x", ["1", "2"], float), jobs)
    assert [outcome.payload["targets"] for outcome in outcomes] == [(1e-7, 1e-12)] * 2
