"""
Test suite for the sweep worker pool
"""

import time

import pytest

from src.cli.runner import Job, run_all, run_jobs


def _sleepy(value, delay):
    def fn():
        time.sleep(delay)
        return value

    return fn


@pytest.mark.asyncio
async def test_outcomes_sorted_by_seq():
    """Test later jobs finishing first still come back in seq order"""
    jobs = [Job(i, f"job {i}", _sleepy(i * 10, 0.05 * (3 - i))) for i in range(4)]
    outcomes = await run_all(jobs, max_workers=4)
    assert [o.seq for o in outcomes] == [0, 1, 2, 3]
    assert [o.value for o in outcomes] == [0, 10, 20, 30]
    assert all(o.status == "ok" for o in outcomes)


@pytest.mark.asyncio
async def test_failures_are_recorded():
    def boom():
        raise ArithmeticError("no convergence")

    outcomes = await run_all([Job(0, "ok", lambda: 1), Job(1, "bad", boom)], max_workers=1)
    assert outcomes[0].status == "ok"
    assert outcomes[1].status == "error"
    assert isinstance(outcomes[1].error, ArithmeticError)


def test_run_jobs_values_and_errors():
    assert run_jobs([Job(1, "b", lambda: "b"), Job(0, "a", lambda: "a")], max_workers=2) == ["a", "b"]

    def boom():
        raise ValueError("first")

    with pytest.raises(ValueError):
        run_jobs([Job(0, "bad", boom), Job(1, "ok", lambda: 1)], max_workers=2)


def test_worker_count_from_settings(monkeypatch, clean_settings):
    monkeypatch.setenv("TREETEN_THREADS", "1")
    assert run_jobs([Job(i, str(i), lambda i=i: i * i) for i in range(5)]) == [0, 1, 4, 9, 16]
