"""
TreeTen - Worker pool for independent sweep points

Jobs run in threads (numpy releases the GIL inside linalg) through an asyncio
fan-out capped by TREETEN_THREADS. Outcomes come back sorted by seq, so the
written tables never depend on completion order.
"""

from __future__ import annotations

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

from src.utils.config import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Job:
    seq: int
    label: str
    fn: Callable[[], Any]


@dataclass
class JobOutcome:
    seq: int
    label: str
    status: str  # "ok" | "error"
    value: Any
    elapsed_ms: int
    error: Optional[BaseException] = None


async def run_all(jobs: Sequence[Job], max_workers: Optional[int] = None) -> List[JobOutcome]:
    """Run every job; failures are recorded, never raised here."""
    workers = max_workers or get_settings().threads
    sem = asyncio.Semaphore(workers)
    outcomes: List[JobOutcome] = []

    async def run_one(job: Job) -> None:
        async with sem:
            t0 = time.perf_counter()
            try:
                value = await asyncio.to_thread(job.fn)
                elapsed = int((time.perf_counter() - t0) * 1000)
                outcomes.append(JobOutcome(job.seq, job.label, "ok", value, elapsed))
                logger.debug(f"✅ {job.label} done in {elapsed} ms")
            except Exception as e:
                elapsed = int((time.perf_counter() - t0) * 1000)
                outcomes.append(JobOutcome(job.seq, job.label, "error", None, elapsed, e))
                logger.error(f"❌ {job.label} failed: {type(e).__name__}: {e}")

    logger.info(f"🚀 running {len(jobs)} jobs on {workers} workers")
    await asyncio.gather(*(run_one(job) for job in jobs))
    return sorted(outcomes, key=lambda o: o.seq)


def run_jobs(jobs: Sequence[Job], max_workers: Optional[int] = None) -> List[Any]:
    """Blocking front end: values in seq order, re-raising the first failure by seq."""
    outcomes = asyncio.run(run_all(jobs, max_workers))
    failed = next((o for o in outcomes if o.status == "error"), None)
    if failed is not None and failed.error is not None:
        raise failed.error
    return [o.value for o in outcomes]
