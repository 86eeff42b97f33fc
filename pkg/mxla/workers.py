import asyncio
import logging
import math
import time
from typing import NamedTuple, Optional

import numpy as np

from config import get_settings
from errors import ConfigError
from models import ArrayConfig, FocusSpec, PatternKind, PatternSweep, PolarPoint, SweepSample, SweepSpec, SweepVariable
from patterns import evaluate, to_db

logger = logging.getLogger(__name__)


class SweepJob(NamedTuple):
    config: ArrayConfig
    kind: PatternKind
    label: str = ""


# ============================================================
# SWEEP GRID
# ============================================================

def _check_visible(spec: SweepSpec):
    if spec.variable is SweepVariable.SPATIAL_FREQ_DIFF:
        sin_focus = spec.fixed_focus.sin
        if sin_focus + spec.start < -1 - 1e-12 or sin_focus + spec.stop > 1 + 1e-12:
            raise ConfigError(
                f"Δθ range [{spec.start}, {spec.stop}] leaves the visible region for a focus at "
                f"sinθ' = {sin_focus:.6f}"
            )
    elif spec.variable is SweepVariable.DISTANCE:
        if spec.start <= 0:
            raise ConfigError(f"distance sweep must start above 0 m, got {spec.start}")
    elif spec.start < -math.pi / 2 or spec.stop > math.pi / 2:
        raise ConfigError(f"angle sweep [{spec.start}, {spec.stop}] rad exceeds [-π/2, π/2]")


def observation_point(spec: SweepSpec, x: float) -> PolarPoint:
    """Observation location of one sweep sample."""
    if spec.variable is SweepVariable.SPATIAL_FREQ_DIFF:
        sin_obs = float(np.clip(spec.fixed_focus.sin + x, -1.0, 1.0))
        return PolarPoint(distance=spec.observation_distance, angle=math.asin(sin_obs))
    if spec.variable is SweepVariable.DISTANCE:
        return PolarPoint(distance=x, angle=spec.observation_angle)
    return PolarPoint(distance=spec.observation_distance, angle=x)


def sweep_model(config: ArrayConfig, spec: SweepSpec, kind: PatternKind, label: str = "") -> PatternSweep:
    """Evaluate one pattern kind over the sweep grid (synchronous)."""
    samples = []
    for x in spec.grid():
        focus = FocusSpec(intended=spec.fixed_focus, observed=observation_point(spec, float(x)))
        gain = evaluate(config, focus, kind)
        samples.append(SweepSample(float(x), gain, to_db(gain)))
    return PatternSweep(spec=spec, model=PatternKind(kind), config=config, samples=samples, label=label)


# ============================================================
# CONCURRENT ENGINE
# ============================================================

async def run_jobs(spec: SweepSpec, jobs: list[SweepJob], workers: Optional[int] = None) -> list[PatternSweep]:
    """
    One sweep per job, evaluated concurrently in worker threads and returned
    in job order. Every failure is logged per label; the first one is re-raised.
    """
    _check_visible(spec)
    if not jobs:
        logger.info("No models requested, nothing to sweep")
        return []

    semaphore = asyncio.Semaphore(workers or get_settings().sweep_workers)

    async def _bounded(job: SweepJob) -> PatternSweep:
        async with semaphore:
            return await asyncio.to_thread(sweep_model, job.config, spec, job.kind, job.label)

    logger.info(f"🔄 Sweeping {spec.variable.value} over [{spec.start}, {spec.stop}] "
                f"({spec.steps} steps) for {len(jobs)} model(s)...")
    start_time = time.time()

    results = await asyncio.gather(*(_bounded(job) for job in jobs), return_exceptions=True)

    failures = []
    for job, result in zip(jobs, results):
        name = job.label or PatternKind(job.kind).value
        if isinstance(result, Exception):
            logger.error(f"{name} sweep failed: {result}")
            failures.append(result)
        else:
            logger.info(f"{name} sweep: {len(result.samples)} samples, peak {max(result.gains):.4f}")
    if failures:
        raise failures[0]

    elapsed = time.time() - start_time
    logger.info(f"✅ Sweeps complete in {elapsed:.1f}s")
    return list(results)


def run_jobs_sync(spec: SweepSpec, jobs: list[SweepJob], workers: Optional[int] = None) -> list[PatternSweep]:
    """Run the async engine to completion on a private event loop."""
    loop = asyncio.new_event_loop()
    try:
        return loop.run_until_complete(run_jobs(spec, jobs, workers))
    finally:
        loop.close()


def run_sweep(config: ArrayConfig, spec: SweepSpec, models: list) -> list[PatternSweep]:
    """One PatternSweep per requested model, in the order requested."""
    return run_jobs_sync(spec, [SweepJob(config, PatternKind(getattr(m, "value", m))) for m in models])
