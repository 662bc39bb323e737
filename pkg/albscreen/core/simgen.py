"""
Synthetic two-class datasets
============================
Column j is important with probability r (one Bernoulli draw per column).
Important columns draw each class from the scenario's pair of
distributions; unimportant columns are N(0,1) in both classes. Label-0
rows (n of them) come first, then the m label-1 rows.

Seeding: the importance mask uses SeedSequence(seed, spawn_key=(0,)) and
column j of stream s uses SeedSequence(seed, spawn_key=(s, j)), so a
column's values never depend on how many workers generated the others.
Student-t draws are z / sqrt(chi2(df) / df); mixture draws pick a component
with a fair coin and add N(0,1).
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

import numpy as np

from albscreen.core.dataio import Dataset, save_csv, save_mask
from albscreen.core.parallel import run_parallel
from albscreen.schemas.simulation_schemas import Scenario, ScenarioConfig

logger = logging.getLogger(__name__)

TRAIN_STREAM = 1
TEST_STREAM = 2

Sampler = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class SimulatedDataset:
    dataset: Dataset
    important_mask: np.ndarray

    @property
    def important(self):
        return [int(j) for j in np.flatnonzero(self.important_mask)]


# ============================================================================
# SAMPLERS
# ============================================================================

def sample_normal(rng: np.random.Generator, size: int, mean: float = 0.0, sd: float = 1.0) -> np.ndarray:
    return mean + sd * rng.standard_normal(size)


def sample_student_t(rng: np.random.Generator, size: int, df: float) -> np.ndarray:
    z = rng.standard_normal(size)
    return z / np.sqrt(rng.chisquare(df, size) / df)


def sample_mixture(rng: np.random.Generator, size: int, offset: float) -> np.ndarray:
    """1/2 N(-offset, 1) + 1/2 N(offset, 1)"""
    left = rng.random(size) < 0.5
    centers = np.where(left, -offset, offset)
    return centers + rng.standard_normal(size)


def scenario_samplers(config: ScenarioConfig) -> Tuple[Sampler, Sampler]:
    """(class-0 sampler, class-1 sampler) for important columns"""
    if config.scenario == Scenario.LOCATION:
        return (lambda rng, k: sample_normal(rng, k),
                lambda rng, k: sample_normal(rng, k, mean=config.mean_shift))
    if config.scenario == Scenario.SCALE:
        return (lambda rng, k: sample_normal(rng, k),
                lambda rng, k: sample_normal(rng, k, sd=config.scale_sd))
    return (lambda rng, k: sample_student_t(rng, k, config.t_df),
            lambda rng, k: sample_mixture(rng, k, config.mixture_offset))


# ============================================================================
# GENERATORS
# ============================================================================

def importance_mask(config: ScenarioConfig) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(0,)))
    return rng.random(config.p) < config.r


def _draw_rows(
        config: ScenarioConfig,
        mask: np.ndarray,
        n: int,
        m: int,
        stream: int,
        threads: Optional[int],
) -> Dataset:
    draw0, draw1 = scenario_samplers(config)

    def draw_column(j: int) -> np.ndarray:
        rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(stream, j)))
        if mask[j]:
            return np.concatenate([draw0(rng, n), draw1(rng, m)])
        return rng.standard_normal(n + m)

    columns = run_parallel(draw_column, range(config.p), threads)
    return Dataset(
        features=np.column_stack(columns),
        labels=np.concatenate([np.zeros(n, dtype=np.int8), np.ones(m, dtype=np.int8)]),
        label_mapping={"0": 0, "1": 1},
    )


def generate(config: ScenarioConfig, threads: Optional[int] = None) -> SimulatedDataset:
    """
    Generate one dataset

    Returns:
        SimulatedDataset; identical config gives a bitwise-identical result
    """
    mask = importance_mask(config)
    dataset = _draw_rows(config, mask, config.n, config.m, TRAIN_STREAM, threads)
    logger.info(
        f"✅ Generated {config.scenario.value} data: n={config.n}, m={config.m}, "
        f"p={config.p}, {int(mask.sum())} important"
    )
    return SimulatedDataset(dataset=dataset, important_mask=mask)


def generate_train_test(
        config: ScenarioConfig,
        test_m: int,
        test_n: int,
        threads: Optional[int] = None,
) -> Tuple[SimulatedDataset, SimulatedDataset]:
    """
    Training data plus an independent test set sharing one importance mask
    """
    mask = importance_mask(config)
    train = _draw_rows(config, mask, config.n, config.m, TRAIN_STREAM, threads)
    test = _draw_rows(config, mask, test_n, test_m, TEST_STREAM, threads)
    return (
        SimulatedDataset(dataset=train, important_mask=mask),
        SimulatedDataset(dataset=test, important_mask=mask),
    )


def write_simulated(sim: SimulatedDataset, out_prefix: Union[str, Path]) -> Tuple[Path, Path]:
    """Write <prefix>.csv and the <prefix>.mask.txt sidecar"""
    out_prefix = str(out_prefix)
    csv_path = save_csv(sim.dataset, f"{out_prefix}.csv")
    mask_path = save_mask(sim.important_mask, f"{out_prefix}.mask.txt")
    return csv_path, mask_path
