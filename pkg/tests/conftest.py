"""Shared fixtures for the albscreen test-suite"""

from pathlib import Path
from typing import Sequence

import numpy as np
import pytest

from albscreen.core.dataio import Dataset, save_csv
from albscreen.core.simgen import generate
from albscreen.schemas.simulation_schemas import ScenarioConfig


def one_feature(class0: Sequence[float], class1: Sequence[float]) -> Dataset:
    """Single-column dataset, label-0 rows first"""
    values = list(class0) + list(class1)
    labels = [0] * len(class0) + [1] * len(class1)
    return Dataset(features=np.array(values).reshape(-1, 1), labels=labels)


def write_text(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def shape_sim():
    """Shape scenario, m = n = 20, p = 40, half the features important"""
    return generate(ScenarioConfig(scenario="shape", m=20, n=20, p=40, r=0.5, seed=7))


@pytest.fixture
def null_dataset():
    """Global null: 60 N(0,1) features, m = n = 20"""
    return generate(ScenarioConfig(scenario="location", m=20, n=20, p=60, r=0.0, seed=11)).dataset


@pytest.fixture
def shape_csv(tmp_path, shape_sim):
    return save_csv(shape_sim.dataset, tmp_path / "shape.csv")
