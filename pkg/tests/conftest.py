from __future__ import annotations

from pathlib import Path

import pytest

from qlogic.bridge import QuantumModel, build_model, load_spec
from qlogic.models import Model, build_cm_model

REPO = Path(__file__).resolve().parent.parent
SPEC_DIR = REPO / "specs"
DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def worked_spec():
    return load_spec(SPEC_DIR / "worked_qm.json")


@pytest.fixture(scope="session")
def worked_qm(worked_spec) -> QuantumModel:
    return build_model(worked_spec)


def closed_cm_model(states: tuple[str, ...], universe: int = 3) -> Model:
    """CM model whose predicate table realizes every subset of states, so
    the table is closed under all the connectives."""
    columns = []
    for bits in range(2 ** len(states)):
        column = {s: bool(bits >> i & 1) for i, s in enumerate(states)}
        columns.append(column)
    names = [f"P{i}" for i in range(len(columns))]
    truth = {
        (s, name): columns[i][s] for i, name in enumerate(names) for s in states
    }
    return build_cm_model(states, names, truth, universe)


@pytest.fixture()
def cm_two_states() -> Model:
    return closed_cm_model(("S1", "S2"), universe=3)
