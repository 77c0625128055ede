import math

import pytest

from rindler_gate.models import DetectorParams, QubitState


@pytest.fixture
def unit_params():
    return DetectorParams(omega=1.0, accel=1.0)


@pytest.fixture
def equal_qubit():
    return QubitState.from_population(0.5, 0.0)


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv("RINDLER_GATE_THREADS", "1")


def close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


SQRT_HALF = math.sqrt(0.5)
