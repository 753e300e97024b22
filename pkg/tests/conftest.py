from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from nijenhuis import fixtures  # noqa: E402
from nijenhuis.core import LinearMap, NijBimodule  # noqa: E402
from nijenhuis.tensor import MultiMap  # noqa: E402

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

FIXTURE_NAMES = ["K2", "T3", "K2-semidirect", "random3"]


# acceptance reporting: criterion number -> (description, outcome)
_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    rep = outcome.get_result()
    number, text = mark.args
    entry = _CRITERIA.setdefault(number, [text, "PASS"])
    if rep.failed:
        entry[1] = "FAIL"
    elif rep.skipped and entry[1] == "PASS":
        entry[1] = "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, result = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {result}  {text}")


def standard(name: str):
    return fixtures.standard()[name]


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_pair(request):
    """(name, NijAlgebra, adjoint NijBimodule) for every standard fixture."""
    na = standard(request.param)
    return request.param, na, NijBimodule.adjoint(na)


def rand_entries(rng: random.Random, shape, lo: int = -2, hi: int = 2) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    flat = out.reshape(-1)
    for i in range(flat.size):
        flat[i] = Fraction(rng.randint(lo, hi))
    return out


def rand_map(rng: random.Random, arity: int, d: int, w: int) -> MultiMap:
    return MultiMap(arity, d, w, rand_entries(rng, (d,) * arity + (w,)))


def rand_linear(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> LinearMap:
    return LinearMap(rand_entries(rng, (rows, cols), lo, hi))


def as_fractions(arr) -> np.ndarray:
    return np.vectorize(Fraction, otypes=[object])(np.asarray(arr, dtype=object))
