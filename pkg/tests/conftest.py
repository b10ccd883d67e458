import math
import warnings

import pytest
from hypothesis import settings

from sideband_squeezing.config import PRESETS, params_from_values

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

TWO_PI = 2 * math.pi


def preset_params(name, **overrides):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        params, _ = params_from_values({**PRESETS[name], **overrides})
    return params


@pytest.fixture
def fig2():
    return preset_params("fig2")


@pytest.fixture
def fig3():
    return preset_params("fig3")


@pytest.fixture
def fig4():
    return preset_params("fig4")


# acceptance bookkeeping: one line per criterion at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
