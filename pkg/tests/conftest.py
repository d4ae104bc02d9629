import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def ex1():
    from gclassgraph.constructions import example1_pair

    return example1_pair()


@pytest.fixture(scope="session")
def ex2():
    from gclassgraph.constructions import example2_composite

    return example2_composite()


@pytest.fixture(scope="session")
def agl8():
    from gclassgraph.constructions import agl_semilinear

    return agl_semilinear(8)


@pytest.fixture(scope="session")
def s3():
    from gclassgraph.constructions import symmetric

    return symmetric(3)


@pytest.fixture(scope="session")
def q8():
    from gclassgraph.constructions import quaternion8

    return quaternion8()


@pytest.fixture(scope="session")
def corpus():
    from gclassgraph.constructions import builtin_groups

    return builtin_groups()


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
