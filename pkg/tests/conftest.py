import pytest

from instances import build_instance, golden_instances

from twistalg.pipeline import build_from_problem


@pytest.fixture(scope="session")
def golden_builds():
    return {k: build_from_problem(pf) for k, pf in golden_instances().items()}


@pytest.fixture(scope="session")
def assorted_builds():
    """A cross-section of the sampled families for structural tests."""
    return [build_from_problem(build_instance(i)) for i in (0, 2, 3, 4, 6, 7, 9)]
