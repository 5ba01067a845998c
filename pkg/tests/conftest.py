from functools import lru_cache

import pytest

from descent.algebra import DescentAlgebra
from descent.coxeter import CoxeterType, build_coxeter_system
from descent.rep import FieldAnalysis


@lru_cache(maxsize=None)
def algebra(family: str, rank: int) -> DescentAlgebra:
    return DescentAlgebra(build_coxeter_system(CoxeterType.parse(family, rank)))


@lru_cache(maxsize=None)
def analysis(family: str, rank: int, p: int) -> FieldAnalysis:
    return FieldAnalysis(algebra(family, rank), p)


@pytest.fixture
def alg():
    return algebra


@pytest.fixture
def fa():
    return analysis


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
