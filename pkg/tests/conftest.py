import functools

import pytest

from hidalp.eigen import eigen_symbols
from hidalp.modsym import build_space

ACCEPTANCE_LINES = []


def record(label, ok, detail=""):
    line = f"criterion {label}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


@functools.lru_cache(maxsize=None)
def space(N, k, group="gamma0"):
    return build_space(N, k, group)


@functools.lru_cache(maxsize=None)
def symbols(N, k, sign, p, prec=12):
    return tuple(eigen_symbols(space(N, k, "gamma0" if k % 2 == 0 else "gamma1"), sign, p, prec))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    import random
    return random.Random(20261016)
