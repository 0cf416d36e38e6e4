from pathlib import Path

import pytest

from dislofix import _debug
from dislofix.generate import GenConfig, random_family, random_space, trial_rng
from dislofix.metric import DislocatedSpace

FIXTURES = Path(__file__).parent / "fixtures"

# every fast-path Hausdorff / M_T / N_S call is replayed through the oracle
_debug.enable(True)


# (criterion, name, passed, detail) lines recorded by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_line(f"oracle comparisons this session: {_debug.count()}")
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n, name, ok, detail in sorted(ACCEPTANCE, key=lambda r: str(r[0])):
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n} {name}: {detail}")


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def max_space(values, **kw):
    return DislocatedSpace.from_formula("max", values, **kw)


def usual_space(values, **kw):
    return DislocatedSpace.from_table([[abs(a - b) for b in values] for a in values], **kw)


def random_space_and_family(seed, trial, **cfg):
    c = GenConfig(rng_seed=seed, **cfg)
    rng = trial_rng(c, trial)
    space = random_space(c, trial, rng)
    return space, random_family(space, c, rng)
