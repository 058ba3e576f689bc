import pytest

from orderchain.harness import random_poset
from orderchain.poset import poset_from_covers

# a=0, b=1, c=2, g=3, h=4
X_COVERS = [(0, 2), (1, 2), (2, 3), (2, 4)]


def chain(d):
    return poset_from_covers(d, [(i, i + 1) for i in range(d - 1)])


def antichain(d):
    return poset_from_covers(d, [])


@pytest.fixture
def X():
    return poset_from_covers(5, X_COVERS)


@pytest.fixture
def small_posets():
    """A mixed bag of posets with d <= 6."""
    out = [chain(1), chain(3), antichain(2), antichain(4), poset_from_covers(5, X_COVERS)]
    out += [random_poset(d, dens, seed) for seed, (d, dens) in enumerate(
        [(4, 0.3), (5, 0.5), (5, 0.7), (6, 0.4), (6, 0.6), (6, 0.25)]
    )]
    return out


_ACCEPTANCE = {}


def pytest_configure(config):
    config._acceptance_results = _ACCEPTANCE


def record_criterion(number, title, ok, detail=""):
    _ACCEPTANCE[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}" + (f"  ({detail})" if detail else ""))
