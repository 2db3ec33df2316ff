import numpy as np
import pytest

from cliffspec.rng import SplitMix64, random_params, random_triple

_criterion_results: dict[tuple[int, str], list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        key = (marker.args[0], marker.args[1])
        _criterion_results.setdefault(key, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), results in sorted(_criterion_results.items()):
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {title}  ({sum(results)}/{len(results)} checks)")


@pytest.fixture
def rng():
    return SplitMix64(12345)


def sample_params(n, seed=7):
    g = SplitMix64(seed)
    return [random_params(g.split()) for _ in range(n)]


def sample_triples(n, seed=11):
    g = SplitMix64(seed)
    return [random_triple(g.split()) for _ in range(n)]


def random_unitary(g):
    z = np.array([complex(g.uniform(-1, 1), g.uniform(-1, 1)) for _ in range(4)]).reshape(2, 2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
