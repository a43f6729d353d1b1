import pytest

from sigmapbw import finring as fr
from sigmapbw.endo import MapFamily, builtin, identity_map

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            num, title, limit = m.args
            _CRITERIA[num] = {"title": title, "limit": limit, "outcome": "not run", "nodeid": item.nodeid}


def pytest_runtest_logreport(report):
    for c in _CRITERIA.values():
        if c["nodeid"] == report.nodeid:
            if report.when == "call" or report.outcome != "passed":
                c["outcome"] = report.outcome
                c["seconds"] = report.duration


def pytest_terminal_summary(terminalreporter):
    if not any(c["outcome"] != "not run" for c in _CRITERIA.values()):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        c = _CRITERIA[num]
        tag = {"passed": "PASS", "failed": "FAIL"}.get(c["outcome"], c["outcome"].upper())
        secs = f"{c['seconds']:.2f}s" if "seconds" in c else "-"
        terminalreporter.write_line(
            f"criterion {num}: {tag}  ({secs} / limit {c['limit']}s)  {c['title']}")


@pytest.fixture(scope="session")
def ut2eq():
    R = fr.ut2_equal_diag(5)
    fam = MapFamily(R, [identity_map(R), builtin(R, "ut2_negate_b"), builtin(R, "ut2_kill_b")])
    return R, fam


@pytest.fixture(scope="session")
def ut2a():
    R = fr.ut2(5)
    return R, MapFamily(R, [builtin(R, "ut2_keep_a")])


@pytest.fixture(scope="session")
def qswap():
    R = fr.trunc_st(2, 3)
    return R, MapFamily(R, [builtin(R, "swap"), identity_map(R)])


@pytest.fixture(scope="session")
def t2delta():
    R = fr.trunc_t2(2)
    ident = identity_map(R)
    return R, MapFamily(R, [ident], [builtin(R, "t_derivation", ident)])
