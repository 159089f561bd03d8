import pytest

from coprime_extremal.primes import build_prime_table, table_with_primes

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def table():
    return build_prime_table(2000)


@pytest.fixture(scope="session")
def big_table():
    return table_with_primes(10_000)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}")
