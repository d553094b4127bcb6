import pytest
import yaml

from parasym.golden import TABLE_IDS, golden_dir
from parasym.realform import catalog_hash

_ACCEPTANCE: list = []


def pytest_sessionstart(session):
    """Refuse to run against golden tables recorded for a different catalog."""
    want = catalog_hash()
    for t in TABLE_IDS:
        path = golden_dir() / f"table{t}.yaml"
        with open(path) as fh:
            for line in fh:
                if line.startswith("catalog_sha256:"):
                    got = yaml.safe_load(line)["catalog_sha256"]
                    break
            else:
                got = None
        if got != want:
            pytest.exit(f"{path.name} was recorded for catalog {got}, current catalog is {want}", returncode=3)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
