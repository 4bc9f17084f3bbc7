import os

import pytest

from ballq.pipeline import RunConfig, Workspace

# criterion -> list of (label, passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def budget() -> float:
    return float(os.environ.get("BALLQ_BUDGET", "0") or 0)


@pytest.fixture(scope="session")
def ws():
    cfg = RunConfig(budget=budget(), with_z=os.environ.get("BALLQ_Z_FILE") or None,
                    cache_dir=os.environ.get("BALLQ_CACHE") or None)
    return Workspace(cfg.validate())


@pytest.fixture(scope="session")
def ctx(ws):
    return ws.ctx


@pytest.fixture(scope="session")
def data(ws):
    return ws.data


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        for label, status, detail in ACCEPTANCE[k]:
            terminalreporter.write_line(f"criterion {k:>2} {label:<28} {status:<12} {detail}")
