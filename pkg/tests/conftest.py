import random

import pytest

from sextic.skeletons import enumerate_e7_models


@pytest.fixture(scope="session")
def e7_models():
    return enumerate_e7_models()


@pytest.fixture
def rng():
    return random.Random(20240607)


ACCEPTANCE: dict = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
