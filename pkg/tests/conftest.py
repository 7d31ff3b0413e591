import sys

import pytest

from moravak.groups import build_group, dihedral_spec, g36_spec
from moravak.verifier import g36_presentation


@pytest.fixture(scope="session")
def g36():
    return build_group(g36_spec())


@pytest.fixture(scope="session")
def d8():
    return build_group(dihedral_spec(4))


@pytest.fixture(scope="session")
def g36_pres():
    return g36_presentation()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
