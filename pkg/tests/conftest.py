import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

CORPUS = HERE / "corpus"
GOLDEN = HERE / "golden"

# filled by test_acceptance; printed at the end of every run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def single_policy_text():
    return (CORPUS / "valid" / "single_policy.egen").read_text()


@pytest.fixture
def single_policy(single_policy_text):
    from egen import parse
    model, diags = parse(single_policy_text, "single_policy.egen")
    assert diags == []
    return model


@pytest.fixture
def three_band():
    from egen import parse
    model, diags = parse((CORPUS / "valid" / "three_band.egen").read_text(), "three_band.egen")
    assert diags == []
    return model


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
