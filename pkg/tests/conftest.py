import json
from pathlib import Path

import pytest

from ontobuild import NormalizationConfig, QuestionMapping, normalize, parse_ontology

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures" / "ontodpm"
DATA = Path(__file__).resolve().parent / "data"

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_source():
    return (FIXTURES / "ontodpm.dlx").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def fixture_doc(fixture_source):
    return parse_ontology(fixture_source, "ontodpm")


@pytest.fixture(scope="session")
def cfg():
    return NormalizationConfig()


@pytest.fixture(scope="session")
def fixture_graph(fixture_doc, cfg):
    return normalize(fixture_doc, cfg)


@pytest.fixture(scope="session")
def questions():
    records = json.loads((FIXTURES / "questions.json").read_text(encoding="utf-8"))
    return [QuestionMapping.from_dict(r) for r in records]


@pytest.fixture(scope="session")
def expectations():
    return json.loads((FIXTURES / "expected_srs.json").read_text(encoding="utf-8"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
