import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tools"))  # the independent reference oracle

import talentbayes as tb

FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def ds6_schema():
    return tb.parse_schema((FIXTURES / "ds6.schema.json").read_text())


@pytest.fixture(scope="session")
def ds6_dataset(ds6_schema):
    return tb.load_dataset((FIXTURES / "ds6.csv").read_text(), ds6_schema)


@pytest.fixture(scope="session")
def ds6_model(ds6_dataset):
    return tb.train(ds6_dataset)
