import sys
from pathlib import Path

import pytest

FIGURES_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(FIGURES_DIR))


@pytest.fixture
def data_dir():
    return FIGURES_DIR / "data"
