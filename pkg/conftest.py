import sys
from pathlib import Path

import pytest

# Make `src` and `config` importable when pytest runs from elsewhere
PROJECT_ROOT = Path(__file__).resolve().parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.constants import Constants, default_constants


@pytest.fixture
def constants() -> Constants:
    return default_constants()


@pytest.fixture
def magnified() -> Constants:
    """alpha = 0.1 makes every correction large enough to see by eye."""
    return default_constants().model_copy(update={"alpha": 0.1})


@pytest.fixture
def alpha_off() -> Constants:
    return default_constants().model_copy(update={"alpha": 0.0})
