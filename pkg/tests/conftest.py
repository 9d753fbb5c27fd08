import logging

import numpy as np
import pytest
from click.testing import CliRunner

from cevia.cevian_engine import CevianContext


@pytest.fixture(autouse=True)
def _reset_cli_logging():
    # The CLI binds a handler to the runner's stderr, which is closed afterwards
    yield
    logging.getLogger("cevia").handlers.clear()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def ctx123():
    """The worked example P = (1, 2, 3)."""
    return CevianContext.of(1, 2, 3)
