import logging

import pytest

from ..seldkit.MPLogger import LOGGER_NAME


@pytest.fixture(autouse=True)
def reset_seldkit_logger():
    """Drop handlers left behind by a test that failed before closing its
    PipelineManager or MPLogger."""
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
