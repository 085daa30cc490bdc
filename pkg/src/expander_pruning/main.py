# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import logging.config

from expander_pruning import __app_info__
from expander_pruning.config import ENV
from expander_pruning.harness.cli import run_cli
from expander_pruning.logging_config import LOGGING_CONFIG

# Load the logging configuration
logging.config.dictConfig(LOGGING_CONFIG)

logger = logging.getLogger(__name__)


def main() -> None:
    """Entrypoint of the `expander_pruning` command."""
    if ENV.is_development():
        logger.debug("Running in development mode")
    logger.info("Application details: %s", __app_info__)
    run_cli()


if __name__ == "__main__":
    main()
