# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later


class OracleLimitError(Exception):
    """Raised when an instance is too large to be enumerated exhaustively."""

    pass


class ForestError(Exception):
    """Raised when a naive forest operation is invalid."""

    pass
