# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Common exceptions.

Every exception names the property that was violated. Every preset raises them; a run that hits one stops and
reports it.
"""


class ExpanderPruningError(Exception):
    """Base class for all errors raised by the library."""

    pass


class GraphConstructionError(ExpanderPruningError):
    """Exception raised when a graph cannot be built (self-loop, endpoint out of range, bad file)."""

    pass


class EdgeAlreadyDeletedError(ExpanderPruningError):
    """Exception raised when a dead edge is deleted again."""

    pass


class DemandBalanceError(ExpanderPruningError):
    """Exception raised when total effective source exceeds total sink capacity."""

    pass


class InfeasibleFlowError(ExpanderPruningError):
    """Exception raised when a flow exceeds its capacity or goes negative."""

    pass


class ForestViolationError(ExpanderPruningError):
    """Exception raised when a dynamic forest operation would break the rooted-forest rules."""

    pass


class TreeRootError(ExpanderPruningError):
    """Exception raised when a path query is issued at a tree root."""

    pass


class CertificateParameterError(ExpanderPruningError):
    """Exception raised when certificate parameters do not match."""

    pass


class ExpansionPreconditionError(ExpanderPruningError):
    """Exception raised when the arithmetic preconditions of the expansion bound fail."""

    pass


class BatchStateCorruptedError(ExpanderPruningError):
    """Exception raised when a deletion batch has an illegal size or no rebuild index exists."""

    pass


class DeletionBudgetExceededError(ExpanderPruningError):
    """Exception raised when more deletions arrive than the configured budget allows."""

    pass


class SparseCutSearchError(ExpanderPruningError):
    """Exception raised when the residual ball search reaches the round limit without a sparse cut."""

    pass


class ExcessBoundError(ExpanderPruningError):
    """Exception raised when the excess left at a level exceeds the per-level bound."""

    pass


class VolumeBoundError(ExpanderPruningError):
    """Exception raised when the volume pruned at a level exceeds the per-level bound."""

    pass


class ReinitializationError(ExpanderPruningError):
    """Exception raised when a layer flow cannot route its demands or a rebuild precondition fails."""

    pass


class FullDrainError(ExpanderPruningError):
    """Exception raised when a layer that is being replaced still holds unpruned vertices."""

    pass


class JobDeadlineError(ExpanderPruningError):
    """Exception raised when a background rebuild job misses its deletion window."""

    pass


class MonotonicityError(ExpanderPruningError):
    """Exception raised when the pruned set would shrink."""

    pass


class ExpanderPreconditionError(ExpanderPruningError):
    """Exception raised when the input graph is not a φ-expander for the claimed φ."""

    pass


class ExperimentError(ExpanderPruningError):
    """Exception raised when an experiment definition is invalid."""

    pass


class LogVerificationError(ExpanderPruningError):
    """Exception raised when a replayed event log does not match its recorded run."""

    pass
