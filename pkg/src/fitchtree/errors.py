"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FitchTreeError(Exception):
    """Base class of every error raised by fitchtree."""


class LabelDomainError(FitchTreeError, ValueError):
    """An argument refers to labels or vertices outside the allowed domain.

    Raised for unknown labels, foreign vertices, empty vertex sets,
    incomparable path endpoints, leaf/label mismatches and size guards.
    """


class StructureError(FitchTreeError, ValueError):
    """A tree or set family violates a structural invariant.

    The message names the violated constraint and, where applicable, the
    offending vertex.
    """


class NotAHierarchyError(StructureError):
    """A cluster family is not a hierarchy.

    ``witness`` carries the overlapping pair of sets when the failure is an
    overlap, ``None`` when the ground set or a singleton is missing.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ContractError(FitchTreeError, ValueError):
    """A documented precondition of an operation was violated by the caller."""


class NotFitchError(ContractError):
    """An operation requiring a Fitch relation received a non-Fitch one.

    ``witness`` carries the recognizer witness that refutes the input.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(FitchTreeError, ValueError):
    """Malformed textual input.

    ``position`` locates the defect: a byte offset for Newick input, a line
    number for edge lists, an array index for relation JSON.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class RecognizerDisagreement(FitchTreeError):
    """The two recognition routes returned different verdicts.

    Both routes are proven equivalent, so this is always an implementation
    bug, never an input problem.
    """
