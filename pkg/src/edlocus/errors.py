"""Typed errors shared across the package.

Every failure mode a caller is expected to branch on gets its own class;
the CLI maps these onto process exit codes (input 4, resources 3,
failed genericity/integrality hypotheses 2).
"""

from __future__ import annotations


class EdlocusError(Exception):
    """Base class for all package errors."""


class InputError(EdlocusError):
    """Malformed input: parse failures, ring mismatches, bad flags."""


class ResourceExhausted(EdlocusError):
    """A configured engine cap (pairs, degree, wall clock) was hit.

    Raised instead of ever returning a truncated or wrong basis.
    """

    def __init__(self, what: str, limit: object) -> None:
        super().__init__(f"resource cap exceeded: {what} (limit {limit})")
        self.what = what
        self.limit = limit


class HypothesisFailure(EdlocusError):
    """A genericity or integrality hypothesis did not survive checking."""


class SliceError(HypothesisFailure):
    """Random linear slicing produced an unusable system.

    Either the sliced system is not zero-dimensional or two independent
    seeds disagreed on the count.
    """


class PositiveDimensionalFiber(HypothesisFailure):
    """A fiber that should be finite has positive dimension.

    Distinguished because for data-locus fibers this is a meaningful
    geometric answer (the data point sees infinitely many critical
    points), not a bug.
    """


class NotOnVariety(HypothesisFailure):
    """A point claimed to lie on a variety does not (empty fiber)."""
