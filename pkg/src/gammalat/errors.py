"""Exception types raised by the public API.

Input-shaped problems (bad permutations, bad subgroups, mismatched groups)
and computation-shaped problems (no invertible intertwiner found) are kept
as distinct classes so callers can map them to different exit codes.
"""

from __future__ import annotations

__all__ = [
    "GammalatError",
    "NotAPermutation",
    "ClosureTooLarge",
    "NotASubgroup",
    "NotAHomomorphism",
    "NotUnimodular",
    "InvalidCocycle",
    "GroupMismatch",
    "CharacterMismatch",
    "NotInRationalSpan",
    "NoInvertibleIntertwiner",
    "NotFiniteIndex",
    "InternalContradiction",
    "UnknownName",
    "WorkspaceError",
]


class GammalatError(Exception):
    """Base class for every error raised by this package."""


class NotAPermutation(GammalatError):
    """A generator list was empty or contained a non-bijective image array."""


class ClosureTooLarge(GammalatError):
    """Group closure exceeded the configured order cap."""


class NotASubgroup(GammalatError):
    """An element set is not closed under the group operation."""


class NotAHomomorphism(GammalatError):
    """A map between groups fails multiplicativity; the message names a witness."""


class NotUnimodular(GammalatError):
    """An action matrix does not have determinant +1 or -1."""


class InvalidCocycle(GammalatError):
    """A candidate cocycle violates the twisting law at some pair."""


class GroupMismatch(GammalatError):
    """Two objects that must live over the same group do not."""


class CharacterMismatch(GammalatError):
    """Two lattices that must have equal rational characters do not."""


class NotInRationalSpan(GammalatError):
    """A vector lies outside the rational span of the given basis."""


class NoInvertibleIntertwiner(GammalatError):
    """The intertwiner search exhausted its budget without an invertible map."""


class NotFiniteIndex(GammalatError):
    """An embedding expected to have finite cokernel is not full rank."""


class InternalContradiction(GammalatError):
    """An identity guaranteed by theory failed; indicates a bug upstream."""


class UnknownName(GammalatError):
    """A workspace reference names an object that does not exist."""


class WorkspaceError(GammalatError):
    """A workspace document is malformed or fails validation."""
