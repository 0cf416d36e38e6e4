"""Point-to-set distance, one-sided excess and the Pompeiu-Hausdorff metric.

On a finite ground set every infimum is a minimum and every supremum a
maximum, so all three quantities are exact in Exact mode.  The vectorized
routines here work on the integer-scaled distance matrix of the space; the
independent double-loop versions live in :mod:`dislofix.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _debug
from .errors import EmptySubset, MixedSpaces
from .metric import DislocatedSpace, Number, tail_window


@dataclass(frozen=True)
class FiniteSubset:
    """Nonempty subset of a finite space, members sorted and unique."""

    space: DislocatedSpace
    members: tuple

    def __post_init__(self):
        if len(self.members) == 0:
            raise EmptySubset("subsets must be nonempty")
        members = tuple(sorted({self.space.index(m) for m in self.members}))
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p):
        return p in self.members

    def __eq__(self, other):
        if not isinstance(other, FiniteSubset):
            return NotImplemented
        return self.space is other.space and self.members == other.members

    def __hash__(self):
        return hash((id(self.space), self.members))

    def __repr__(self):
        return "{" + ", ".join(str(m) for m in self.members) + "}"


def subset(space: DislocatedSpace, members) -> FiniteSubset:
    return FiniteSubset(space, tuple(members))


class SetFamily:
    """Ordered list of distinct subsets: the vertex universe for graphs and maps.

    The full Hausdorff table of the family is computed lazily, once.
    """

    def __init__(self, space: DislocatedSpace, subsets):
        subs = [s if isinstance(s, FiniteSubset) else FiniteSubset(space, tuple(s))
                for s in subsets]
        if not subs:
            raise ValueError("family must be nonempty")
        for s in subs:
            if s.space is not space:
                raise MixedSpaces("family member from a different space")
        seen = {}
        for i, s in enumerate(subs):
            if s.members in seen:
                raise ValueError(f"duplicate subset {s} at positions {seen[s.members]} and {i}")
            seen[s.members] = i
        self.space = space
        self.subsets = tuple(subs)
        self._position = seen

    def __len__(self):
        return len(self.subsets)

    def __getitem__(self, i) -> FiniteSubset:
        return self.subsets[i]

    def __iter__(self):
        return iter(self.subsets)

    def position(self, members) -> int:
        """Family index of the subset with the given members."""
        return self._position[tuple(sorted(set(members)))]

    def check_index(self, i) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < len(self.subsets):
            raise IndexError(f"subset index {i!r} out of range for family of size {len(self)}")
        return int(i)

    @cached_property
    def excess_matrix(self) -> np.ndarray:
        """Scaled matrix E with E[i, j] = D(U_i, U_j)."""
        mat, _ = self.space.scaled
        cols = [np.asarray(s.members) for s in self.subsets]
        # p2s[a, j] = xi(a, U_j)
        p2s = np.stack([mat[:, c].min(axis=1) for c in cols], axis=1)
        return np.stack([p2s[c, :].max(axis=0) for c in cols], axis=0)

    @cached_property
    def hausdorff_table(self) -> list:
        """H(U_i, U_j) for every pair, as exact numbers (list of lists)."""
        ex = self.excess_matrix
        h = np.maximum(ex, ex.T)
        unscale = self.space.unscale
        table = [[unscale(x) for x in row] for row in h]
        if _debug.enabled():
            from .oracle import hausdorff_bruteforce
            for i, u in enumerate(self.subsets):
                for j, v in enumerate(self.subsets):
                    _debug.compare("hausdorff_table", table[i][j], hausdorff_bruteforce(u, v))
        return table

    def H(self, i, j) -> Number:
        return self.hausdorff_table[i][j]


def _pair(A: FiniteSubset, B: FiniteSubset):
    if A.space is not B.space:
        raise MixedSpaces("subsets belong to different spaces")
    if not len(A) or not len(B):
        raise EmptySubset("subsets must be nonempty")
    return A.space


def point_to_set(space: DislocatedSpace, a, B: FiniteSubset) -> Number:
    """xi(a, B) = min over b in B of xi(a, b)."""
    if B.space is not space:
        raise MixedSpaces("subset belongs to a different space")
    if not len(B):
        raise EmptySubset("subset must be nonempty")
    i = space.index(a)
    mat, _ = space.scaled
    return space.unscale(mat[i, list(B.members)].min())


def _excess_scaled(space, A, B):
    mat, _ = space.scaled
    return mat[np.ix_(A.members, B.members)].min(axis=1).max()


def excess(space: DislocatedSpace, A: FiniteSubset, B: FiniteSubset) -> Number:
    """One-sided excess D(A, B) = max over a in A of xi(a, B).  Not symmetric."""
    if _pair(A, B) is not space:
        raise MixedSpaces("subsets belong to a different space")
    return space.unscale(_excess_scaled(space, A, B))


def hausdorff(space: DislocatedSpace, U: FiniteSubset, V: FiniteSubset) -> Number:
    """Pompeiu-Hausdorff distance max{D(U, V), D(V, U)}."""
    if _pair(U, V) is not space:
        raise MixedSpaces("subsets belong to a different space")
    h = space.unscale(max(_excess_scaled(space, U, V), _excess_scaled(space, V, U)))
    if space.exact and h == 0:
        # H = 0 forces equal sets; anything else means the table broke axiom (i)
        assert U.members == V.members, f"H({U}, {V}) = 0 for distinct sets"
    if _debug.enabled():
        from .oracle import hausdorff_bruteforce
        _debug.compare("hausdorff", h, hausdorff_bruteforce(U, V))
    return h


def self_distance(space: DislocatedSpace, U: FiniteSubset) -> Number:
    """H(U, U); positive whenever some member of U sits away from all of U."""
    return hausdorff(space, U, U)


@dataclass
class PointSetLimitReport:
    """Tail-window view of |xi(y_n, U) - xi(y, U)| along a sequence."""

    gaps: list
    self_distance: Number
    window: int
    matches_self_distance: bool
    matches_zero: bool


def point_to_set_limit_diagnostic(space: DislocatedSpace, seq: Sequence, y, U: FiniteSubset):
    """Compare tail gaps |xi(y_n, U) - xi(y, U)| against both xi(y, y) and 0.

    Both targets are reported because the transfer statement this mirrors is
    ambiguous about the right-hand side.  Purely diagnostic.
    """
    if len(seq) == 0:
        raise ValueError("sequence must be nonempty")
    target = point_to_set(space, y, U)
    gaps = [abs(point_to_set(space, p, U) - target) for p in seq]
    w = tail_window(len(gaps))
    tail = gaps[-w:]
    selfd = space.table[space.index(y)][space.index(y)]
    return PointSetLimitReport(
        gaps, selfd, w,
        all(space.close(g, selfd) for g in tail),
        all(space.is_zero(g) for g in tail),
    )
