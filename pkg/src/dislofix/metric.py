"""Finite dislocated metric spaces.

A dislocated metric is nonnegative, symmetric and satisfies the triangle
inequality, but self-distances xi(r, r) may be positive.  Distinct points are
still forced apart: xi(r, s) = 0 implies r = s.

Spaces are finite and immutable.  Exact mode stores every distance as a
``fractions.Fraction``; Float mode stores floats and compares to zero within
``epsilon``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Optional, Sequence, Union

import numpy as np

from .errors import MalformedTable, UnknownPoint

Number = Union[Fraction, float]

BUILTIN_METRICS = ("table", "max", "max_plus_discrete")
DEFAULT_EPSILON = 1e-9


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions, decimal strings and "p/q" strings exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            if int(q) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
        return Fraction(s)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


@dataclass(frozen=True)
class PointId:
    index: int
    label: Optional[str] = None
    value: Optional[Fraction] = None

    def __str__(self):
        return self.label if self.label is not None else f"p{self.index}"


@dataclass(frozen=True, eq=False)
class DislocatedSpace:
    """Finite ground set plus a fully materialized distance table.

    Formula metrics are evaluated once at construction, so every later query
    is a table lookup.  Equality is identity: two spaces built from the same
    table are still different spaces.
    """

    points: tuple
    table: tuple
    metric: str = "table"
    exact: bool = True
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise MalformedTable("space needs at least one point")
        if self.metric not in BUILTIN_METRICS:
            raise MalformedTable(f"unknown metric {self.metric!r}")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise MalformedTable(f"table must be {n}x{n}")
        for i, row in enumerate(self.table):
            for j, x in enumerate(row):
                if x < 0:
                    raise MalformedTable(f"negative entry {x} at ({i}, {j})")
        if not self.exact and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_table(cls, table, labels=None, exact=True, epsilon=DEFAULT_EPSILON):
        rows = [list(r) for r in table]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MalformedTable(f"table must be square, got row lengths {[len(r) for r in rows]}")
        conv = as_fraction if exact else float
        try:
            tab = tuple(tuple(conv(x) for x in r) for r in rows)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise MalformedTable(str(exc)) from exc
        labels = labels or [None] * n
        points = tuple(PointId(i, labels[i]) for i in range(n))
        return cls(points, tab, "table", exact, epsilon)

    @classmethod
    def from_formula(cls, name, values, labels=None, exact=True, epsilon=DEFAULT_EPSILON):
        """Build a space from a built-in formula over nonnegative point values.

        ``"max"``: xi(r, s) = max{r, s}.
        ``"max_plus_discrete"``: xi(r, s) = max{r, s} + [r != s], where
        distinctness is by point identity.
        """
        if name not in ("max", "max_plus_discrete"):
            raise MalformedTable(f"unknown formula metric {name!r}")
        vals = [as_fraction(v) for v in values]
        if any(v < 0 for v in vals):
            raise MalformedTable("formula metrics need nonnegative point values")
        labels = labels or [None] * len(vals)
        points = tuple(PointId(i, labels[i], v) for i, v in enumerate(vals))
        tab = []
        for i, r in enumerate(vals):
            row = []
            for j, s in enumerate(vals):
                d = max(r, s)
                if name == "max_plus_discrete" and i != j:
                    d += 1
                row.append(d if exact else float(d))
            tab.append(tuple(row))
        return cls(points, tuple(tab), name, exact, epsilon)

    # -- arithmetic helpers ----------------------------------------------

    def __len__(self):
        return len(self.points)

    def index(self, p) -> int:
        i = p.index if isinstance(p, PointId) else p
        if not isinstance(i, (int, np.integer)) or not 0 <= i < len(self.points):
            raise UnknownPoint(f"point {p!r} not in space of size {len(self.points)}")
        return int(i)

    def number(self, x) -> Number:
        return as_fraction(x) if self.exact else float(x)

    def is_zero(self, x) -> bool:
        return x == 0 if self.exact else abs(x) <= self.epsilon

    def leq(self, a, b) -> bool:
        return a <= b if self.exact else a <= b + self.epsilon

    def lt(self, a, b) -> bool:
        return a < b if self.exact else a < b - self.epsilon

    def close(self, a, b) -> bool:
        return a == b if self.exact else abs(a - b) <= self.epsilon

    # -- fast path --------------------------------------------------------

    @cached_property
    def scaled(self):
        """Distance matrix as a numpy array plus the scale that undoes it.

        Exact tables are brought to a common denominator so min/max run on
        integers; ``table[i][j] == Fraction(matrix[i, j], scale)``.
        """
        if not self.exact:
            return np.array(self.table, dtype=float), 1
        scale = 1
        for row in self.table:
            for x in row:
                scale = math.lcm(scale, x.denominator)
        nums = [[x.numerator * (scale // x.denominator) for x in row] for row in self.table]
        biggest = max(max(r) for r in nums)
        dtype = np.int64 if biggest < 2**62 else object
        return np.array(nums, dtype=dtype), scale

    def unscale(self, x) -> Number:
        _, scale = self.scaled
        return Fraction(int(x), scale) if self.exact else float(x)


def eval_metric(space: DislocatedSpace, r, s) -> Number:
    """Distance between two points, exact in Exact mode."""
    return space.table[space.index(r)][space.index(s)]


# -- axiom checking -------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def to_dict(self):
        return {"axiom": self.name, "passed": self.passed,
                "witness": list(self.witness) if self.witness is not None else None,
                "detail": self.detail}


@dataclass
class AxiomReport:
    results: list
    n_points: int
    duplicate_rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self):
        return {"passed": self.passed, "n_points": self.n_points,
                "axioms": [r.to_dict() for r in self.results],
                "duplicate_rows": [list(p) for p in self.duplicate_rows]}


def check_axioms(space: DislocatedSpace) -> AxiomReport:
    """Exhaustively check the three dislocated-metric axioms.

    Axiom (i) is checked in contrapositive form (no off-diagonal zero).  Each
    failure carries the lexicographically first violating tuple.  Runs on the
    scaled matrix, so Exact mode compares integers.
    """
    tab = space.table
    n = len(space)
    mat, _ = space.scaled
    eps = 0 if space.exact else space.epsilon * space.scaled[1]
    res = []

    def first(mask):
        hits = np.argwhere(mask)
        return tuple(int(x) for x in hits[0]) if len(hits) else None

    offdiag = ~np.eye(n, dtype=bool)
    w = first(offdiag & (np.abs(mat) <= eps if not space.exact else mat == 0))
    res.append(AxiomResult("i", w is None, w,
                           "" if w is None else f"xi{w} = 0 for distinct points"))

    w = first(np.abs(mat - mat.T) > eps)
    res.append(AxiomResult("ii", w is None, w,
                           "" if w is None else f"xi{w} != xi{w[::-1]}"))

    # viol[r, s, t]: xi(r, t) > xi(r, s) + xi(s, t)
    viol = mat[:, None, :] > mat[:, :, None] + mat[None, :, :] + eps
    w = first(viol)
    res.append(AxiomResult(
        "iii", w is None, w,
        "" if w is None else
        f"xi({w[0]},{w[2]}) = {tab[w[0]][w[2]]} > {tab[w[0]][w[1]] + tab[w[1]][w[2]]}"))

    dups = [(r, s) for r in range(n) for s in range(r + 1, n) if tab[r] == tab[s]]
    if dups:
        warnings.warn(f"points with identical distance rows: {dups}", stacklevel=2)
    return AxiomReport(res, n, dups)


# -- balls and sequences --------------------------------------------------


@dataclass(frozen=True)
class Ball:
    center: int
    radius: Number
    members: tuple


def open_ball(space: DislocatedSpace, center, radius) -> Ball:
    """Points t with |xi(center, t) - xi(center, center)| < radius."""
    c = space.index(center)
    radius = space.number(radius)
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    row = space.table[c]
    members = tuple(t for t in range(len(space)) if abs(row[t] - row[c]) < radius)
    return Ball(c, radius, members)


@dataclass
class ConvergenceReport:
    candidate: int
    tail_values: list
    self_distance: Number
    window: int
    converges: bool
    cauchy: bool
    cauchy_values: list

    def to_dict(self):
        return {"candidate": self.candidate, "tail_values": [str(v) for v in self.tail_values],
                "self_distance": str(self.self_distance), "window": self.window,
                "converges": self.converges, "cauchy": self.cauchy}


def tail_window(length: int) -> int:
    return max(1, min(10, length // 2))


def sequence_diagnostics(space: DislocatedSpace, seq: Sequence, candidate_limit) -> ConvergenceReport:
    """Finite-window look at convergence of ``seq`` towards ``candidate_limit``.

    Convergence in a dislocated space means xi(y_n, y) -> xi(y, y), which can
    be nonzero.  Only the final window is inspected, so this never certifies
    an infinite limit.
    """
    if len(seq) == 0:
        raise ValueError("sequence must be nonempty")
    y = space.index(candidate_limit)
    idx = [space.index(p) for p in seq]
    tab = space.table
    tail = [tab[i][y] for i in idx]
    w = tail_window(len(idx))
    last = idx[-w:]
    selfd = tab[y][y]
    converges = all(space.close(tab[i][y], selfd) for i in last)
    pair_vals = [tab[a][b] for k, a in enumerate(last) for b in last[k + 1:]]
    cauchy = all(space.close(v, pair_vals[0]) for v in pair_vals) if pair_vals else True
    return ConvergenceReport(y, tail, selfd, w, converges, cauchy, pair_vals)
