"""Comparison functions and graph contraction certificates.

``certify`` decides, by exhaustive evaluation over the edges of a graph,
whether a set map satisfies

    H(T U, T V) <= phi(F(U, V))   for every edge (U, V)

where F is either the seven-term functional ``eval_MT`` or the three-term
rational functional ``eval_NS``, and whether the map preserves edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _debug
from .errors import InvalidPhi
from .graph import EDGE, SetGraph, SetMap, PreservationReport, check_edge_preservation
from .hausdorff import SetFamily
from .metric import as_fraction

MT = "mt"
NS = "ns"
GRID_POINTS = 1000


class ComparisonFunction:
    """phi: [0, inf) -> [0, inf), nondecreasing with phi(t) < t for t > 0.

    Build with :meth:`linear`, :meth:`rational_shrink` or :meth:`table`.
    Evaluation is exact on Fractions and plain on floats.
    """

    def __init__(self, kind, lam=None, points=None, usc_declared=True):
        self.kind = kind
        self.lam = lam
        self.points = points
        self.usc_declared = usc_declared

    @classmethod
    def linear(cls, lam):
        lam = as_fraction(lam)
        if not 0 <= lam < 1:
            raise InvalidPhi(f"linear phi needs lambda in [0, 1), got {lam}")
        return cls("linear", lam=lam)

    @classmethod
    def rational_shrink(cls):
        return cls("rational_shrink")

    @classmethod
    def table(cls, points):
        """Piecewise-linear phi through the given (t, phi(t)) breakpoints.

        Beyond the last breakpoint the final segment is extended.  A
        breakpoint at t = 0 with value 0 is required.
        """
        pts = sorted((as_fraction(t), as_fraction(v)) for t, v in points)
        if not pts or pts[0] != (0, 0):
            raise InvalidPhi("table phi must start at (0, 0)", witness=0)
        if len({t for t, _ in pts}) != len(pts):
            raise InvalidPhi("table phi has repeated breakpoints")
        if len(pts) == 1:
            pts.append((Fraction(1), Fraction(0)))
        return cls("table", points=tuple(pts))

    def __call__(self, t):
        if self.kind == "linear":
            return self.lam * t if isinstance(t, Fraction) else float(self.lam) * t
        if self.kind == "rational_shrink":
            return t / (1 + t)
        pts = self.points
        exact = isinstance(t, Fraction)
        k = len(pts) - 2
        for i in range(len(pts) - 1):
            if t <= pts[i + 1][0]:
                k = i
                break
        (t0, v0), (t1, v1) = pts[k], pts[k + 1]
        if exact:
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return float(v0) + float(v1 - v0) * (t - float(t0)) / float(t1 - t0)

    def iterate(self, x, n):
        """phi applied n times, by repeated application."""
        for _ in range(n):
            x = self(x)
        return x

    def validate(self, upper, exact=True):
        """Grid falsification of phi(0) = 0, monotonicity and phi(t) < t on [0, upper].

        The linear and rational-shrink families satisfy all three in closed
        form once constructed, so only user tables are sampled.
        """
        if self.kind != "table":
            return
        upper = as_fraction(upper) if exact else float(upper)
        if upper <= 0:
            upper = Fraction(1) if exact else 1.0
        if self(Fraction(0) if exact else 0.0) != 0:
            raise InvalidPhi("phi(0) must be 0", witness=0)
        prev = None
        for i in range(GRID_POINTS + 1):
            t = upper * i / GRID_POINTS
            v = self(t)
            if v < 0:
                raise InvalidPhi(f"phi({t}) = {v} is negative", witness=t)
            if t > 0 and not v < t:
                raise InvalidPhi(f"phi({t}) = {v} is not below t", witness=t)
            if prev is not None and v < prev:
                raise InvalidPhi(f"phi decreases at t = {t}", witness=t)
            prev = v

    def to_dict(self):
        if self.kind == "linear":
            return {"kind": "linear", "lambda": str(self.lam)}
        if self.kind == "rational_shrink":
            return {"kind": "rational_shrink"}
        return {"kind": "table", "table": [[str(t), str(v)] for t, v in self.points]}

    def __repr__(self):
        return f"ComparisonFunction({self.to_dict()})"


def eval_MT(family: SetFamily, t: SetMap, u: int, v: int):
    """max{H(U,V), H(U,TU), H(V,TV), H(TU,TV), H(T2U,V), H(T2U,TV), [H(V,TU)+H(U,TV)]/3}."""
    h = family.hausdorff_table
    tu, tv = t[u], t[v]
    ttu = t[tu]
    terms = (h[u][v], h[u][tu], h[v][tv], h[tu][tv], h[ttu][v], h[ttu][tv],
             (h[v][tu] + h[u][tv]) / 3)
    val = max(terms)
    if _debug.enabled():
        from .oracle import mt_bruteforce
        _debug.compare("eval_MT", val, mt_bruteforce(family, t, u, v))
        assert all(val >= x for x in terms)
    return val


def eval_NS(family: SetFamily, s: SetMap, u: int, v: int):
    """Three-term rational maximum; both denominators are at least 1."""
    h = family.hausdorff_table
    su, sv = s[u], s[v]
    huv = h[u][v]
    factor = 1 + h[u][su]
    terms = (h[u][sv] * factor / (2 * (1 + huv)),
             h[v][sv] * factor / (1 + huv),
             h[v][su] * factor / (1 + huv))
    val = max(terms)
    if _debug.enabled():
        from .oracle import ns_bruteforce
        _debug.compare("eval_NS", val, ns_bruteforce(family, s, u, v))
    return val


FUNCTIONALS = {MT: eval_MT, NS: eval_NS}


@dataclass
class Violation:
    edge: tuple
    lhs: object
    functional_value: object
    phi_value: object

    def to_dict(self):
        return {"edge": list(self.edge), "lhs": _num(self.lhs),
                "functional": _num(self.functional_value), "phi": _num(self.phi_value)}


def _num(x):
    return str(x) if isinstance(x, Fraction) else x


@dataclass
class ContractionCertificate:
    functional: str
    edges_checked: int
    violations: list
    preservation: PreservationReport
    family: SetFamily = field(repr=False)
    map: SetMap = field(repr=False)
    graph: SetGraph = field(repr=False)
    phi: ComparisonFunction = field(repr=False)

    @property
    def certified(self) -> bool:
        return not self.violations and self.preservation.preserved

    @property
    def verdict(self) -> str:
        return "Certified" if self.certified else "Refuted"

    def to_dict(self):
        return {"functional": self.functional, "verdict": self.verdict,
                "edges_checked": self.edges_checked,
                "violations": [v.to_dict() for v in self.violations],
                "preservation": self.preservation.to_dict(),
                "phi": self.phi.to_dict()}


def value_range(family: SetFamily, functional: str):
    """Upper end of the interval phi gets sampled on for this family."""
    hmax = max(max(row) for row in family.hausdorff_table)
    return hmax if functional == MT else hmax * (1 + hmax)


def certify(family: SetFamily, t: SetMap, g: SetGraph, phi: ComparisonFunction,
            functional: str = MT, preservation_mode: str = EDGE,
            validate_phi: bool = True) -> ContractionCertificate:
    """Check edge preservation, then the contraction inequality on every edge.

    Raises :class:`InvalidPhi` if phi fails grid sampling or phi(t) >= t at
    any functional value actually evaluated.
    """
    if functional not in FUNCTIONALS:
        raise ValueError(f"functional must be one of {sorted(FUNCTIONALS)}")
    if len(t) != len(family) or g.n_vertices != len(family):
        raise ValueError("family, map and graph sizes disagree")
    space = family.space
    if validate_phi:
        phi.validate(value_range(family, functional), exact=space.exact)
    pres = check_edge_preservation(g, t, preservation_mode)
    fn = FUNCTIONALS[functional]
    h = family.hausdorff_table
    bad = []
    for u, v in g.edges:
        lhs = h[t[u]][t[v]]
        m = fn(family, t, u, v)
        pm = phi(m)
        if not space.is_zero(m) and not pm < m:
            raise InvalidPhi(f"phi({m}) = {pm} is not below its argument", witness=m)
        if not space.leq(lhs, pm):
            bad.append(Violation((u, v), lhs, m, pm))
    return ContractionCertificate(functional, len(g.edges), bad, pres, family, t, g, phi)
