"""Picard iteration on set maps and the fixed-point conclusions.

Two fixed-point criteria are tracked side by side: index equality T(U) = U,
and zero weight H(T(U), U) = 0.  In a dislocated space they can differ,
because H(U, U) may be positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .contraction import ComparisonFunction, ContractionCertificate, _num
from .errors import NoFixedPoint, NotCertified
from .graph import SetGraph, SetMap, check_property_Pstar, compute_YT, symmetrize
from .hausdorff import SetFamily

FIXED_POINT = "fixed_point"
CYCLE = "cycle"
MAX_ITERS = "max_iters"


@dataclass(frozen=True)
class Termination:
    kind: str
    state: Optional[int] = None
    period: Optional[int] = None
    weight_zero: Optional[bool] = None

    def to_dict(self):
        return {"kind": self.kind, "state": self.state, "period": self.period,
                "weight_zero": self.weight_zero}


@dataclass
class IterationTrace:
    """Orbit U_0, U_1 = T(U_0), ... with per-state weights H(U_n, T(U_n)).

    ``step_weights`` has one entry per state; on a fixed-point stop the last
    entry is the zero confirming it.  ``bound_values[n]`` is phi^n applied to
    the first step weight.
    """

    start: int
    states: list
    step_weights: list
    bound_values: list
    terminated: Termination

    @property
    def steps(self) -> int:
        """Map applications needed to reach the final state."""
        return len(self.states) - 1

    def bound_violations(self, space) -> list:
        return [n for n, (w, b) in enumerate(zip(self.step_weights, self.bound_values))
                if not space.leq(w, b)]

    def to_dict(self):
        return {"start": self.start, "states": list(self.states),
                "step_weights": [_num(w) for w in self.step_weights],
                "bound_values": [_num(b) for b in self.bound_values],
                "terminated": self.terminated.to_dict()}


def iterate(family: SetFamily, t: SetMap, phi: ComparisonFunction, start: int,
            max_iters: int = 1000) -> IterationTrace:
    """Run U_{n+1} = T(U_n) until a zero-weight state, a revisit, or ``max_iters``."""
    start = family.check_index(start)
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    space = family.space
    h = family.hausdorff_table
    states = [start]
    seen = {start: 0}
    weights = []
    u = start
    while True:
        nxt = t[u]
        w = h[u][nxt]
        weights.append(w)
        if space.is_zero(w):
            term = Termination(FIXED_POINT, u, 1, True)
            break
        if nxt in seen:
            period = len(states) - seen[nxt]
            if period == 1:
                term = Termination(FIXED_POINT, u, 1, False)
            else:
                term = Termination(CYCLE, nxt, period, False)
            break
        if len(states) - 1 >= max_iters:
            term = Termination(MAX_ITERS, u)
            break
        seen[nxt] = len(states)
        states.append(nxt)
        u = nxt
    bounds = [weights[0]]
    for _ in range(1, len(weights)):
        bounds.append(phi(bounds[-1]))
    return IterationTrace(start, states, weights, bounds, term)


@dataclass
class FixedPointReport:
    fixed_points: list          # weight criterion
    index_fixed_points: list    # T(U) = U
    pairwise_weights: list      # H over index fixed points
    self_weights: list          # H(U, U) over index fixed points

    @property
    def singleton(self) -> bool:
        return len(self.fixed_points) == 1

    def to_dict(self):
        return {"fixed_points": self.fixed_points,
                "index_fixed_points": self.index_fixed_points,
                "singleton": self.singleton,
                "pairwise_weights": [[_num(x) for x in r] for r in self.pairwise_weights],
                "self_weights": [_num(x) for x in self.self_weights]}


def fixed_point_set(family: SetFamily, t: SetMap) -> FixedPointReport:
    """Exhaustive scan for fixed points under both criteria."""
    space = family.space
    h = family.hausdorff_table
    by_weight = [u for u in range(len(family)) if space.is_zero(h[u][t[u]])]
    by_index = [u for u in range(len(family)) if t[u] == u]
    pw = [[h[a][b] for b in by_index] for a in by_index]
    return FixedPointReport(by_weight, by_index, pw, [h[a][a] for a in by_index])


# -- fixed-point conclusions ----------------------------------------------

HOLDS = "holds"
VACUOUS = "vacuous"
FAILED = "counterexample"
INCONCLUSIVE = "inconclusive"

CONCLUSIONS = ("zero_weight", "yt_nonempty", "picard_fixed_point",
               "complete_iff_singleton", "step_bound")


@dataclass
class ConclusionVerdict:
    functional: str
    status: dict
    counterexamples: list = field(default_factory=list)
    yt: list = field(default_factory=list)
    fixed_points_complete: bool = False

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_dict(self):
        return {"functional": self.functional, "status": dict(self.status),
                "holds": self.holds, "yt": self.yt,
                "fixed_points_complete": self.fixed_points_complete,
                "counterexamples": self.counterexamples}


def fixed_points_complete(g: SetGraph, points) -> bool:
    """True iff every pair of ``points`` (including each point with itself)
    is joined in the symmetrized graph."""
    sym = symmetrize(g)
    return all(sym.has_edge(a, b) for a in points for b in points)


def check_theorem_conclusions(certificate: ContractionCertificate, report: FixedPointReport,
                              traces, g: SetGraph) -> ConclusionVerdict:
    """Check the four fixed-point conclusions plus the per-step bound.

    1. every pair of fixed points joined in the symmetrized graph (including
       each fixed point with its own loop) has weight zero;
    2. a nonempty fixed-point set gives a nonempty Y_T;
    3. every trace started in Y_T whose tail is edge-linked to its final state
       ends at a fixed point;
    4. for a nonempty fixed-point set: complete in the symmetrized graph iff
       singleton;
    plus step_weights[n] <= phi^n(step_weights[0]) on traces from Y_T that
    move along edges of G.
    """
    if not certificate.certified:
        raise NotCertified("conclusions are only claimed for certified maps")
    if not g.has_diagonal:
        raise NotCertified("graph does not contain every loop (U, U)")
    family, t = certificate.family, certificate.map
    space = family.space
    h = family.hausdorff_table
    sym = symmetrize(g)
    F = report.index_fixed_points
    yt = compute_YT(g, t)
    status = {}
    bad = []

    def fail(name, **detail):
        status[name] = FAILED
        bad.append({"conclusion": name, **{k: _jsonable(v) for k, v in detail.items()}})

    adjacent = [(a, b) for a in F for b in F if a <= b and sym.has_edge(a, b)]
    status["zero_weight"] = HOLDS if adjacent else VACUOUS
    for a, b in adjacent:
        if not space.is_zero(h[a][b]):
            fail("zero_weight", pair=[a, b], weight=h[a][b])

    if F:
        status["yt_nonempty"] = HOLDS
        if not yt:
            fail("yt_nonempty", fixed_points=F)
    else:
        status["yt_nonempty"] = VACUOUS

    status["picard_fixed_point"] = VACUOUS
    status["step_bound"] = VACUOUS
    for tr in traces:
        if tr.start not in yt:
            continue
        if tr.terminated.kind == MAX_ITERS:
            if status["picard_fixed_point"] == VACUOUS:
                status["picard_fixed_point"] = INCONCLUSIVE
        elif check_property_Pstar(g, tr.states, tr.states[-1]):
            if status["picard_fixed_point"] == VACUOUS:
                status["picard_fixed_point"] = HOLDS
            if tr.terminated.kind != FIXED_POINT:
                fail("picard_fixed_point", start=tr.start, trace=tr.to_dict())
        if all(g.has_edge(a, b) for a, b in zip(tr.states, tr.states[1:])):
            if status["step_bound"] == VACUOUS:
                status["step_bound"] = HOLDS
            viol = tr.bound_violations(space)
            if viol:
                fail("step_bound", start=tr.start, steps=viol, trace=tr.to_dict())

    complete = fixed_points_complete(g, F)
    if F:
        status["complete_iff_singleton"] = HOLDS
        if complete != (len(F) == 1):
            fail("complete_iff_singleton", fixed_points=F, complete=complete)
    else:
        status["complete_iff_singleton"] = VACUOUS

    return ConclusionVerdict(certificate.functional, status, bad, yt, complete)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return list(v)
    return v


# -- Cauchy and well-posedness diagnostics --------------------------------


def telescoping_violations(family: SetFamily, trace: IterationTrace) -> list:
    """Pairs n < m with H(U_n, U_m) above the sum of the step weights between them."""
    space = family.space
    h = family.hausdorff_table
    s = trace.states
    w = trace.step_weights
    out = []
    for n in range(len(s)):
        acc = 0
        for m in range(n + 1, len(s)):
            acc = acc + w[m - 1]
            if not space.leq(h[s[n]][s[m]], acc):
                out.append((n, m))
    return out


@dataclass
class WellposednessReport:
    reference: int
    tolerance: object
    bound: object
    approximate: list
    distances: list
    flagged: list

    def to_dict(self):
        return {"reference": self.reference, "tolerance": _num(self.tolerance),
                "bound": _num(self.bound), "approximate_fixed_points": self.approximate,
                "distances": [_num(d) for d in self.distances], "flagged": self.flagged}


def wellposedness_diagnostic(family: SetFamily, t: SetMap, tolerance=None) -> WellposednessReport:
    """Approximate fixed points and how far they sit from the fixed point.

    U is an approximate fixed point when H(T(U), U) <= tolerance; it is flagged
    when H(U, U*) exceeds tolerance * (1 + largest step weight in the family),
    U* being the first zero-weight fixed point.
    """
    space = family.space
    if tolerance is None:
        tolerance = Fraction(0) if space.exact else space.epsilon
    tolerance = space.number(tolerance)
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    fp = fixed_point_set(family, t).fixed_points
    if not fp:
        raise NoFixedPoint("map has no zero-weight fixed point")
    ref = fp[0]
    h = family.hausdorff_table
    biggest = max(h[u][t[u]] for u in range(len(family)))
    bound = tolerance * (1 + biggest)
    approx = [u for u in range(len(family)) if space.leq(h[u][t[u]], tolerance)]
    dists = [h[u][ref] for u in approx]
    flagged = [u for u, d in zip(approx, dists) if not space.leq(d, bound)]
    return WellposednessReport(ref, tolerance, bound, approx, dists, flagged)


def float_step_budget(h0, eps=1e-9) -> int:
    """ceil(log2(h0 / eps)); zero when the first step already vanishes."""
    if h0 <= eps:
        return 0
    return math.ceil(math.log2(float(h0) / eps))
