"""Random instances and falsification campaigns.

Every trial draws from its own RNG stream keyed by ``(rng_seed, trial_index)``,
so trials are order-independent and a campaign is reproducible bit for bit.
"""

from __future__ import annotations

import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .contraction import MT, NS, ComparisonFunction, ContractionCertificate, certify
from .fixed_point import (CONCLUSIONS, FAILED, check_theorem_conclusions,
                          fixed_point_set, fixed_points_complete, iterate)
from .graph import EDGE, SetGraph, SetMap, compute_YT
from .hausdorff import SetFamily
from .instance import Instance, instance_to_dict
from .metric import DislocatedSpace, PointId, as_fraction, check_axioms

ZERO_DIAG = "zero"
RANDOM_DIAG = "random"
RANDOM_MAP = "random"
BIASED_MAP = "biased"

# entries are multiples of value_scale / GRID; an off-diagonal zero becomes one grid step
GRID = 1000
MAX_ATTEMPTS = 100


@dataclass
class GenConfig:
    rng_seed: int = 1
    n_points: tuple = (2, 8)
    family_size: tuple = (2, 12)
    value_scale: Fraction = Fraction(10)
    diagonal_mode: str = RANDOM_DIAG
    map_mode: str = BIASED_MAP
    bias_lambda: Fraction = Fraction(1, 2)
    edge_density: float = 0.25
    trials: int = 100

    def __post_init__(self):
        self.n_points = tuple(int(x) for x in self.n_points)
        self.family_size = tuple(int(x) for x in self.family_size)
        self.value_scale = as_fraction(self.value_scale)
        self.bias_lambda = as_fraction(self.bias_lambda)
        lo, hi = self.n_points
        if not 1 <= lo <= hi:
            raise ValueError(f"n_points range {self.n_points} is empty or below 1")
        lo, hi = self.family_size
        if not 1 <= lo <= hi:
            raise ValueError(f"family_size range {self.family_size} is empty or below 1")
        if self.value_scale <= 0:
            raise ValueError("value_scale must be positive")
        if self.diagonal_mode not in (ZERO_DIAG, RANDOM_DIAG):
            raise ValueError(f"diagonal_mode must be {ZERO_DIAG!r} or {RANDOM_DIAG!r}")
        if self.map_mode not in (RANDOM_MAP, BIASED_MAP):
            raise ValueError(f"map_mode must be {RANDOM_MAP!r} or {BIASED_MAP!r}")
        if not 0 <= self.bias_lambda < 1:
            raise ValueError("bias_lambda must lie in [0, 1)")
        if not 0 <= self.edge_density <= 1:
            raise ValueError("edge_density must lie in [0, 1]")
        if int(self.trials) < 1:
            raise ValueError("trials must be at least 1")
        self.trials = int(self.trials)
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")

    @classmethod
    def from_dict(cls, d: dict) -> "GenConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self):
        d = asdict(self)
        d["n_points"] = list(self.n_points)
        d["family_size"] = list(self.family_size)
        d["value_scale"] = str(self.value_scale)
        d["bias_lambda"] = str(self.bias_lambda)
        return d


def trial_rng(cfg: GenConfig, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(cfg.rng_seed), int(trial_index)]))


def min_plus_closure(a: np.ndarray) -> np.ndarray:
    """Lower entries until xi(r, t) <= xi(r, s) + xi(s, t) for every triple."""
    a = a.copy()
    while True:
        before = a.copy()
        for s in range(a.shape[0]):
            np.minimum(a, a[:, s, None] + a[None, s, :], out=a)
        if np.array_equal(a, before):
            return a


def _space_from_grid(a: np.ndarray, scale: Fraction) -> DislocatedSpace:
    n = a.shape[0]
    unit = scale / GRID
    table = tuple(tuple(unit * int(x) for x in row) for row in a)
    return DislocatedSpace(tuple(PointId(i, f"p{i}") for i in range(n)), table)


def random_space(cfg: GenConfig, trial_index: int = 0, rng=None) -> DislocatedSpace:
    """Random symmetric table, repaired into a dislocated metric.

    Off-diagonal zeros are lifted to one grid step, then min-plus closure
    enforces the triangle inequality.  Under RandomDiag each self-distance is
    zero with probability 1/2 and uniform otherwise; the closure may lower it
    to twice the nearest neighbour distance.
    """
    rng = trial_rng(cfg, trial_index) if rng is None else rng
    for _ in range(MAX_ATTEMPTS):
        n = int(rng.integers(cfg.n_points[0], cfg.n_points[1] + 1))
        upper = np.triu(rng.integers(0, GRID + 1, size=(n, n)), 1)
        a = upper + upper.T
        a[(a == 0) & ~np.eye(n, dtype=bool)] = 1
        if cfg.diagonal_mode == RANDOM_DIAG:
            diag = rng.integers(0, GRID + 1, size=n) * (rng.random(n) < 0.5)
            np.fill_diagonal(a, diag)
        a = min_plus_closure(a)
        if np.all(a[~np.eye(n, dtype=bool)] > 0):
            space = _space_from_grid(a, cfg.value_scale)
            with warnings.catch_warnings():
                # repeated rows are legal and common in small random tables
                warnings.simplefilter("ignore", UserWarning)
                report = check_axioms(space)
            assert report.passed, report.to_dict()
            return space
    raise RuntimeError(f"no valid space after {MAX_ATTEMPTS} attempts")


def random_family(space: DislocatedSpace, cfg: GenConfig, rng) -> SetFamily:
    n = len(space)
    total = 2**n - 1
    lo, hi = cfg.family_size
    k = int(rng.integers(min(lo, total), min(hi, total) + 1))
    masks = rng.choice(total, size=k, replace=False) + 1
    subsets = [[i for i in range(n) if (int(m) >> i) & 1] for m in masks]
    return SetFamily(space, subsets)


def _biased_map(family: SetFamily, rng) -> SetMap:
    """Near-constant map: an attractor W, up to two feeders into W, and
    occasionally a second attractor."""
    k = len(family)
    h = family.hausdorff_table
    quiet = [u for u in range(k) if h[u][u] == 0]
    W = int(rng.choice(quiet)) if quiet else int(rng.integers(k))
    others = [u for u in range(k) if u != W]
    img = [W] * k
    attractors = [W]
    if others and rng.random() < 0.2:
        W2 = int(rng.choice(others))
        others.remove(W2)
        img[W2] = W2
        attractors.append(W2)
    nf = int(rng.integers(0, min(2, len(others)) + 1))
    feeders = [int(x) for x in rng.choice(others, size=nf, replace=False)] if nf else []
    for f in feeders:
        img[f] = int(rng.choice(attractors))
    for u in others:
        if u in feeders:
            continue
        r = rng.random()
        if feeders and r < 0.4:
            img[u] = int(rng.choice(feeders))
        else:
            img[u] = int(rng.choice(attractors))
    return SetMap(tuple(img))


def random_graph(k: int, t: SetMap, density: float, rng, saturate: bool) -> SetGraph:
    extra = rng.random((k, k)) < density
    edges = {(i, j) for i in range(k) for j in range(k) if i != j and extra[i, j]}
    if saturate:
        frontier = set(edges)
        while frontier:
            new = {(t[u], t[v]) for u, v in frontier} - edges
            new = {(a, b) for a, b in new if a != b}
            edges |= new
            frontier = new
    return SetGraph(k, tuple(sorted(edges)), True)


@dataclass
class GeneratedInstance:
    trial_index: int
    instance: Instance
    functional: str
    certificate: ContractionCertificate

    @property
    def certified(self) -> bool:
        return self.certificate.certified


def random_instance(cfg: GenConfig, trial_index: int) -> GeneratedInstance:
    """Draw space, family, map, graph, phi and functional, then certify."""
    rng = trial_rng(cfg, trial_index)
    space = random_space(cfg, trial_index, rng)
    family = random_family(space, cfg, rng)
    k = len(family)
    if cfg.map_mode == BIASED_MAP:
        t = _biased_map(family, rng)
    else:
        t = SetMap(tuple(int(x) for x in rng.integers(0, k, size=k)))
    g = random_graph(k, t, cfg.edge_density, rng, saturate=rng.random() < 0.8)
    if rng.random() < 0.25:
        phi = ComparisonFunction.rational_shrink()
    else:
        phi = ComparisonFunction.linear(cfg.bias_lambda)
    functional = MT if rng.random() < 0.5 else NS
    cert = certify(family, t, g, phi, functional, EDGE)
    return GeneratedInstance(trial_index, Instance(space, family, t, g, phi), functional, cert)


def random_certified_instance(cfg: GenConfig, trial_index: int) -> Optional[GeneratedInstance]:
    """The generated instance when certified, ``None`` (rejected) otherwise."""
    gen = random_instance(cfg, trial_index)
    return gen if gen.certified else None


# -- campaigns ------------------------------------------------------------


@dataclass
class TrialOutcome:
    trial_index: int
    functional: str
    certified: bool
    status: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    fixed_points: int = 0
    unjoined_fixed_points: bool = False


def run_trial(cfg: GenConfig, trial_index: int) -> TrialOutcome:
    gen = random_instance(cfg, trial_index)
    out = TrialOutcome(trial_index, gen.functional, gen.certified)
    if not gen.certified:
        return out
    inst = gen.instance
    family, t, g = inst.family, inst.map, inst.graph
    report = fixed_point_set(family, t)
    traces = [iterate(family, t, inst.phi, u, max_iters=len(family) + 1)
              for u in compute_YT(g, t)]
    verdict = check_theorem_conclusions(gen.certificate, report, traces, g)
    out.status = verdict.status
    out.fixed_points = len(report.index_fixed_points)
    out.unjoined_fixed_points = (len(report.index_fixed_points) > 1
                                 and not fixed_points_complete(g, report.index_fixed_points))
    for cx in verdict.counterexamples:
        doc = instance_to_dict(inst)
        doc["counterexample"] = {"trial_index": trial_index, "functional": gen.functional,
                                 "seed": int(cfg.rng_seed), **cx}
        out.counterexamples.append(doc)
    return out


@dataclass
class CampaignReport:
    config: GenConfig
    trials_run: int
    certified_count: int
    refuted_count: int
    certified_by_functional: dict
    tallies: dict
    counterexamples: list
    unjoined_fixed_point_instances: int
    wall_time: float = 0.0

    @property
    def certified_fraction(self) -> float:
        return self.certified_count / self.trials_run

    def to_dict(self, timings: bool = False):
        d = {"config": self.config.to_dict(), "trials_run": self.trials_run,
             "certified_count": self.certified_count, "refuted_count": self.refuted_count,
             "certified_by_functional": self.certified_by_functional,
             "tallies": self.tallies, "counterexamples": self.counterexamples,
             "unjoined_fixed_point_instances": self.unjoined_fixed_point_instances}
        if timings:
            d["wall_time"] = self.wall_time
        return d


def _worker(args):
    cfg, lo, hi = args
    return [run_trial(cfg, i) for i in range(lo, hi)]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DISLOFIX_THREADS", "1")))
    except ValueError:
        return 1


def run_campaign(cfg: GenConfig, threads: Optional[int] = None) -> CampaignReport:
    """Generate, certify and check ``cfg.trials`` instances.

    Parallel runs (``threads`` or ``DISLOFIX_THREADS``) split the trial range
    into chunks and merge in trial order, so the report does not depend on
    the worker count.
    """
    t0 = time.perf_counter()
    threads = threads or _threads()
    if threads > 1 and cfg.trials > 1:
        step = -(-cfg.trials // (threads * 4))
        chunks = [(cfg, lo, min(lo + step, cfg.trials)) for lo in range(0, cfg.trials, step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = [o for part in pool.map(_worker, chunks) for o in part]
    else:
        outcomes = [run_trial(cfg, i) for i in range(cfg.trials)]

    tallies = {c: {"holds": 0, "vacuous": 0, "inconclusive": 0, "counterexample": 0}
               for c in CONCLUSIONS}
    by_fn = {MT: 0, NS: 0}
    cx = []
    for o in outcomes:
        if o.certified:
            by_fn[o.functional] += 1
            for name, st in o.status.items():
                tallies[name][st] += 1
        cx.extend(o.counterexamples)
    certified = sum(o.certified for o in outcomes)
    return CampaignReport(cfg, len(outcomes), certified, len(outcomes) - certified, by_fn,
                          tallies, cx, sum(o.unjoined_fixed_points for o in outcomes),
                          time.perf_counter() - t0)
