from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from dislofix.contraction import MT, NS, ComparisonFunction, certify
from dislofix.errors import NoFixedPoint, NotCertified
from dislofix.fixed_point import (CYCLE, FIXED_POINT, HOLDS, MAX_ITERS, VACUOUS,
                                  check_theorem_conclusions, fixed_point_set, float_step_budget,
                                  iterate, telescoping_violations, wellposedness_diagnostic)
from dislofix.generate import GenConfig, random_instance
from dislofix.graph import SetGraph, SetMap, compute_YT
from dislofix.hausdorff import SetFamily
from dislofix.instance import load_instance
from dislofix.oracle import hausdorff_bruteforce

from conftest import max_space, usual_space

HALF = ComparisonFunction.linear("1/2")


@pytest.fixture
def usual():
    sp = usual_space([0, 1, 2])
    return SetFamily(sp, [[0], [1], [0, 1], [2]])


def test_constant_map_one_step(usual):
    t = SetMap.constant(4, 1)
    tr = iterate(usual, t, HALF, 3)
    assert tr.states == [3, 1] and tr.steps == 1
    assert tr.step_weights == [usual.H(3, 1), 0]
    assert tr.terminated.kind == FIXED_POINT and tr.terminated.state == 1
    assert iterate(usual, t, HALF, 1).steps == 0


def test_two_cycle(usual):
    t = SetMap((3, 1, 2, 0))
    tr = iterate(usual, t, HALF, 0)
    assert tr.terminated.kind == CYCLE and tr.terminated.period == 2
    assert tr.bound_violations(usual.space) == [1]
    cert = certify(usual, t, SetGraph(4, ((0, 3),), True), HALF)
    assert not cert.certified


def test_max_iters_stop(usual):
    t = SetMap((1, 2, 3, 3))
    tr = iterate(usual, t, HALF, 0, max_iters=2)
    assert tr.terminated.kind == MAX_ITERS and tr.steps == 2
    with pytest.raises(ValueError):
        iterate(usual, t, HALF, 0, max_iters=0)


def test_period_one_revisit_with_positive_weight():
    sp = max_space([5])
    fam = SetFamily(sp, [[0]])
    tr = iterate(fam, SetMap.identity(1), HALF, 0)
    assert tr.terminated.kind == FIXED_POINT and tr.terminated.weight_zero is False


@pytest.mark.parametrize("name, start, weights", [
    ("linear_chain.json", 4, [48, 12, 3, 1, 0]),
    ("max_chain.json", 3, [16, 4, 1, 0]),
])
def test_certified_chain_geometric_bound(fixture_path, name, start, weights):
    inst = load_instance(fixture_path(name))
    assert certify(inst.family, inst.map, inst.graph, inst.phi).certified
    tr = iterate(inst.family, inst.map, inst.phi, start)
    assert tr.step_weights == weights
    assert tr.bound_values == [Fr(weights[0], 2**n) for n in range(len(weights))]
    assert tr.bound_violations(inst.space) == []
    assert tr.terminated.kind == FIXED_POINT


def test_float_chain_within_step_budget(fixture_path):
    inst = load_instance(fixture_path("linear_chain_float.json"))
    tr = iterate(inst.family, inst.map, inst.phi, 4)
    assert tr.terminated.kind == FIXED_POINT
    assert tr.steps <= float_step_budget(tr.step_weights[0], 1e-9)
    assert all(w <= b + 1e-9 for w, b in zip(tr.step_weights, tr.bound_values))


def test_step_budget():
    assert float_step_budget(1, 1e-9) == 30
    assert float_step_budget(0) == 0


def test_fixed_point_criteria_differ_on_max_metric():
    sp = max_space([1, 5])
    fam = SetFamily(sp, [[0], [1]])
    rep = fixed_point_set(fam, SetMap.identity(2))
    assert rep.index_fixed_points == [0, 1]
    assert rep.fixed_points == []
    assert rep.self_weights == [1, 5]


def test_fixed_point_set_examples(usual):
    assert fixed_point_set(usual, SetMap.identity(4)).fixed_points == [0, 1, 2, 3]
    rep = fixed_point_set(usual, SetMap.constant(4, 2))
    assert rep.fixed_points == [2] and rep.singleton
    assert fixed_point_set(usual, SetMap((1, 0, 3, 2))).index_fixed_points == []


def test_conclusions_on_constant_map(usual):
    t = SetMap.constant(4, 2)
    g = SetGraph(4, ((0, 1), (1, 3)), True)
    cert = certify(usual, t, g, HALF)
    traces = [iterate(usual, t, HALF, u) for u in compute_YT(g, t)]
    v = check_theorem_conclusions(cert, fixed_point_set(usual, t), traces, g)
    assert v.holds
    assert v.status == {"zero_weight": HOLDS, "yt_nonempty": HOLDS, "picard_fixed_point": HOLDS,
                        "step_bound": HOLDS, "complete_iff_singleton": HOLDS}


def test_conclusions_need_certificate(usual):
    g = SetGraph(4, ((0, 1),), True)
    cert = certify(usual, SetMap.identity(4), g, HALF)
    with pytest.raises(NotCertified):
        check_theorem_conclusions(cert, fixed_point_set(usual, SetMap.identity(4)), [], g)


def test_conclusions_need_diagonal(usual):
    t = SetMap.constant(4, 2)
    g = SetGraph(4, ((2, 2),), False)
    cert = certify(usual, t, g, HALF)
    assert cert.certified
    with pytest.raises(NotCertified):
        check_theorem_conclusions(cert, fixed_point_set(usual, t), [], g)


def test_unjoined_fixed_points_do_not_count_against_uniqueness(usual):
    # identity on a loops-only graph: every subset is fixed but no two are joined
    t = SetMap.identity(4)
    g = SetGraph(4, (), True)
    cert = certify(usual, t, g, HALF)
    assert cert.certified
    v = check_theorem_conclusions(cert, fixed_point_set(usual, t), [], g)
    assert v.holds and not v.fixed_points_complete


def test_wellposedness_tolerance_zero(usual):
    t = SetMap.constant(4, 2)
    rep = wellposedness_diagnostic(usual, t)
    assert rep.approximate == fixed_point_set(usual, t).fixed_points
    assert all(d == 0 for d in rep.distances)


def test_wellposedness_constant_map(usual):
    t = SetMap.constant(4, 2)
    rep = wellposedness_diagnostic(usual, t, 1)
    assert rep.approximate == [u for u in range(4) if usual.H(u, 2) <= 1]
    assert all(d <= 1 for d in rep.distances) and rep.flagged == []


def test_wellposedness_without_fixed_point(usual):
    with pytest.raises(NoFixedPoint):
        wellposedness_diagnostic(usual, SetMap((1, 0, 3, 2)))


# -- campaign-style properties ---------------------------------------------


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 2**63), trial=st.integers(0, 1000))
def test_trace_properties_on_generated_instances(seed, trial):
    gen = random_instance(GenConfig(rng_seed=seed), trial)
    inst = gen.instance
    fam, t, phi = inst.family, inst.map, inst.phi
    for u in range(len(fam)):
        tr = iterate(fam, t, phi, u, max_iters=64)
        for a, b in zip(tr.states, tr.states[1:]):
            assert t[a] == b
        for n, s in enumerate(tr.states):
            assert tr.step_weights[n] == hausdorff_bruteforce(fam[s], fam[t[s]])
        assert all(x >= y for x, y in zip(tr.bound_values, tr.bound_values[1:]))
        assert telescoping_violations(fam, tr) == []
    if gen.certified:
        for u in compute_YT(inst.graph, t):
            tr = iterate(fam, t, phi, u)
            if all(inst.graph.has_edge(a, b) for a, b in zip(tr.states, tr.states[1:])):
                assert tr.bound_violations(inst.space) == []
        traces = [iterate(fam, t, phi, u) for u in compute_YT(inst.graph, t)]
        verdict = check_theorem_conclusions(gen.certificate, fixed_point_set(fam, t), traces,
                                            inst.graph)
        assert verdict.holds, verdict.to_dict()
