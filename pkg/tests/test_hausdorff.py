from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from dislofix import _debug
from dislofix.errors import EmptySubset, MixedSpaces
from dislofix.hausdorff import (FiniteSubset, SetFamily, excess, hausdorff, point_to_set,
                                point_to_set_limit_diagnostic, self_distance, subset)
from dislofix.oracle import hausdorff_bruteforce

from conftest import max_space, random_space_and_family, usual_space


@pytest.fixture
def mx():
    # values 1, 2, 3, 5 at indices 0..3
    return max_space([1, 2, 3, 5])


def test_point_to_set_examples(mx):
    assert point_to_set(mx, 0, subset(mx, [1, 2])) == 2
    assert point_to_set(mx, 3, subset(mx, [3])) == 5
    us = usual_space([0, 1, 4])
    assert point_to_set(us, 1, subset(us, [0, 1])) == 0


def test_excess_asymmetry(mx):
    A, B = subset(mx, [0, 1]), subset(mx, [1, 2])
    assert excess(mx, A, B) == 2
    assert excess(mx, B, A) == 3


def test_excess_of_subset_is_zero_in_usual_metric():
    us = usual_space([0, 1, 4, 9])
    assert excess(us, subset(us, [1, 2]), subset(us, [0, 1, 2])) == 0


def test_positive_self_excess(mx):
    A = subset(mx, [0, 1])
    assert excess(mx, A, A) == 2
    assert hausdorff(mx, A, A) == 2 == self_distance(mx, A)


def test_hausdorff_example(mx):
    assert hausdorff(mx, subset(mx, [0, 1]), subset(mx, [1, 2])) == 3


def test_zero_hausdorff_means_equal_sets():
    us = usual_space([0, 1, 4])
    U = subset(us, [0, 2])
    assert hausdorff(us, U, subset(us, [2, 0])) == 0


def test_empty_and_mixed(mx):
    with pytest.raises(EmptySubset):
        FiniteSubset(mx, ())
    other = max_space([1, 2, 3, 5])
    with pytest.raises(MixedSpaces):
        hausdorff(mx, subset(mx, [0]), subset(other, [0]))
    with pytest.raises(MixedSpaces):
        SetFamily(mx, [subset(mx, [0]), subset(other, [1])])


def test_family_rejects_duplicates(mx):
    with pytest.raises(ValueError, match="duplicate"):
        SetFamily(mx, [[0, 1], [1, 0]])


def test_family_table_matches_pairwise(mx):
    fam = SetFamily(mx, [[0], [1], [0, 1], [1, 2, 3]])
    for i, U in enumerate(fam):
        for j, V in enumerate(fam):
            assert fam.H(i, j) == hausdorff(mx, U, V)
    assert fam.position([1, 0]) == 2


def test_exact_values_are_fractions():
    sp = usual_space([0, Fr(1, 3), Fr(5, 7)])
    h = hausdorff(sp, subset(sp, [0]), subset(sp, [1, 2]))
    assert h == Fr(5, 7) and isinstance(h, Fr)


def test_float_mode_agrees_with_exact():
    vals = [0, Fr(1, 3), Fr(5, 7), 2]
    ex, fl = usual_space(vals), usual_space(vals, exact=False)
    fe = SetFamily(ex, [[0], [1, 2], [0, 3], [1, 2, 3]])
    ff = SetFamily(fl, [[0], [1, 2], [0, 3], [1, 2, 3]])
    for i in range(4):
        for j in range(4):
            assert abs(float(fe.H(i, j)) - ff.H(i, j)) < 1e-12


# -- the set-metric laws on random families -------------------------------


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**63))
def test_ph_metric_items_one_to_four(seed):
    space, fam = random_space_and_family(seed, 0)
    tab = space.table
    h = fam.hausdorff_table
    k = len(fam)
    for i, U in enumerate(fam):
        # item 1: H(U,U) = D(U,U) = max over u of xi(u, U)
        assert h[i][i] == excess(space, U, U) == max(min(tab[u][w] for w in U) for u in U)
        for j in range(k):
            assert h[i][j] == h[j][i]
            if h[i][j] == 0:
                assert fam[i] == fam[j]
            for m in range(k):
                assert h[i][m] <= h[i][j] + h[j][m]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**63))
def test_self_distance_below_cross_distance_on_max_metric(seed):
    # xi(x, x) <= xi(x, y) holds for max{r, s}, and with it H(U,U) <= H(U,V)
    import numpy as np
    rng = np.random.default_rng(seed)
    vals = sorted({int(v) for v in rng.integers(0, 50, size=6)})
    sp = max_space(vals)
    n = len(vals)
    subsets = {tuple(sorted(set(int(x) for x in rng.choice(n, size=rng.integers(1, n + 1)))))
               for _ in range(8)}
    fam = SetFamily(sp, [list(s) for s in subsets])
    h = fam.hausdorff_table
    for i in range(len(fam)):
        for j in range(len(fam)):
            assert h[i][i] <= h[i][j]


def test_self_distance_can_exceed_cross_distance():
    # xi(a,a) = 2, xi(a,b) = 1, xi(b,b) = 0 is a valid dislocated metric, yet
    # H({a},{a}) = 2 > 1 = H({a},{b})
    from dislofix.metric import DislocatedSpace, check_axioms
    sp = DislocatedSpace.from_table([[2, 1], [1, 0]])
    assert check_axioms(sp).passed
    fam = SetFamily(sp, [[0], [1]])
    assert fam.H(0, 0) == 2 > fam.H(0, 1) == 1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**63))
def test_zero_point_to_set_means_membership(seed):
    space, fam = random_space_and_family(seed, 0)
    for U in fam:
        for a in range(len(space)):
            if point_to_set(space, a, U) == 0:
                assert a in U


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**63), trial=st.integers(0, 50))
def test_fast_path_matches_oracle(seed, trial):
    space, fam = random_space_and_family(seed, trial)
    before = _debug.count()
    for U in fam:
        for V in fam:
            assert hausdorff(space, U, V) == hausdorff_bruteforce(U, V)
    assert _debug.count() > before


def test_limit_diagnostic_reports_both_readings(mx):
    U = subset(mx, [2])
    rep = point_to_set_limit_diagnostic(mx, [3, 3, 3, 0, 0, 0], 0, U)
    assert rep.gaps == [2, 2, 2, 0, 0, 0]
    assert rep.self_distance == 1
    assert rep.matches_zero and not rep.matches_self_distance
