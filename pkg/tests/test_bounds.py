import math

import numpy as np
import pytest

from conftest import corpus
from qwstationary import (
    NotApplicableError,
    analyze_marked,
    bound_for,
    compare_bound_to_simulation,
    compute_a_bar,
    construct_stationary,
    decompose_unmarked,
    gen_complete,
    gen_counterexample,
    gen_cycle,
    gen_path,
    gen_star,
    probability_bound,
    unit_marked_amplitudes,
    verify_a_bound,
    witness_state,
)


def test_a_bar_examples():
    g, M = gen_counterexample()
    assert compute_a_bar(analyze_marked(g, M), g.m) == pytest.approx(1 / math.sqrt(5), abs=1e-15)
    g, M = gen_cycle(6, 2)
    assert compute_a_bar(analyze_marked(g, M), g.m) == pytest.approx(1 / math.sqrt(8), abs=1e-15)
    g, M = gen_star(7)
    assert compute_a_bar(analyze_marked(g, M), g.m) == pytest.approx(1 / math.sqrt(7), abs=1e-15)


def test_a_bar_decreases_with_m():
    vals = []
    for n in (6, 10, 20, 40):
        g, M = gen_cycle(n, 2)
        vals.append(compute_a_bar(analyze_marked(g, M), g.m))
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_witness_unit_norm(name):
    g, M = corpus()[name]
    ma = analyze_marked(g, M)
    a_bar = compute_a_bar(ma, g.m)
    assert a_bar**2 * ma.unmarked_degsum == pytest.approx(1.0, abs=1e-12)
    x = witness_state(g, ma)
    assert x @ x == pytest.approx(1.0, abs=1e-12)


def test_verify_a_bound_c6():
    g, M = gen_cycle(6, 2)
    ma = analyze_marked(g, M)
    st = construct_stationary(g, M).state
    assert verify_a_bound(st, compute_a_bar(ma, g.m))
    assert abs(st.component_amps[0]) < compute_a_bar(ma, g.m)


def test_witness_attains_a_bar():
    g, M = gen_cycle(9, 2)
    ma = analyze_marked(g, M)
    x = witness_state(g, ma)
    assert set(np.unique(x)) == {0.0, compute_a_bar(ma, g.m)}


def test_c_zero_state_strictly_below_a_bar():
    # path 0-1-2 marked {1}: a = (1, -1)/2 already zeroes the marked sum, so c is empty.
    # the stationary state also carries a on the marked->unmarked arcs, hence
    # a = a_bar * sqrt(denom / (denom + D)) = (1/sqrt2) * sqrt(2/4)
    g, M = gen_path(3, [1])
    ma = analyze_marked(g, M)
    st = construct_stationary(g, M).state
    assert st.marked_edge_amps == {}
    a_bar = compute_a_bar(ma, g.m)
    assert abs(st.component_amps[0]) == pytest.approx(a_bar * math.sqrt(2 / 4), abs=1e-15)
    assert verify_a_bound(st, a_bar)


def test_verify_a_bound_not_applicable_gstar():
    g, M = gen_counterexample()
    st = construct_stationary(g, M).state
    with pytest.raises(NotApplicableError):
        verify_a_bound(st, compute_a_bar(analyze_marked(g, M), g.m))


def test_bound_c6_pair():
    g, M = gen_cycle(6, 2)
    rep = bound_for(g, M)
    assert rep.c_sq_sum == pytest.approx(1.0, abs=1e-12)
    assert rep.bound == pytest.approx(3.5, abs=1e-12)
    assert rep.bound_clamped == 1.0


def test_bound_c50_pair():
    g, M = gen_cycle(50, 2)
    rep = bound_for(g, M)
    assert rep.denom == 96
    assert rep.bound == pytest.approx(7 / 24, abs=1e-12)


def test_bound_p4_middle_pair():
    g, M = gen_path(4, [1, 2])
    rep = bound_for(g, M)
    # denom 6-2-2 = 2, c = -1
    assert rep.bound == pytest.approx(4 / 2 * (1 + 4 + 2), abs=1e-12)


def test_bound_formula_direct():
    g, M = gen_cycle(6, 2)
    ma = analyze_marked(g, M)
    rep = probability_bound(ma, g.m, {(0, 1): 0.0})
    assert rep.bound == pytest.approx(4 / 8 * 6, abs=1e-12)
    assert rep.a_naive == pytest.approx(1 / math.sqrt(12))


def test_bound_not_applicable():
    for g, M in (gen_counterexample(), gen_cycle(4, 1), gen_star(4)):
        ma = analyze_marked(g, M)
        with pytest.raises(NotApplicableError):
            unit_marked_amplitudes(g, ma, decompose_unmarked(g, ma))
        with pytest.raises(NotApplicableError):
            compare_bound_to_simulation(g, M, 10)


def test_simulation_t0_matches_formula():
    g, M = gen_complete(5, 3)
    rep = compare_bound_to_simulation(g, M, 0)
    ma = analyze_marked(g, M)
    assert rep.sim_max_p == pytest.approx((2 * ma.e_m + ma.d_boundary) / (2 * g.m), abs=1e-15)


def test_vacuous_bound_never_violates():
    g, M = gen_cycle(6, 2)
    rep = compare_bound_to_simulation(g, M, 500)
    assert rep.bound >= 1 and not rep.violation
