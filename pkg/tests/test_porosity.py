"""Level-set membership and the avoidance-pair witness pipeline."""

from random import Random

import pytest

from orliczalg.errors import InfeasibleWindowError, OrliczAlgebraError, ScopeError
from orliczalg.groups import GroupFunction, cyclic, integer_window
from orliczalg.nfunctions import pair_from_name, pair_power
from orliczalg.porosity import (
    build_witness,
    level_integral,
    level_membership,
    make_instance,
)


@pytest.fixture(scope="module")
def window():
    return integer_window(256)


@pytest.fixture(scope="module")
def box(window):
    return GroupFunction.indicator(window, range(-5, 6))


def overlap_oracle(a: int, width: int, x: int) -> int:
    """|[-w, w] cap [x - w, x + w]| by interval arithmetic."""
    lo = max(-width, x - width)
    hi = min(width, x + width)
    return max(0, hi - lo + 1)


def test_level_integral_oracle(window, box):
    # two centered boxes: the integral at shift x is the overlap count
    for x in (-3, -1, 0, 1, 2, 7, 11):
        want = float(overlap_oracle(5, 5, x))
        assert level_integral(box, box, x) == pytest.approx(want)


def test_level_membership_boundary_cases(window, box):
    member, top, arg = level_membership(box, box, 11, 1)
    assert member and top == pytest.approx(11.0) and arg == 0
    member10, top10, _ = level_membership(box, box, 10, 1)
    assert not member10 and top10 == pytest.approx(11.0)
    zero = GroupFunction.zero(window)
    member0, top0, _ = level_membership(zero, zero, 1, 1)
    assert member0 and top0 == 0.0


def test_make_instance_validates_membership(window, box):
    inst = make_instance(box, box, 11, 32.0, 1)
    assert inst.threshold == pytest.approx(5.5)
    assert not inst.boundary_flag
    with pytest.raises(OrliczAlgebraError):
        make_instance(box, box, 10, 32.0, 1)


def test_instance_scope_errors(window, box):
    z8 = cyclic(8)
    with pytest.raises(ScopeError):
        make_instance(GroupFunction.delta(z8, 0), GroupFunction.delta(z8, 0), 1, 1.0)
    with pytest.raises(OrliczAlgebraError):
        make_instance(box, box, 11, -1.0, 1)


def test_witness_acceptance_instance(window, box):
    inst = make_instance(box, box, 11, 32.0, 1)
    wit = build_witness(inst, pair_power(2.0), probe_count=25, seed=3)
    assert wit.quadrant == (1, 1)
    assert wit.m0 == 2                      # two 3-point translates
    assert wit.lam_k == 6.0                 # lam(K) = 6 > 5.5
    assert wit.lam_k > wit.threshold
    assert wit.guaranteed_integral == pytest.approx(12.0)  # (R^2/512) lam(K)
    assert wit.guaranteed_integral > inst.n
    assert wit.all_probes_violate
    assert wit.plateau_cert.cost_phi + wit.plateau_cert.cost_psi <= 8.0
    assert wit.dist_f_bound <= inst.radius / 2.0
    assert wit.dist_g_bound <= inst.radius / 2.0


def test_witness_probe_diagnostics(window, box):
    inst = make_instance(box, box, 11, 32.0, 1)
    wit = build_witness(inst, pair_from_name("entropy"), probe_count=10, seed=5)
    R = inst.radius
    for probe in wit.probes:
        assert probe.h_min_on_k >= R / 16.0
        assert probe.k_min_on_k > R / 32.0
        assert probe.budget_f <= 0.99 * R / 32.0
        assert probe.budget_g <= 0.99 * R / 32.0
        assert probe.integral_value > inst.n


def test_witness_deterministic_per_seed(window, box):
    inst = make_instance(box, box, 11, 32.0, 1)
    a = build_witness(inst, pair_power(2.0), probe_count=15, seed=9)
    b = build_witness(inst, pair_power(2.0), probe_count=15, seed=9)
    assert a.collected == b.collected
    assert [(p.violating_x, p.integral_value) for p in a.probes] == \
        [(p.violating_x, p.integral_value) for p in b.probes]
    c = build_witness(inst, pair_power(2.0), probe_count=15, seed=10)
    assert [(p.delta_f.kind, p.delta_f.position) for p in a.probes] != \
        [(p.delta_f.kind, p.delta_f.position) for p in c.probes]


def test_witness_small_n_single_translate(window):
    # 512 * 2 / 32^2 = 1, so one 3-point translate already exceeds it
    zero = GroupFunction.zero(window)
    inst = make_instance(zero, zero, 2, 32.0, 1)
    wit = build_witness(inst, pair_power(2.0), probe_count=5, seed=1)
    assert wit.m0 == 1
    assert wit.lam_k == 3.0
    assert wit.all_probes_violate


def test_witness_zero_pair_constructs(window):
    zero = GroupFunction.zero(window)
    inst = make_instance(zero, zero, 11, 32.0, 1)
    wit = build_witness(inst, pair_power(2.0), probe_count=10, seed=2)
    assert wit.all_probes_violate


def test_witness_infeasible_window_reports_radius():
    tiny = integer_window(6)
    zero = GroupFunction.zero(tiny)
    inst = make_instance(zero, zero, 11, 4.0, 1)   # needs lam(K) > 352
    with pytest.raises(InfeasibleWindowError) as err:
        build_witness(inst, pair_power(2.0), probe_count=1, seed=0)
    assert err.value.minimal_radius is not None
    assert err.value.minimal_radius > 6


def test_negative_quadrant_sign_flips(window):
    # f strictly negative on most of the window outweighs the complement,
    # so s(1) = -1 wins and the perturbation must point the same way for
    # |h| >= R/16 on K (zero values count toward the Re >= 0 side)
    f = GroupFunction.indicator(window, range(-200, 201)).scale(-0.01)
    g = GroupFunction.indicator(window, range(-5, 6))
    inst = make_instance(f, g, 11, 32.0, 1)
    wit = build_witness(inst, pair_power(2.0), probe_count=10, seed=4)
    assert wit.quadrant[0] == -1
    assert wit.all_probes_violate
    for probe in wit.probes:
        assert probe.h_min_on_k >= inst.radius / 16.0
