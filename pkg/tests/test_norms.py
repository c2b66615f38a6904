"""Modular, Luxemburg and Orlicz norms against closed forms and each other."""

import math
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orliczalg.groups import GroupFunction, cyclic, random_function
from orliczalg.nfunctions import CATALOG_PAIR_NAMES, pair_from_name, pair_power
from orliczalg.norms import char_fn_norm, holder_pairing, luxemburg, modular, orlicz_norm

ALL_PAIRS = [pair_from_name(name) for name in CATALOG_PAIR_NAMES]


@pytest.fixture(scope="module")
def z8():
    return cyclic(8)


@pytest.fixture(scope="module")
def z12():
    return cyclic(12)


def test_modular_direct_sums(z8):
    quad = pair_power(2.0).phi
    assert modular(quad, GroupFunction.zero(z8)) == 0.0
    # Phi = x^2/2: constant 1 on normalized measure gives 1/2
    assert modular(quad, GroupFunction.constant(z8, 1.0)) == pytest.approx(0.5)
    # 2 chi_F with lam(F) = 1/4: Phi(2) * 1/4 = 1/2
    f = GroupFunction.indicator(z8, [0, 1]).scale(2.0)
    assert modular(quad, f) == pytest.approx(0.5)


def test_luxemburg_zero_and_closed_form(z8):
    quad = pair_power(2.0).phi
    assert luxemburg(quad, GroupFunction.zero(z8)).value == 0.0
    # chi_F with lam(F) = 1/2: rho(f/k) = 1/(4 k^2) = 1 at k = 1/2
    f = GroupFunction.indicator(z8, [0, 1, 2, 3])
    rep = luxemburg(quad, f)
    assert rep.value == pytest.approx(0.5, abs=1e-10)
    assert rep.value == pytest.approx(char_fn_norm(quad, z8, [0, 1, 2, 3]), abs=1e-10)


def test_luxemburg_homogeneity_random(z8):
    rng = Random(2)
    for pair in ALL_PAIRS:
        f = random_function(z8, rng)
        base = luxemburg(pair.phi, f).value
        scaled = luxemburg(pair.phi, f.scale(3.7)).value
        assert scaled == pytest.approx(3.7 * base, rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-3.0, 3.0), min_size=2, max_size=8),
       st.lists(st.floats(-3.0, 3.0), min_size=2, max_size=8))
def test_luxemburg_triangle_inequality(a_vals, b_vals):
    z8 = cyclic(8)
    quad = pair_power(2.0).phi
    f = GroupFunction(z8, dict(enumerate(a_vals)))
    g = GroupFunction(z8, dict(enumerate(b_vals)))
    lhs = luxemburg(quad, f + g).value
    rhs = luxemburg(quad, f).value + luxemburg(quad, g).value
    assert rhs - lhs >= -1e-10


def test_luxemburg_monotone_in_absolute_value(z8):
    rng = Random(4)
    for pair in ALL_PAIRS:
        f = random_function(z8, rng)
        g = f + random_function(z8, rng).abs_values()  # |g| >= |f| fails in general
        f_abs = f.abs_values()
        g_abs = f_abs + random_function(z8, rng).abs_values()
        assert (luxemburg(pair.phi, f_abs).value
                <= luxemburg(pair.phi, g_abs).value + 1e-12)


def test_char_fn_norm_closed_forms(z8):
    quad = pair_power(2.0).phi
    assert char_fn_norm(quad, z8, z8.elements) == pytest.approx(1.0 / math.sqrt(2.0))
    assert char_fn_norm(quad, z8, [0, 1, 2, 3]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        char_fn_norm(quad, z8, [])


def test_char_fn_norm_matches_bisection_on_random_subsets(z12):
    rng = Random(6)
    for pair in ALL_PAIRS:
        for _ in range(20):
            size = rng.randint(1, 12)
            subset = rng.sample(list(z12.elements), size)
            closed = char_fn_norm(pair.phi, z12, subset)
            bisected = luxemburg(pair.phi, GroupFunction.indicator(z12, subset)).value
            assert abs(closed - bisected) <= 1e-10


def test_orlicz_norm_quadratic_closed_form(z8):
    # ||f||_Phi = sqrt(2) ||f||_2 for Phi = x^2/2; chi_G has ||.||_2 = 1
    pair = pair_power(2.0)
    rep = orlicz_norm(pair, GroupFunction.constant(z8, 1.0))
    assert rep.value == pytest.approx(math.sqrt(2.0), rel=1e-9)
    assert rep.agreed
    assert rep.oracle_value == pytest.approx(rep.value, abs=1e-6)


def test_orlicz_norm_zero(z8):
    rep = orlicz_norm(pair_power(2.0), GroupFunction.zero(z8))
    assert rep.value == 0.0 and rep.oracle_value == 0.0


def test_orlicz_min_method_agrees_with_oracle(z8):
    rng = Random(8)
    for pair in ALL_PAIRS:
        for _ in range(10):
            f = random_function(z8, rng, amplitude=2.0)
            rep = orlicz_norm(pair, f)
            assert rep.agreed, (pair.phi.label, rep.value, rep.oracle_value)
            assert abs(rep.value - rep.oracle_value) <= 1e-6 * max(1.0, rep.value)


def test_norm_equivalence_sandwich(z8):
    rng = Random(10)
    for pair in ALL_PAIRS:
        for _ in range(10):
            f = random_function(z8, rng, amplitude=4.0)
            n = luxemburg(pair.phi, f).value
            o = orlicz_norm(pair, f).value
            assert n <= o + 1e-9
            assert o <= 2.0 * n + 1e-9


def test_quadratic_attains_equivalence_factor_two(z8):
    pair = pair_power(2.0)
    f = random_function(z8, Random(12), amplitude=2.0)
    n = luxemburg(pair.phi, f).value
    o = orlicz_norm(pair, f).value
    assert o == pytest.approx(2.0 * n, rel=1e-8)


def test_holder_bound_for_oracle_witness(z8):
    # the oracle's maximizer g is feasible, so sum |f g| lam <= ||f||_Phi
    from orliczalg.norms import _oracle_maximizer
    rng = Random(14)
    for pair in ALL_PAIRS:
        f = random_function(z8, rng)
        value, g, _ = _oracle_maximizer(pair, f)
        assert luxemburg(pair.psi, g).value <= 1.0 + 1e-9
        assert holder_pairing(f, g) <= orlicz_norm(pair, f).value + 1e-9
        assert value == pytest.approx(holder_pairing(f, g), abs=1e-12)


def test_unit_ball_test_modular_iff_norm(z8):
    # N_Phi(f) <= 1 iff rho_Phi(f) <= 1 on finite carriers
    rng = Random(16)
    pair = pair_from_name("entropy")
    for _ in range(10):
        f = random_function(z8, rng, amplitude=2.0)
        n = luxemburg(pair.phi, f).value
        rho = modular(pair.phi, f)
        assert (n <= 1.0 + 1e-12) == (rho <= 1.0 + 1e-9), (n, rho)
