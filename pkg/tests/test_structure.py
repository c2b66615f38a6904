"""Segal axioms, convolution units, and the two character routes."""

import cmath
import math

import pytest

from orliczalg.errors import OrliczAlgebraError, ScopeError
from orliczalg.groups import GroupFunction, convolve, cyclic, direct_product, integer_window, symmetric_group3
from orliczalg.nfunctions import CATALOG_PAIR_NAMES, pair_from_name, pair_power
from orliczalg.structure import (
    Character,
    convolution_unit,
    enumerate_characters,
    group_exponent,
    multiplicative_functional_search,
    segal_report,
)

ALL_PAIRS = [pair_from_name(name) for name in CATALOG_PAIR_NAMES]


def test_segal_report_z2_power_two():
    rep = segal_report(cyclic(2), pair_power(2.0), samples=6)
    assert rep.passed
    by_name = {c.name: c for c in rep.checks}
    assert by_name["density-spanning"].slack == 0.0
    assert by_name["translation-cost-invariance"].passed


def test_segal_report_battery():
    groups = [cyclic(2), cyclic(4), cyclic(6),
              direct_product(cyclic(2), cyclic(2)), symmetric_group3()]
    for space in groups:
        for pair in ALL_PAIRS:
            rep = segal_report(space, pair, samples=6)
            assert rep.passed, (space.name, pair.phi.label,
                                [(c.name, c.slack) for c in rep.failures()])


def test_segal_zero_function_dominations_trivial():
    rep = segal_report(cyclic(4), pair_power(2.0), samples=1)
    assert rep.passed  # the sample list always includes the zero function


def test_segal_z6_entropy_fifty_samples():
    rep = segal_report(cyclic(6), pair_from_name("entropy"), samples=50)
    assert rep.passed


def test_segal_scope_error_on_window():
    with pytest.raises(ScopeError):
        segal_report(integer_window(8), pair_power(2.0))


def test_unit_z4_example():
    z4 = cyclic(4)
    rep = convolution_unit(z4, pair_power(2.0))
    assert rep.unit.support == (0,)
    assert rep.unit(0) == pytest.approx(4.0)
    d1 = GroupFunction.delta(z4, 1)
    assert convolve(rep.unit, d1).max_abs_diff(d1) <= 1e-12
    assert rep.max_error <= 1e-12
    assert rep.passed


def test_unit_trivial_group():
    rep = convolution_unit(cyclic(1), pair_power(2.0))
    assert rep.unit(0) == pytest.approx(1.0)
    assert rep.max_error <= 1e-15


def test_unit_exhaustive_up_to_64():
    for space in (cyclic(2), cyclic(6), direct_product(cyclic(4), cyclic(4)),
                  symmetric_group3(), cyclic(64)):
        rep = convolution_unit(space, pair_power(2.0))
        assert rep.max_error <= 1e-12, space.name
        assert rep.bracket.lower <= rep.bracket.upper + 1e-9


def test_unit_pointwise_via_plateau():
    rep = convolution_unit(cyclic(6), pair_from_name("entropy"), epsilon=0.5)
    one = rep.pointwise_unit
    assert all(one(x) == pytest.approx(1.0, abs=1e-12) for x in one.space.elements)
    assert rep.pointwise_cert.cost_phi < 2.0 * 1.5


def test_unit_scope_error_on_window():
    with pytest.raises(ScopeError):
        convolution_unit(integer_window(8), pair_power(2.0))


def test_group_exponent():
    L, orders = group_exponent(cyclic(6))
    assert L == 6 and orders[1] == 6 and orders[3] == 2
    L2, _ = group_exponent(direct_product(cyclic(2), cyclic(2)))
    assert L2 == 2


def test_characters_z4_are_powers_of_i():
    z4 = cyclic(4)
    cs = enumerate_characters(z4)
    assert len(cs) == 4
    got = {c.exponents for c in cs.characters}
    want = {tuple((k * x) % 4 for x in range(4)) for k in range(4)}
    assert got == want
    for c in cs.characters:
        k = c.exponents[1]
        for x in z4.elements:
            assert c.value(z4, x) == pytest.approx(1j ** (k * x % 4))


def test_characters_klein_four_all_real():
    v4 = direct_product(cyclic(2), cyclic(2))
    cs = enumerate_characters(v4)
    assert len(cs) == 4
    for c in cs.characters:
        for x in v4.elements:
            assert c.value(v4, x) in (pytest.approx(1.0), pytest.approx(-1.0))


def test_characters_trivial_group():
    cs = enumerate_characters(cyclic(1))
    assert len(cs) == 1
    assert cs.characters[0].exponents == (0,)


def test_characters_nonabelian_scope_error():
    with pytest.raises(ScopeError) as err:
        enumerate_characters(symmetric_group3())
    assert "non-commuting" in str(err.value)


def test_character_pairing_multiplicative_for_convolution():
    z6 = cyclic(6)
    cs = enumerate_characters(z6)
    for c in cs.characters:
        for s in (0, 1, 4):
            for t in (2, 3, 5):
                ds, dt = GroupFunction.delta(z6, s), GroupFunction.delta(z6, t)
                lhs = c.pairing(convolve(ds, dt))
                rhs = c.pairing(ds) * c.pairing(dt)
                assert abs(lhs - rhs) <= 1e-12


def test_search_route_agrees_exactly():
    for space in (cyclic(2), cyclic(3), cyclic(4),
                  direct_product(cyclic(2), cyclic(2)), cyclic(6)):
        a = enumerate_characters(space)
        b = multiplicative_functional_search(space)
        assert a.exponent_set() == b.exponent_set()
        assert len(a) == len(b) == space.size


def test_z2_search_is_plus_minus_one():
    z2 = cyclic(2)
    cs = multiplicative_functional_search(z2)
    values = {tuple(round(c.value(z2, x).real) for x in z2.elements)
              for c in cs.characters}
    assert values == {(1, 1), (1, -1)}


def test_z3_search_finds_cube_roots():
    z3 = cyclic(3)
    cs = multiplicative_functional_search(z3)
    assert len(cs) == 3
    omega = cmath.exp(2j * math.pi / 3.0)
    third = {c.exponents for c in cs.characters}
    assert (0, 1, 2) in third
    witness = next(c for c in cs.characters if c.exponents == (0, 1, 2))
    assert witness.value(z3, 1) == pytest.approx(omega)


def test_non_character_weight_fails_multiplicativity():
    # the weight (1, 2) on Z2 is not |.| = 1 root-of-unity valued and
    # violates w(1+1) = w(1)^2; the exhaustive search can never emit it
    z2 = cyclic(2)
    w = {0: 1.0, 1: 2.0}
    assert w[(1 + 1) % 2] != w[1] * w[1]
    cs = multiplicative_functional_search(z2)
    assert all(abs(c.value(z2, x)) == pytest.approx(1.0)
               for c in cs.characters for x in z2.elements)


def test_character_verification_rejects_bad_exponents():
    z4 = cyclic(4)
    from orliczalg.structure import _verify_homomorphism
    bad = Character(order=4, exponents=(0, 1, 3, 2))
    with pytest.raises(OrliczAlgebraError):
        _verify_homomorphism(z4, bad)
