"""Character, Gauss-sum, L-function and decomposition tests.

Oracles: exhaustive group arithmetic for the tables, Moebius values for
Ramanujan sums, the Leibniz series for L(1, chi_4), Euler factors for
principal characters, and the rational fast path of the periodic pair for
the three-way decomposition check.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadzeta.dirichlet import (
    dirichlet_l,
    enumerate_characters,
    gauss_sum,
    q_via_characters,
)
from quadzeta.errors import PoleAtOne
from quadzeta.sfcore import hurwitz_zeta, periodic_pair_rational, zq_eval

MOEBIUS = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 7: -1, 8: 0, 9: 0,
           10: 1, 11: -1, 12: 0}


def _phi(q: int) -> int:
    return sum(1 for n in range(1, q + 1) if math.gcd(n, q) == 1)


# -------------------------------------------------------------- characters

def test_character_counts_and_tables():
    for q in range(2, 65):
        chars = enumerate_characters(q)
        assert len(chars) == _phi(q), q
        assert chars[0].is_principal
        for chi in chars:
            for n in range(q):
                if math.gcd(n, q) == 1:
                    assert abs(abs(chi(n)) - 1.0) <= 1e-14
                else:
                    assert chi(n) == 0.0


def test_character_examples():
    cs2 = enumerate_characters(2)
    assert len(cs2) == 1 and cs2[0].is_principal

    cs4 = enumerate_characters(4)
    assert len(cs4) == 2
    odd = cs4[1]
    assert odd(3) == pytest.approx(-1.0, abs=0)
    assert odd.parity == -1

    cs5 = enumerate_characters(5)
    assert len(cs5) == 4
    fourth_roots = (1, -1, 1j, -1j)
    for chi in cs5:
        for n in (1, 2, 3, 4):
            assert min(abs(chi(n) - w) for w in fourth_roots) <= 1e-14


def test_character_orthogonality_exhaustive():
    # sum over chi of chi(m) = phi(q) iff m == 1 (mod q), else 0
    for q in range(2, 65):
        chars = enumerate_characters(q)
        phi = len(chars)
        for m in range(1, q + 1):
            if math.gcd(m, q) != 1:
                continue
            total = sum(chi(m) for chi in chars)
            want = phi if m % q == 1 % q else 0
            assert abs(total - want) <= 1e-10, (q, m)


@given(q=st.integers(2, 64), m=st.integers(1, 200), n=st.integers(1, 200))
def test_character_multiplicative(q, m, n):
    if math.gcd(m, q) != 1 or math.gcd(n, q) != 1:
        return
    for chi in enumerate_characters(q):
        assert abs(chi(m * n) - chi(m) * chi(n)) <= 1e-12


def test_modulus_bounds():
    with pytest.raises(ValueError):
        enumerate_characters(65)
    with pytest.raises(ValueError):
        enumerate_characters(0)


# -------------------------------------------------------------- Gauss sums

def test_gauss_sum_q4_example():
    odd = enumerate_characters(4)[1]
    assert gauss_sum(odd, 1) == pytest.approx(2j, abs=1e-14)


def test_gauss_sum_ramanujan():
    for q in range(2, 13):
        principal = enumerate_characters(q)[0]
        assert gauss_sum(principal, 1) == pytest.approx(MOEBIUS[q], abs=1e-12)


def test_gauss_sum_modulus_sqrt5():
    for chi in enumerate_characters(5):
        if not chi.is_principal:
            assert abs(gauss_sum(chi, 1)) == pytest.approx(math.sqrt(5.0),
                                                           abs=1e-12)


def test_gauss_sum_coprimality():
    with pytest.raises(ValueError):
        gauss_sum(enumerate_characters(4)[0], 2)


# ------------------------------------------------------------- L-functions

def _leibniz_oracle(n_terms=200_000):
    # L(1, chi_4) = 1 - 1/3 + 1/5 - ... with alternating tail bound
    acc = 0.0
    sign = 1.0
    for k in range(n_terms):
        acc += sign / (2 * k + 1)
        sign = -sign
    return acc, 1.0 / (2 * n_terms + 1)


def test_l_one_chi4():
    odd = enumerate_characters(4)[1]
    got = dirichlet_l(1.0, odd).value
    oracle, bound = _leibniz_oracle()
    assert abs(got.real - oracle) <= bound + 1e-9
    assert got.real == pytest.approx(math.pi / 4, abs=1e-10)
    assert abs(got.imag) <= 1e-10


def test_l_euler_factor_principal():
    principal3 = enumerate_characters(3)[0]
    want = (1.0 - 3.0 ** -2) * (math.pi ** 2 / 6.0)
    assert dirichlet_l(2.0, principal3).value.real == pytest.approx(want,
                                                                    rel=1e-12)


def test_l_at_zero_table_identity():
    # L(0, chi) = sum chi(m) (1/2 - m/q) = -(1/q) sum m chi(m)
    for q in (3, 4, 5, 8, 12):
        for chi in enumerate_characters(q):
            want = sum(chi(m) * (0.5 - m / q) for m in range(1, q + 1))
            if chi.is_principal:
                got = dirichlet_l(0.0, chi).value
            else:
                got = dirichlet_l(0.0, chi).value
            assert abs(got - want) <= 1e-12, (q, chi)


def test_l_pole_principal():
    with pytest.raises(PoleAtOne):
        dirichlet_l(1.0, enumerate_characters(3)[0])


def test_l_principal_near_pole_is_finite():
    # only s = 1 itself is the pole; nearby values are large but exact
    chi0 = enumerate_characters(3)[0]
    want = (1.0 - 3.0 ** -1.03) * hurwitz_zeta(1.03, 1.0).value.real
    assert dirichlet_l(1.03, chi0).value.real == pytest.approx(want, rel=1e-12)


# ----------------------------------------------------------- decomposition

def test_decomposition_examples():
    assert q_via_characters(2.0 + 0j, 1, 4).rel_residual <= 1e-10
    assert q_via_characters(0.5 + 5j, 1, 3).rel_residual <= 1e-9
    rep = q_via_characters(3.0 + 0j, 2, 5).rel_residual
    assert rep <= 1e-10


def test_decomposition_three_way_agreement():
    # direct Q, character sum, and the rational fast path all agree
    s = 3.0 + 0j
    trip = zq_eval(s, Fraction(2, 5))
    rat_p = periodic_pair_rational(s, 2, 5).value
    q_rat = 0.5 * (trip.z.value + rat_p)
    rep = q_via_characters(s, 2, 5)
    assert abs(rep.lhs - q_rat) <= 1e-12 * max(1.0, abs(q_rat))
    assert abs(rep.rhs - q_rat) <= 1e-10 * max(1.0, abs(q_rat))


def test_decomposition_grid():
    sigmas = (-0.5, 0.5, 2.0)
    ts = (0.0, 3.0, 10.0)
    for q in (3, 4, 5, 6, 7, 8, 12):
        for r in range(1, q // 2 + 1):
            if math.gcd(r, q) != 1:
                continue
            for sig in sigmas:
                for t in ts:
                    rep = q_via_characters(complex(sig, t), r, q)
                    assert rep.rel_residual <= 1e-9, (sig, t, r, q)


def test_decomposition_even_characters_only():
    # the parity factor (1 + chi(-1)) annihilates odd characters: summing
    # with the explicit factor over all characters equals doubling evens
    s, r, q = 2.0 + 0j, 1, 5
    chars = enumerate_characters(q)
    with_factor = sum((1 + chi.parity) * chi.conj(r) * dirichlet_l(s, chi).value
                      for chi in chars)
    evens_only = sum(2.0 * chi.conj(r) * dirichlet_l(s, chi).value
                     for chi in chars if chi.parity == 1)
    assert abs(with_factor - evens_only) <= 1e-15 * max(1.0, abs(evens_only))


def test_decomposition_validation():
    with pytest.raises(ValueError):
        q_via_characters(2.0 + 0j, 2, 4)   # not coprime
    with pytest.raises(ValueError):
        q_via_characters(2.0 + 0j, 3, 5)   # r/q > 1/2
    with pytest.raises(PoleAtOne):
        q_via_characters(1.0 + 0j, 1, 4)
