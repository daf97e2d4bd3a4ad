import math

import pytest
from hypothesis import given, settings, strategies as st

from supnorm.arithmetic import DirichletCharacter, enumerate_characters
from supnorm.kloosterman import (
    KloostermanQuery,
    divisor_count,
    kloosterman_sum,
    kloosterman_weil_check,
)

TRIVIAL = DirichletCharacter.trivial(1)


def brute_force(m, n, c, chi):
    total = 0j
    if c == 1:
        return 1 + 0j
    for a in range(1, c):
        if math.gcd(a, c) != 1:
            continue
        abar = pow(a, -1, c)
        from supnorm.arithmetic import e
        total += chi.conjugate()(a) * e((m * abar + n * a) / c)
    return total


def test_c_equals_one():
    assert kloosterman_sum(KloostermanQuery(3, 5, 1, TRIVIAL)) == 1


def test_classical_value_s_1_1_2():
    # S(1,1;2) = e((1+1)/2) = e(1) = 1... only a=1 contributes: e(2/2) = 1
    assert abs(kloosterman_sum(KloostermanQuery(1, 1, 2, TRIVIAL)) - 1) < 1e-12


def test_classical_value_s_1_1_3():
    # a=1: e(2/3); a=2: abar=2, e(4/3) -> sum = 2 cos(2 pi / 3) = -1
    assert abs(kloosterman_sum(KloostermanQuery(1, 1, 3, TRIVIAL)) + 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(-15, 15), st.integers(-15, 15), st.integers(2, 60))
def test_matches_independent_brute_force(m, n, c):
    q = KloostermanQuery(m, n, c, TRIVIAL)
    assert abs(kloosterman_sum(q) - brute_force(m, n, c, TRIVIAL)) < 1e-9


def test_symmetry_in_m_n():
    for c in (5, 12, 35):
        a = kloosterman_sum(KloostermanQuery(2, 7, c, TRIVIAL))
        b = kloosterman_sum(KloostermanQuery(7, 2, c, TRIVIAL))
        assert abs(a - b) < 1e-10


def test_trivial_sum_is_real():
    for c in range(2, 40):
        v = kloosterman_sum(KloostermanQuery(1, 4, c, TRIVIAL))
        assert abs(v.imag) < 1e-10


def test_twisted_matches_brute_force():
    for chi in enumerate_characters(5):
        for c in (5, 10, 15):
            q = KloostermanQuery(1, 2, c, chi)
            assert abs(kloosterman_sum(q) - brute_force(1, 2, c, chi)) < 1e-9


def test_rejects_modulus_not_dividing_c():
    chi = DirichletCharacter.quadratic(5)
    with pytest.raises(ValueError):
        KloostermanQuery(1, 1, 7, chi)
    with pytest.raises(ValueError):
        KloostermanQuery(1, 1, 0, TRIVIAL)


def test_divisor_count():
    assert [divisor_count(c) for c in (1, 2, 6, 12, 36, 97)] == [1, 2, 4, 6, 9, 2]


def test_weil_reference_for_squarefree_trivial():
    # square-root bound: ratio <= 1 for trivial character, square-free c
    for c in (2, 3, 5, 7, 11, 13, 15, 21, 30, 105):
        rep = kloosterman_weil_check(KloostermanQuery(1, 1, c, TRIVIAL))
        assert rep["ratio"] <= 1.0 + 1e-12, (c, rep)


def test_weil_gcd_factor():
    # m = n = 0 gives Ramanujan sum phi(c) <= tau(c) sqrt(c) sqrt(c)
    rep = kloosterman_weil_check(KloostermanQuery(0, 0, 36, TRIVIAL))
    assert rep["ratio"] <= 1.0
