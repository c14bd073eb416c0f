"""Tests for coefficient families, truncated series, and the W operator.

The coefficient families are checked against brute-force chain enumeration
(exact rationals), the series against direct mpmath function evaluation, and
the W-operator identities exactly in the Q + Q*pi coefficient ring.
"""

import itertools
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf, workdps

from multizeta.hp import HPReal
from multizeta.wseries import (
    CoeffTable,
    SeriesCoeff,
    TruncatedSeries,
    arcsin_power_series,
    arctanh_nested_coeff,
    arctanh_power_series,
    coeff_table,
    double_factorial,
    g_coeff,
    h_coeff,
    w_apply,
    wallis_fraction,
    wallis_identity_check,
)


# ---------------------------------------------------------------------------
# coefficient families
# ---------------------------------------------------------------------------


def brute_g(N, k):
    """G_N(k) by direct enumeration of strictly decreasing chains below k."""
    total = Fraction(0)
    for chain in itertools.combinations(range(k), N):
        p = Fraction(1)
        for n in chain:
            p /= (2 * n + 1) ** 2
        total += p
    return total


def brute_a(N, m):
    """A_N(m): chains m > n_N > ... > n_1 >= 1 with n_j = j (mod 2)."""
    total = Fraction(0)
    for chain in itertools.combinations(range(1, m), N):
        if any(chain[j] % 2 != (j + 1) % 2 for j in range(N)):
            continue
        p = Fraction(1)
        for n in chain:
            p /= n
        total += p
    return total


def test_g_examples():
    assert all(g_coeff(0, k) == 1 for k in range(10))
    assert g_coeff(1, 2) == Fraction(10, 9)
    assert g_coeff(2, 2) == Fraction(1, 9)


def test_g_bruteforce():
    for N in range(4):
        for k in range(12):
            assert g_coeff(N, k) == brute_g(N, k), (N, k)


def test_g_recurrence_exact():
    for N in range(1, 5):
        for k in range(1, 40):
            assert g_coeff(N, k) == sum(
                (g_coeff(N - 1, n) / Fraction((2 * n + 1) ** 2) for n in range(k)),
                Fraction(0),
            )


def test_h_examples():
    assert all(h_coeff(1, k) == Fraction(1, 4) for k in range(1, 10))
    assert h_coeff(2, 2) == Fraction(1, 16)
    assert h_coeff(2, 3) == Fraction(5, 64)


def test_h_recurrence_exact():
    for N in range(2, 5):
        for k in range(1, 40):
            assert h_coeff(N, k) == sum(
                (h_coeff(N - 1, n) / Fraction((2 * n) ** 2) for n in range(1, k)),
                Fraction(0),
            )


def test_arctanh_coeffs_bruteforce():
    for N in range(4):
        for m in range(1, 12):
            assert arctanh_nested_coeff(N, m) == brute_a(N, m), (N, m)


def test_family_signs():
    # zero below the chain length, strictly positive from there on
    for N in range(1, 5):
        for k in range(N):
            assert g_coeff(N, k) == 0
        for k in range(N, N + 20):
            assert g_coeff(N, k) > 0
        for k in range(1, N):
            assert h_coeff(N, k) == 0
        for k in range(N, N + 20):
            assert h_coeff(N, k) > 0


def test_coeff_table_accessor():
    t = coeff_table("G", 2, 15)
    assert isinstance(t, CoeffTable)
    assert t.values[2] == Fraction(1, 9)
    assert all(isinstance(v, Fraction) for v in t.values.values())
    with pytest.raises(ValueError):
        coeff_table("X", 1, 5)
    with pytest.raises(ValueError):
        coeff_table("H", 0, 5)
    with pytest.raises(ValueError):
        g_coeff(-1, 2)
    with pytest.raises(ValueError):
        h_coeff(1, 0)


def test_table_growth_is_thread_safe():
    results = []

    def worker():
        results.append(g_coeff(3, 150))

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
    assert results[0] == g_coeff(3, 150)


# ---------------------------------------------------------------------------
# double factorials and Wallis fractions
# ---------------------------------------------------------------------------


def test_double_factorial_conventions():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(1) == 1
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
    with pytest.raises(ValueError):
        double_factorial(-2)


def test_wallis_fraction_values():
    # W_0 = pi/2 (fraction 1), W_1 = 1, W_2 = pi/4 (fraction 1/2)
    assert wallis_fraction(0) == 1
    assert wallis_fraction(1) == 1
    assert wallis_fraction(2) == Fraction(1, 2)
    assert wallis_fraction(3) == Fraction(2, 3)
    # the telescoping used by the odd-route roundtrip
    for k in range(20):
        assert wallis_fraction(2 * k + 1) * wallis_fraction(2 * k) == Fraction(
            1, 2 * k + 1
        )


# ---------------------------------------------------------------------------
# series construction and evaluation
# ---------------------------------------------------------------------------


def test_arcsin_series_classical():
    s = arcsin_power_series(1, 9)
    rats = [c.rational for c in s.coeffs]
    assert rats[:8] == [0, 1, 0, Fraction(1, 6), 0, Fraction(3, 40), 0, Fraction(15, 336)]
    assert s.truncation_order == 9


def test_leading_terms_are_z_N_over_N_factorial():
    import math

    for N in range(1, 7):
        s = arcsin_power_series(N, 12)
        assert s.coeffs[N].rational == Fraction(1, math.factorial(N))
        assert all(c.is_zero() for c in s.coeffs[:N])
        t = arctanh_power_series(N, 12)
        assert t.coeffs[N].rational == Fraction(1, math.factorial(N))


def test_arctanh_series_classical():
    s = arctanh_power_series(1, 9)
    assert [c.rational for c in s.coeffs] == [
        0, 1, 0, Fraction(1, 3), 0, Fraction(1, 5), 0, Fraction(1, 7), 0, Fraction(1, 9),
    ]
    assert arctanh_power_series(3, 5).coeffs[3].rational == Fraction(1, 6)


@pytest.mark.parametrize("N", range(1, 7))
def test_series_vs_function(N):
    fa = arcsin_power_series(N, 80)
    ft = arctanh_power_series(N, 80)
    for zf in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2)):
        for series, fn in ((fa, mp.asin), (ft, mp.atanh)):
            r = series.eval_at(zf, 50)
            with workdps(75):
                zv = mpf(zf.numerator) / zf.denominator
                err = abs(r.value.magnitude - fn(zv) ** N / mp.factorial(N))
            assert err <= r.error_bound.magnitude, (N, zf, float(err))


def test_arcsin_cube_at_half():
    # arcsin(1/2) = pi/6, so the N=3 series at 1/2 approaches (pi/6)^3/6
    r = arcsin_power_series(3, 80).eval_at(Fraction(1, 2), 50)
    with workdps(75):
        target = (mp.pi / 6) ** 3 / 6
        assert abs(r.value.magnitude - target) <= r.error_bound.magnitude
        assert abs(r.value.magnitude - target) < mpf(10) ** -24


def test_coefficients_view_is_hp():
    s = arcsin_power_series(2, 6)
    cs = s.coefficients
    assert len(cs) == 7
    assert all(isinstance(c, HPReal) for c in cs)
    assert float(cs[2].magnitude) == 0.5
    c30 = s.coefficients_at(30)
    assert c30[2].working_precision == 30


def test_eval_validation():
    s = arcsin_power_series(1, 20)
    with pytest.raises(ValueError):
        s.eval_at(Fraction(3, 2), 50)
    # r = 1 gets the flat-tail estimate, still finite and honest
    r = s.eval_at(1, 30)
    with workdps(60):
        assert abs(r.value.magnitude - mp.pi / 2) <= r.error_bound.magnitude


def test_integrate_over_z():
    s = TruncatedSeries.from_rationals([0, 2, 0, 5])
    g = s.integrate_over_z()
    assert [c.rational for c in g.coeffs] == [0, 2, 0, Fraction(5, 3)]
    with pytest.raises(ValueError):
        TruncatedSeries.from_rationals([1, 1]).integrate_over_z()


def test_series_construction_validation():
    with pytest.raises(ValueError):
        arcsin_power_series(0, 10)
    with pytest.raises(ValueError):
        arcsin_power_series(5, 3)
    with pytest.raises(ValueError):
        arctanh_power_series(-1, 10)


# ---------------------------------------------------------------------------
# the W operator
# ---------------------------------------------------------------------------


def test_w_apply_trivial_examples():
    # f = 1 -> pi/2;  f = z -> z;  f = z^2 -> (pi/4) z^2
    w_one = w_apply(TruncatedSeries.from_rationals([1]))
    assert w_one.coeffs[0] == SeriesCoeff(Fraction(0), Fraction(1, 2))
    w_z = w_apply(TruncatedSeries.from_rationals([0, 1]))
    assert w_z.coeffs[1] == SeriesCoeff(Fraction(1))
    w_z2 = w_apply(TruncatedSeries.from_rationals([0, 0, 1]))
    assert w_z2.coeffs[2] == SeriesCoeff(Fraction(0), Fraction(1, 4))


def test_w_apply_refuses_pi_squared():
    once = w_apply(TruncatedSeries.from_rationals([0, 0, 3]))
    with pytest.raises(ValueError):
        w_apply(once)


small_fractions = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=12
)


@given(
    st.lists(small_fractions, min_size=5, max_size=5),
    st.lists(small_fractions, min_size=5, max_size=5),
    small_fractions,
    small_fractions,
)
@settings(max_examples=60, deadline=None)
def test_w_linearity_exact(f_coeffs, g_coeffs, a, b):
    f = TruncatedSeries.from_rationals(f_coeffs)
    g = TruncatedSeries.from_rationals(g_coeffs)
    lhs = w_apply(f.scale(a) + g.scale(b))
    rhs = w_apply(f).scale(a) + w_apply(g).scale(b)
    assert lhs == rhs


@given(st.lists(small_fractions, min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_odd_coefficient_roundtrip(cs):
    # a_(2k+1) = ((2k-1)!!/(2k)!!) C_k  ==>  W-image coefficient C_k/(2k+1)
    M = 2 * len(cs)
    coeffs = [SeriesCoeff() for _ in range(M + 1)]
    for k, c in enumerate(cs):
        coeffs[2 * k + 1] = SeriesCoeff(wallis_fraction(2 * k) * c)
    out = w_apply(TruncatedSeries(tuple(coeffs)))
    for k, c in enumerate(cs):
        assert out.coeffs[2 * k + 1] == SeriesCoeff(c / Fraction(2 * k + 1))


# ---------------------------------------------------------------------------
# the averaging identity
# ---------------------------------------------------------------------------


def test_wallis_identity_linear():
    # f = z, alpha = 1: both sides are integral_0^1 arccos(x) dx = 1
    lhs, rhs = wallis_identity_check(TruncatedSeries.from_rationals([0, 1]), 1, 50)
    with workdps(75):
        assert abs(lhs.value.magnitude - 1) < mpf(10) ** -45
        assert abs(rhs.value.magnitude - 1) < mpf(10) ** -45


def test_wallis_identity_quadratic():
    # f = z^2, alpha = 1: both sides are 2 integral_0^1 x arccos(x) dx / 2 = pi/8
    lhs, rhs = wallis_identity_check(TruncatedSeries.from_rationals([0, 0, 1]), 1, 50)
    with workdps(75):
        assert abs(lhs.value.magnitude - mp.pi / 8) < mpf(10) ** -45
        assert abs(rhs.value.magnitude - mp.pi / 8) < mpf(10) ** -45


def test_wallis_identity_arcsin_cube():
    lhs, rhs = wallis_identity_check(arcsin_power_series(3, 60), 1, 50)
    with workdps(75):
        assert abs(lhs.value.magnitude - rhs.value.magnitude) < mpf(10) ** -20


def test_wallis_identity_interior_alpha():
    lhs, rhs = wallis_identity_check(
        arcsin_power_series(2, 80), HPReal.from_fraction(Fraction(1, 2), 50), 50
    )
    with workdps(75):
        assert abs(lhs.value.magnitude - rhs.value.magnitude) < mpf(10) ** -40


def test_wallis_identity_validation():
    with pytest.raises(ValueError):
        wallis_identity_check(TruncatedSeries.from_rationals([1, 1]), 1, 50)
    with pytest.raises(ValueError):
        wallis_identity_check(TruncatedSeries.from_rationals([0, 1]), 2, 50)
    with pytest.raises(ValueError):
        wallis_identity_check(TruncatedSeries.from_rationals([0, 1]), 0, 50)
