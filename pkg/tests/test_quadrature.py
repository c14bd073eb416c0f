"""Tests for the DE quadrature engine and the specific kernel integrals.

Strategy: every integral here has an independent closed form in terms of pi,
log 2, zeta and beta values.  Targets are built from mpmath's own constants
(mp.zeta, mp.catalan) at elevated precision, so agreement is a genuine
cross-check of the quadrature path, not a reflexive comparison.
"""

import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf, workdps

from multizeta.hp import GUARD_DIGITS, Method, eta, zeta_single
from multizeta.quadrature import (
    ALGEBRAIC,
    LOGARITHMIC,
    REGULAR,
    Integrand,
    QuadratureNonConvergence,
    QuadratureResult,
    I_quad,
    integrate01,
    j_cot,
    k_arctanh,
    logpolylog_kernel,
    logsine_check,
    polylog,
    t_kernel_quad,
    _log_stable,
)

REF_DPS = 80


def combo(terms):
    """sum of c * pi^a * zeta(m) for (c, a, m) triples; m = 0 means no zeta,
    m = 1 means log 2 (the eta(1) limit), m = -2 means Catalan's constant."""
    acc = mpf(0)
    for c, a, m in terms:
        f = Fraction(c)
        t = mpf(f.numerator) / f.denominator * mp.pi ** a
        if m == 1:
            t *= mp.log(2)
        elif m == -2:
            t *= mp.catalan
        elif m != 0:
            t *= mp.zeta(m)
        acc += t
    return acc


def quad_err(result, target_terms):
    with workdps(REF_DPS):
        return abs(result.value.magnitude - combo(target_terms))


# ---------------------------------------------------------------------------
# integrate01 basics
# ---------------------------------------------------------------------------


def test_constant_integrand():
    r = integrate01(lambda x, xc: mpf(1), 50)
    with workdps(70):
        assert abs(r.value.magnitude - 1) < mpf(10) ** -55
    assert isinstance(r, QuadratureResult)
    assert r.method is Method.QUADRATURE
    assert not r.rigorous


def test_log_endpoint_integrand():
    # integral of -log(x) over (0,1) is 1
    r = integrate01(Integrand(lambda x, xc: -mp.log(x), (LOGARITHMIC, REGULAR)), 50)
    with workdps(70):
        assert abs(r.value.magnitude - 1) < mpf(10) ** -50


def test_algebraic_endpoint_integrand():
    # integral of (1-x^2)^(-1/2) is pi/2; inverse sqrt blowup at x = 1
    r = integrate01(
        Integrand(lambda x, xc: 1 / mp.sqrt(xc * (2 - xc)), (REGULAR, ALGEBRAIC)), 50
    )
    with workdps(70):
        assert abs(r.value.magnitude - mp.pi / 2) < mpf(10) ** -50


def test_levels_within_cap_at_default_precision():
    for r in (
        integrate01(lambda x, xc: -mp.log(x), 50),
        I_quad(3, 50),
        k_arctanh(4, 50),
        t_kernel_quad(2, 50),
        j_cot(2, 50),
    ):
        assert r.levels_used <= 12


def test_non_convergence_raises_with_best_estimate():
    # 1/x diverges: successive levels keep growing, the cap must trip
    with pytest.raises(QuadratureNonConvergence) as exc:
        integrate01(lambda x, xc: 1 / x, 30)
    best = exc.value.best
    assert isinstance(best, QuadratureResult)
    assert best.levels_used == 13
    # nowhere near the requested 10^-33: the estimate is flagged, not silent
    assert float(best.error_bound.magnitude) > 1e-6


def test_determinism():
    a = I_quad(4, 50)
    b = I_quad(4, 50)
    assert mp.mpf(a.value.magnitude) == mp.mpf(b.value.magnitude)
    assert a.levels_used == b.levels_used


# ---------------------------------------------------------------------------
# polylog
# ---------------------------------------------------------------------------


def test_polylog_dilog_half():
    # Li_2(1/2) = pi^2/12 - log(2)^2/2
    r = polylog(2, Fraction(1, 2), 50)
    with workdps(REF_DPS):
        target = mp.pi ** 2 / 12 - mp.log(2) ** 2 / 2
        assert abs(r.value.magnitude - target) < mpf(10) ** -30
        assert abs(r.value.magnitude - target) <= r.error_bound.magnitude


def test_polylog_endpoints():
    for p in (2, 3, 4, 7):
        plus = polylog(p, 1, 50)
        minus = polylog(p, -1, 50)
        z = zeta_single(p, 60)
        e = eta(p, 60)
        assert plus.agrees_with(z)
        with workdps(REF_DPS):
            assert abs(minus.value.magnitude + e.value.magnitude) < mpf(10) ** -55
    assert float(polylog(3, 0, 50).value.magnitude) == 0.0


def test_polylog_against_mpmath_grid():
    xs = ["-1", "-0.95", "-0.6", "-0.5", "-0.3", "0.3", "0.49", "0.51", "0.7", "0.95", "1"]
    for p in (2, 3, 5):
        for xs_ in xs:
            r = polylog(p, xs_, 40)
            with workdps(70):
                oracle = mp.polylog(p, mpf(xs_))
                err = abs(r.value.magnitude - oracle)
            assert err < mpf(10) ** -40, (p, xs_, mp.nstr(err, 3))
            assert err <= r.error_bound.magnitude + mpf(10) ** -60, (p, xs_)


def test_polylog_branch_seam():
    # the series / log-expansion handoff at x = 1/2 must be seamless; exact
    # rational arguments so the reference sees the same point
    eps = Fraction(1, 10 ** 12)
    for p in (2, 4):
        x_lo = Fraction(1, 2) - eps
        x_hi = Fraction(1, 2) + eps
        lo = polylog(p, x_lo, 50)
        hi = polylog(p, x_hi, 50)
        with workdps(REF_DPS):
            gap = abs(hi.value.magnitude - lo.value.magnitude)
            # Li_p is smooth there: the two branches differ by ~ Li'_p(1/2)*2eps
            assert gap < 4 * mpf(10) ** -12
            oracle = mp.polylog(p, mpf(x_lo.numerator) / x_lo.denominator)
            assert abs(lo.value.magnitude - oracle) < mpf(10) ** -45


def test_polylog_validation():
    with pytest.raises(ValueError):
        polylog(1, 0.5)
    with pytest.raises(ValueError):
        polylog(2, 1.5)
    with pytest.raises(ValueError):
        polylog(2, -2)
    with pytest.raises(ValueError):
        polylog(2.0, 0.5)


# ---------------------------------------------------------------------------
# the arcsin integrals I(N) and their relatives
# ---------------------------------------------------------------------------

# I(N) = integral_0^1 arcsin^N(z)/z dz, 25-digit references computed from the
# eta/zeta closed forms at 60 digits and double-checked against mp.quad
I_REFERENCE = {
    1: "1.088793045151801065250344",
    2: "0.6584723256996341364870989",
    3: "0.5622792684846932407937079",
    4: "0.5600964068274092684010823",
    5: "0.6102364794296436081663015",
    6: "0.7054550044339948923745744",
    7: "0.8507800143238270451394135",
    8: "1.05922144364921610739431",
}


@pytest.mark.parametrize("N", sorted(I_REFERENCE))
def test_I_quad_reference_values(N):
    r = I_quad(N, 50)
    with workdps(REF_DPS):
        assert abs(r.value.magnitude - mpf(I_REFERENCE[N])) < mpf(10) ** -24


def test_I_quad_odd_closed_form():
    # odd N = 2M+1: I(N) = (2M+1)!/2^(2M+1) sum_j (-1)^j pi^(2M+1-2j) eta(2j+1)/(2M+1-2j)!
    for M in (0, 1, 2):
        N = 2 * M + 1
        with workdps(REF_DPS):
            acc = mpf(0)
            for j in range(M + 1):
                e = mp.log(2) if j == 0 else (1 - mpf(2) ** (-2 * j)) * mp.zeta(2 * j + 1)
                acc += (-1) ** j * mp.pi ** (N - 2 * j) * e / mp.factorial(N - 2 * j)
            target = mp.factorial(N) / mpf(2) ** N * acc
            assert abs(I_quad(N, 50).value.magnitude - target) < mpf(10) ** -45


def test_I_quad_even_closed_form():
    # even N = 2M: same eta sum to j = M-1 plus (-1)^M * 2 (1 - 2^(-2M-1)) zeta(2M+1)
    for M in (1, 2, 3):
        N = 2 * M
        with workdps(REF_DPS):
            acc = mpf(0)
            for j in range(M):
                e = mp.log(2) if j == 0 else (1 - mpf(2) ** (-2 * j)) * mp.zeta(2 * j + 1)
                acc += (-1) ** j * mp.pi ** (N - 2 * j) * e / mp.factorial(N - 2 * j)
            acc += (-1) ** M * 2 * (1 - mpf(2) ** (-N - 1)) * mp.zeta(N + 1)
            target = mp.factorial(N) / mpf(2) ** N * acc
            assert abs(I_quad(N, 50).value.magnitude - target) < mpf(10) ** -45


@pytest.mark.parametrize("n", range(1, 9))
def test_j_cot_matches_I(n):
    # J(n) = I(n)/pi^(n+1): the cotangent moment carries the same data
    jr = j_cot(n, 50)
    ir = I_quad(n, 50)
    with workdps(REF_DPS):
        assert abs(jr.value.magnitude * mp.pi ** (n + 1) - ir.value.magnitude) < mpf(10) ** -45


@pytest.mark.parametrize("N", range(1, 7))
def test_k_arctanh_closed_form(N):
    # K(N) = N! (2^(N+1) - 1) zeta(N+1) / 2^(2N)
    r = k_arctanh(N, 50)
    with workdps(REF_DPS):
        target = (
            mp.factorial(N) * (mpf(2) ** (N + 1) - 1) * mp.zeta(N + 1) / mpf(2) ** (2 * N)
        )
        assert abs(r.value.magnitude - target) < mpf(10) ** -45


def test_logsine_equals_I():
    # -n integral_0^(pi/2) z^(n-1) log sin z dz reproduces I(n)
    for n in (1, 2, 4):
        ls = logsine_check(n, 50)
        ir = I_quad(n, 50)
        with workdps(REF_DPS):
            assert abs(ls.value.magnitude - ir.value.magnitude) < mpf(10) ** -45


def test_boundary_identity():
    # I(2N) = (2N)!/2^(2N) [sum_{j<N} (-1)^j pi^(2N-2j) eta(2j+1)/(2N-2j)!]
    #         + (-1)^N K(2N)
    # ties the arcsin and arctanh families together at the z = 1 endpoint
    for N in (1, 2, 3):
        with workdps(REF_DPS):
            acc = mpf(0)
            for j in range(N):
                e = mp.log(2) if j == 0 else (1 - mpf(2) ** (-2 * j)) * mp.zeta(2 * j + 1)
                acc += (-1) ** j * mp.pi ** (2 * N - 2 * j) * e / mp.factorial(2 * N - 2 * j)
            closed_part = mp.factorial(2 * N) / mpf(2) ** (2 * N) * acc
            lhs = I_quad(2 * N, 50).value.magnitude
            k = k_arctanh(2 * N, 50).value.magnitude
            assert abs(lhs - (closed_part + (-1) ** N * k)) < mpf(10) ** -44


# ---------------------------------------------------------------------------
# t-value kernels
# ---------------------------------------------------------------------------

T_KERNEL_REFERENCE = {
    1: "0.053854967123544725176",  # t(3,2)
    2: "0.0021091851327528231438",  # t(3,2,2)
    3: "0.000054996166222452568743",  # t(3,2,2,2)
}


@pytest.mark.parametrize("N", sorted(T_KERNEL_REFERENCE))
def test_t_kernel_reference_values(N):
    r = t_kernel_quad(N, 50)
    with workdps(REF_DPS):
        assert abs(r.value.magnitude - mpf(T_KERNEL_REFERENCE[N])) < mpf(10) ** -21


# ---------------------------------------------------------------------------
# log-polylog kernels
# ---------------------------------------------------------------------------


def test_kernel_2_3_odd_denominator_pair():
    plus = logpolylog_kernel(2, 3, 1, -1, 50)
    minus = logpolylog_kernel(2, 3, -1, -1, 50)
    # integral log^2(x) Li_2(x)/(x(1-x^2)) = 11/16 z5 + 3/4 z2 z3, and the
    # Li_2(-x) twin = -5/4 z5 - 3/8 z2 z3
    with workdps(REF_DPS):
        target_plus = mpf(11) / 16 * mp.zeta(5) + mpf(3) / 4 * mp.zeta(2) * mp.zeta(3)
        target_minus = -mpf(5) / 4 * mp.zeta(5) - mpf(3) / 8 * mp.zeta(2) * mp.zeta(3)
        assert abs(plus.value.magnitude - target_plus) < mpf(10) ** -45
        assert abs(minus.value.magnitude - target_minus) < mpf(10) ** -45


def test_kernel_2_3_even_denominator_value():
    # integral log^2(x) Li_2(x)/(x(1+x^2)) = G pi^3/16 - 3 pi^2 zeta(3)/32 + 331 zeta(5)/256
    r = logpolylog_kernel(2, 3, 1, 1, 50)
    with workdps(REF_DPS):
        target = (
            mp.catalan * mp.pi ** 3 / 16
            - 3 * mp.pi ** 2 * mp.zeta(3) / 32
            + mpf(331) / 256 * mp.zeta(5)
        )
        assert abs(r.value.magnitude - target) < mpf(10) ** -45


# the eight log^j Li_j(+-x)/(x(1-x^2)) integrals, j = 3..6: each reduces to a
# rational combination of pi powers and odd zeta values
REMARK_INTEGRALS = {
    (3, 1): [("-3/64", 4, 3), ("5/16", 2, 5), ("-489/128", 0, 7)],
    (3, -1): [("3/64", 4, 3), ("-5/32", 2, 5), ("273/128", 0, 7)],
    (4, 1): [("1/24", 4, 5), ("35/32", 2, 7), ("579/64", 0, 9)],
    (4, -1): [("-7/192", 4, 5), ("-35/64", 2, 7), ("-477/32", 0, 9)],
    (5, 1): [("-15/128", 6, 5), ("7/32", 4, 7), ("315/64", 2, 9), ("-18825/256", 0, 11)],
    (5, -1): [("15/128", 6, 5), ("-49/256", 4, 7), ("-315/128", 2, 9), ("1485/32", 0, 11)],
    (6, 1): [("1/24", 6, 7), ("21/16", 4, 9), ("3465/128", 2, 11), ("72855/256", 0, 13)],
    (6, -1): [("-31/768", 6, 7), ("-147/128", 4, 9), ("-3465/256", 2, 11), ("-222885/512", 0, 13)],
}


@pytest.mark.parametrize("key", sorted(REMARK_INTEGRALS))
def test_remark_integrals(key):
    j, sign_arg = key
    r = logpolylog_kernel(j, j + 1, sign_arg, -1, 50)
    assert quad_err(r, REMARK_INTEGRALS[key]) < mpf(10) ** -42


def test_kernel_pair_reproduces_odd_sum():
    # (-1)^q/(2 (q-1)!) [L(p,q,-,den) - L(p,q,+,den)] gives the odd double sum
    # (den = -1) and its alternating twin (den = +1); checked at (p,q) = (2,3)
    # against the closed forms of those sums
    p, q = 2, 3
    with workdps(REF_DPS):
        scale = mpf((-1) ** q) / (2 * mp.factorial(q - 1))
        for den, target in (
            (-1, mpf(31) / 64 * mp.zeta(5) + mpf(9) / 32 * mp.zeta(3) * mp.zeta(2)),
            (
                1,
                mpf(31) / 64 * mp.zeta(5)
                - 9 * mp.pi ** 2 / 256 * mp.zeta(3)
                + mp.catalan * mp.pi ** 3 / 32,
            ),
        ):
            lneg = logpolylog_kernel(p, q, -1, den, 50).value.magnitude
            lpos = logpolylog_kernel(p, q, 1, den, 50).value.magnitude
            assert abs(scale * (lneg - lpos) - target) < mpf(10) ** -44


def test_custom_kernel_with_1_plus_x_denominator():
    # integral log^2(x) Li_2(x)/(x(1+x)) = 83/8 zeta(5) - 9/2 zeta(2) zeta(3):
    # exercises integrate01 with a user-supplied evaluator
    def ev(x, xc):
        lg = _log_stable(x, xc)
        li = mp.polylog(2, x) if x < 1 else mp.zeta(2)
        return lg ** 2 * li / (x * (1 + x))

    r = integrate01(Integrand(ev, (LOGARITHMIC, REGULAR)), 40)
    with workdps(REF_DPS):
        target = mpf(83) / 8 * mp.zeta(5) - mpf(9) / 2 * mp.zeta(2) * mp.zeta(3)
        assert abs(r.value.magnitude - target) < mpf(10) ** -35


def test_logpolylog_validation():
    with pytest.raises(ValueError):
        logpolylog_kernel(1, 3, 1, -1)
    with pytest.raises(ValueError):
        logpolylog_kernel(2, 1, 1, -1)  # non-integrable endpoint
    with pytest.raises(ValueError):
        logpolylog_kernel(2, 1, 1, 1)
    with pytest.raises(ValueError):
        logpolylog_kernel(2, 3, 0, -1)
    with pytest.raises(ValueError):
        logpolylog_kernel(2, 3, 1, 2)


def test_integral_argument_validation():
    for fn in (I_quad, j_cot, k_arctanh, t_kernel_quad, logsine_check):
        with pytest.raises(ValueError):
            fn(0)
        with pytest.raises(ValueError):
            fn(-3)
