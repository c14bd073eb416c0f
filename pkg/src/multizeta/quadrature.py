"""Double-exponential quadrature on (0,1) and the specific kernel integrals.

The tanh-sinh substitution x = e^(2u)/(1+e^(2u)), u = (pi/2) sinh(t) pushes
endpoint singularities off to doubly-exponentially small weights, so one
scheme handles every integrand family used here: log and power-of-log blowups
at 0, algebraic 1/sqrt(1-x) behaviour at 1, and cancelled simple poles at 1.
Each trapezoid level halves the step and reuses all previous nodes (only odd
multiples are new); two successive levels agreeing to 10^(-prec-3) ends the
refinement.

Every integrand evaluator receives *both* x and xc = 1-x as exact node data.
The DE transform computes xc directly from e^(2u) without cancellation, so an
evaluator needing log(x), arccos(x) or atanh(x) near x = 1 can get full
working precision from xc where forming 1-x would lose everything.  The
helpers _log_stable / _acos_stable / _asin_stable / _atanh_stable implement
those rewrites:

    log(1-xc)    = -sum xc^k/k            (xc below 2^-10)
    arccos(x)    = 2 asin(sqrt(xc/2))     (exact identity, used everywhere)
    atanh(x)     = (log(2-xc) - log(xc))/2
    log(sin((pi/2)(1-xc))) = log(cos((pi/2) xc))

The polylogarithm is evaluated by three branches: the defining series for
|x| <= 1/2, the expansion about x = 1 in powers of L = log x for x in
(1/2, 1], and the square identity Li_p(x) = 2^(1-p) Li_p(x^2) - Li_p(-x) for
x in (-1, -1/2).  In the log branch the coefficients zeta(p-j) at negative
even integers vanish, so the stop rule requires two consecutive sub-tolerance
terms; the remaining tail is geometric with ratio (L/2pi)^2 < 0.013.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpf

from .hp import (
    GUARD_DIGITS,
    LOCK,
    EvalResult,
    HPReal,
    Method,
    _coerce_prec,
    bernoulli_fraction,
    eta,
    wrap_result,
    zeta_single,
)

__all__ = [
    "REGULAR",
    "LOGARITHMIC",
    "ALGEBRAIC",
    "Integrand",
    "QuadratureResult",
    "QuadratureNonConvergence",
    "integrate01",
    "polylog",
    "I_quad",
    "j_cot",
    "k_arctanh",
    "t_kernel_quad",
    "logpolylog_kernel",
    "logsine_check",
]

REGULAR = "regular"
LOGARITHMIC = "logarithmic"
ALGEBRAIC = "algebraic"

LEVEL_CAP = 12  # finest trapezoid level (step 2^-12)


@dataclass(frozen=True)
class Integrand:
    """An integrand on (0,1).

    ``evaluator(x, xc)`` receives the node and its exact complement 1-x as
    mpf values under the working precision of the integration and returns the
    integrand value.  ``endpoint_behavior`` declares the singularity class at
    0 and at 1 (REGULAR / LOGARITHMIC / ALGEBRAIC) -- documentation that the
    DE scheme is entitled to, and the hook for grouping convergence tests.
    Endpoint values themselves are never requested: all DE nodes are interior.
    """

    evaluator: Callable[[mpf, mpf], mpf]
    endpoint_behavior: tuple[str, str] = (REGULAR, REGULAR)
    name: str = ""


@dataclass(frozen=True)
class QuadratureResult(EvalResult):
    """EvalResult plus the number of trapezoid levels actually used.

    rigorous is always False here: the successive-level error model is
    excellent in practice (typically 10+ digits of margin) but heuristic.
    """

    levels_used: int = 0


class QuadratureNonConvergence(RuntimeError):
    """Raised when the level cap is hit; carries the best estimate."""

    def __init__(self, message: str, best: QuadratureResult):
        super().__init__(message)
        self.best = best


# ---------------------------------------------------------------------------
# nodes
# ---------------------------------------------------------------------------

_NODE_CACHE: dict[tuple[int, int], list] = {}


def _de_cutoff(wd: int) -> mpf:
    """Largest |t|: far enough that trapezoid truncation sits below 10^-2(wd+8)."""
    return mp.asinh(2 * mp.log(10) * (wd + 8) / mp.pi)


def _nodes(level: int, wd: int) -> list:
    """New (x, xc, w) triples at this level (odd multiples of h; level 0 all).

    Mirror nodes at -t are emitted as (xc, x, w): the transform swaps the
    roles of x and 1-x under t -> -t.
    """
    with LOCK, mp.workdps(wd):
        T = _de_cutoff(wd)
        h = mpf(2) ** (-level)
        js = (
            range(0, int(mp.floor(T / h)) + 1)
            if level == 0
            else range(1, int(mp.floor(T / h)) + 1, 2)
        )
        out = []
        for j in js:
            t = j * h
            u = mp.pi / 2 * mp.sinh(t)
            e2u = mp.exp(2 * u)
            xc = 1 / (1 + e2u)
            x = e2u / (1 + e2u)
            w = mp.pi / 2 * mp.cosh(t) / (2 * mp.cosh(u) ** 2)
            out.append((x, xc, w))
            if j > 0:
                out.append((xc, x, w))
        return out


def _cached_nodes(level: int, wd: int) -> list:
    key = (level, wd)
    with LOCK:
        got = _NODE_CACHE.get(key)
        if got is None:
            got = _nodes(level, wd)
            _NODE_CACHE[key] = got
        return got


def integrate01(f, prec: int = 50) -> QuadratureResult:
    """Tanh-sinh quadrature of ``f`` over (0,1).

    ``f`` may be an Integrand or a bare ``evaluator(x, xc)`` callable.
    Levels double until two successive trapezoid refinements agree to
    10^(-prec-3) relative; the reported error_bound is ten times that last
    difference.  Hitting the level cap raises QuadratureNonConvergence with
    the best estimate attached.
    """
    _coerce_prec(prec)
    integrand = f if isinstance(f, Integrand) else Integrand(f)
    ev = integrand.evaluator
    wd = prec + GUARD_DIGITS
    with LOCK, mp.workdps(wd):
        tol = mpf(10) ** (-prec - 3)
        total = mpf(0)
        prev = None
        diff = mpf(1)
        for level in range(LEVEL_CAP + 1):
            h = mpf(2) ** (-level)
            part = mpf(0)
            for x, xc, w in _cached_nodes(level, wd):
                part += w * ev(x, xc)
            total = (total / 2 if level > 0 else mpf(0)) + h * part
            if prev is not None:
                diff = abs(total - prev)
                if diff <= tol * max(1, abs(total)):
                    return QuadratureResult(
                        value=HPReal(total, prec),
                        error_bound=HPReal(diff * 10, prec),
                        method=Method.QUADRATURE,
                        rigorous=False,
                        levels_used=level + 1,
                    )
            prev = total
        best = QuadratureResult(
            value=HPReal(total, prec),
            error_bound=HPReal(diff * 10, prec),
            method=Method.QUADRATURE,
            rigorous=False,
            levels_used=LEVEL_CAP + 1,
        )
    raise QuadratureNonConvergence(
        f"tanh-sinh did not stabilise within {LEVEL_CAP} levels"
        f" (last successive difference {mp.nstr(diff, 3)})",
        best,
    )


# ---------------------------------------------------------------------------
# endpoint-stable elementary evaluations (see module docstring)
# ---------------------------------------------------------------------------

_SMALL = mpf(2) ** (-10)


def _log_stable(x: mpf, xc: mpf) -> mpf:
    """log(x) where x = 1 - xc with xc exact; series when xc is tiny."""
    if xc < _SMALL:
        s = mpf(0)
        p = mpf(1)
        tol = mpf(10) ** (-mp.dps - 4)
        for k in range(1, 10000):
            p *= xc
            t = p / k
            s -= t
            if t < tol:
                break
        return s
    return mp.log(x)


def _acos_stable(x: mpf, xc: mpf) -> mpf:
    """arccos(x) = 2 asin(sqrt(xc/2)): exact identity, stable at both ends."""
    return 2 * mp.asin(mp.sqrt(xc / 2))


def _asin_stable(x: mpf, xc: mpf) -> mpf:
    if x > mpf(9) / 10:
        return mp.pi / 2 - _acos_stable(x, xc)
    return mp.asin(x)


def _atanh_stable(x: mpf, xc: mpf) -> mpf:
    """atanh(x) = (log(1+x) - log(1-x))/2 with 1+x = 2-xc, 1-x = xc exact."""
    if xc < _SMALL:
        return (mp.log(2 - xc) - mp.log(xc)) / 2
    return mp.atanh(x)


# ---------------------------------------------------------------------------
# polylogarithm
# ---------------------------------------------------------------------------


def _zeta_at_int(s: int, wd: int) -> mpf:
    """zeta at any integer s != 1 as an mpf at working precision wd."""
    if s >= 2:
        return zeta_single(s, wd).value.magnitude
    if s == 0:
        return mpf(-1) / 2
    if s % 2 == 0:  # negative even: trivial zeros
        return mpf(0)
    m = (1 - s) // 2
    b = bernoulli_fraction(2 * m)
    return -(mpf(b.numerator) / b.denominator) / (2 * m)


def _polylog_raw(p: int, x: mpf, xc: mpf, wd: int) -> tuple[mpf, mpf]:
    """(value, rigorous error bound) for Li_p(x), -1 <= x <= 1, inside wd."""
    if x == 0:
        return mpf(0), mpf(0)
    ulp = mpf(10) ** (-(wd - 1))
    if x == 1:
        z = zeta_single(p, wd)
        return z.value.magnitude, z.error_bound.magnitude + ulp
    if x == -1:
        e = eta(p, wd)
        return -e.value.magnitude, e.error_bound.magnitude + ulp
    tol = mpf(10) ** (-wd - 2)
    if abs(x) <= mpf(1) / 2:
        s = mpf(0)
        xk = mpf(1)
        for k in range(1, 100000):
            xk *= x
            t = xk / mpf(k) ** p
            s += t
            if abs(t) <= tol * (1 - abs(x)):
                break
        # geometric tail: |t_{k+1}| <= |t_k| * |x|, summed <= |t|*|x|/(1-|x|)
        return s, abs(t) * abs(x) / (1 - abs(x)) + ulp * abs(s)
    if x > 0:
        L = _log_stable(x, xc)  # negative, |L| < log 2
        s = mpf(0)
        Lj = mpf(1)
        H = mpf(0)
        for j in range(1, p):
            H += mpf(1) / j
        prev = mpf(1)
        for j in range(0, 400):
            if j == p - 1:
                term = Lj / mp.factorial(j) * (H - mp.log(-L))
            else:
                term = _zeta_at_int(p - j, wd) * Lj / mp.factorial(j)
            s += term
            Lj *= L
            if j >= p and max(abs(term), prev) < tol:
                break
            prev = abs(term)
        # after two sub-tol terms the tail is geometric, ratio (L/2pi)^2 < 0.013
        return s, 4 * tol + ulp * abs(s)
    # x in (-1, -1/2): Li_p(x) = 2^(1-p) Li_p(x^2) - Li_p(-x)
    xc2 = xc * (2 - xc)  # 1 - x^2 without cancellation
    v1, b1 = _polylog_raw(p, x * x, xc2, wd)
    v2, b2 = _polylog_raw(p, -x, xc, wd)
    return mpf(2) ** (1 - p) * v1 - v2, mpf(2) ** (1 - p) * b1 + b2 + ulp


def polylog(p: int, x, prec: int = 50) -> EvalResult:
    """Li_p(x) for integer p >= 2 and -1 <= x <= 1, rigorous bound."""
    _coerce_prec(prec)
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"polylog requires integer p >= 2, got {p!r}")
    wd = prec + GUARD_DIGITS
    with LOCK, mp.workdps(wd):
        if isinstance(x, HPReal):
            xv = x.magnitude
        elif isinstance(x, Fraction):
            xv = mpf(x.numerator) / x.denominator
        else:
            xv = mpf(x)
        if abs(xv) > 1:
            raise ValueError(f"polylog argument must satisfy |x| <= 1, got {x!r}")
        val, bound = _polylog_raw(p, xv, 1 - xv, wd)
    return wrap_result(val, bound, prec, Method.SERIES, rigorous=True)


# ---------------------------------------------------------------------------
# the specific integrals
# ---------------------------------------------------------------------------


def _scaled(result: QuadratureResult, factor: mpf, prec: int) -> QuadratureResult:
    with LOCK, mp.workdps(prec + GUARD_DIGITS):
        return QuadratureResult(
            value=HPReal(result.value.magnitude * factor, prec),
            error_bound=HPReal(abs(result.error_bound.magnitude * factor), prec),
            method=Method.QUADRATURE,
            rigorous=False,
            levels_used=result.levels_used,
        )


def I_quad(N: int, prec: int = 50) -> QuadratureResult:
    """integral_0^1 arcsin^N(z)/z dz by DE quadrature."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N >= 1 required, got {N!r}")
    _coerce_prec(prec)

    def ev(x, xc):
        return _asin_stable(x, xc) ** N / x

    return integrate01(
        Integrand(ev, (REGULAR, REGULAR), name=f"I({N})"), prec
    )


def j_cot(n: int, prec: int = 50) -> QuadratureResult:
    """J(n) = integral_0^(1/2) z^n cot(pi z) dz.

    Substituting z = x/2 maps to (0,1); cot(pi x/2) is rewritten as
    tan((pi/2) xc) near x = 1 (where cot passes through zero) and the z^n
    factor tames the 1/z pole of cot at the origin, leaving z^(n-1)/pi there.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n >= 1 required, got {n!r}")
    _coerce_prec(prec)

    def ev(x, xc):
        z = x / 2
        if xc < mpf(1) / 2:
            c = mp.tan(mp.pi / 2 * xc)
        else:
            c = mp.cot(mp.pi * z)
        return z ** n * c / 2

    return integrate01(
        Integrand(ev, (REGULAR, REGULAR), name=f"J({n})"), prec
    )


def k_arctanh(N: int, prec: int = 50) -> QuadratureResult:
    """K(N) = integral_0^1 atanh^N(z)/z dz (log^N blowup at z = 1)."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N >= 1 required, got {N!r}")
    _coerce_prec(prec)

    def ev(x, xc):
        return _atanh_stable(x, xc) ** N / x

    return integrate01(
        Integrand(ev, (REGULAR, LOGARITHMIC), name=f"K({N})"), prec
    )


def t_kernel_quad(N: int, prec: int = 50) -> QuadratureResult:
    """(1/(2N+1)!) integral_0^1 arcsin^(2N+1)(z) arccos(z)/z dz.

    The arccos factor vanishes like sqrt(2(1-z)) at z = 1 (algebraic class);
    it is evaluated through the half-angle identity at every node.
    """
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N >= 1 required, got {N!r}")
    _coerce_prec(prec)
    M = 2 * N + 1

    def ev(x, xc):
        return _asin_stable(x, xc) ** M * _acos_stable(x, xc) / x

    raw = integrate01(
        Integrand(ev, (REGULAR, ALGEBRAIC), name=f"t-kernel({N})"), prec
    )
    with LOCK, mp.workdps(prec + GUARD_DIGITS):
        factor = 1 / mpf(math.factorial(M))
        return _scaled(raw, factor, prec)


def logpolylog_kernel(
    p: int, q: int, sign_arg: int, sign_den: int, prec: int = 50
) -> QuadratureResult:
    """integral_0^1 log^(q-1)(x) Li_p(sign_arg*x) / (x (1 + sign_den*x^2)) dx.

    With sign_den = -1 the denominator factor 1 - x^2 = xc (2 - xc) has a
    simple zero at x = 1 which the log^(q-1) zero (q >= 2) cancels; both
    factors are computed from xc directly so the ratio is fully accurate at
    the deepest DE nodes.  q < 2 is refused: with sign_den = -1 the endpoint
    becomes non-integrable, and the uniform q >= 2 precondition keeps the
    operation's domain a rectangle.
    """
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"p >= 2 required, got {p!r}")
    if not isinstance(q, int) or q < 2:
        if sign_den == -1:
            raise ValueError(
                f"q >= 2 required, got {q!r}: the 1/(1-x^2) endpoint is non-integrable"
            )
        raise ValueError(f"q >= 2 required, got {q!r}")
    if sign_arg not in (1, -1) or sign_den not in (1, -1):
        raise ValueError("sign_arg and sign_den must be +1 or -1")
    _coerce_prec(prec)
    wd = prec + GUARD_DIGITS

    def ev(x, xc):
        lg = _log_stable(x, xc)
        li = _polylog_raw(p, sign_arg * x, xc, wd)[0]
        if sign_den == -1:
            den = x * xc * (2 - xc)  # x (1-x) (1+x), no cancellation
        else:
            den = x * (1 + x * x)
        return lg ** (q - 1) * li / den

    ends = (LOGARITHMIC, LOGARITHMIC if sign_den == -1 else REGULAR)
    name = f"log^{q-1} Li_{p}({'+' if sign_arg > 0 else '-'}x)/(x(1{'+' if sign_den > 0 else '-'}x^2))"
    return integrate01(Integrand(ev, ends, name=name), prec)


def logsine_check(n: int, prec: int = 50) -> QuadratureResult:
    """-n integral_0^(pi/2) z^(n-1) log(sin z) dz (equals I(n); cross-check).

    Mapped to (0,1) by z = (pi/2) x; near x = 1 the integrand uses
    log(sin((pi/2)(1-xc))) = log(cos((pi/2) xc)).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n >= 1 required, got {n!r}")
    _coerce_prec(prec)

    def ev(x, xc):
        z = mp.pi / 2 * x
        if xc < mpf(1) / 2:
            ls = mp.log(mp.cos(mp.pi / 2 * xc))
        else:
            ls = mp.log(mp.sin(z))
        return z ** (n - 1) * ls

    raw = integrate01(
        Integrand(ev, (LOGARITHMIC, REGULAR), name=f"logsine({n})"), prec
    )
    with LOCK, mp.workdps(prec + GUARD_DIGITS):
        factor = -n * mp.pi / 2
        return _scaled(raw, factor, prec)
