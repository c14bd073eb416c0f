"""Exact symbolic skeletons of the closed forms.

Every closed form in this package lives in the graded ring generated by

    pi (weight 1), log 2 (weight 1), zeta(odd m >= 3) (weight m),
    beta(even m >= 2) (weight m), psi3(1/4) (weight 4, kept opaque)

over the rationals.  Even zeta values are eliminated on sight through
zeta(2k) = (-1)^(k+1) B_(2k) (2 pi)^(2k) / (2 (2k)!), eta values through
eta(m) = (1 - 2^(1-m)) zeta(m) with eta(1) = log 2, and beta at odd argument
through beta(2k+1) = (-1)^k E_(2k) pi^(2k+1) / (4^(k+1) (2k)!).  What
remains is a normalized list of monomials with Fraction coefficients, which
makes structural facts checkable exactly: weight homogeneity, the (-1)^N
sign pattern of the zeta(2N+3) coefficient, and the exact cancellation of
log 2 when the arcsin-integral combinations assemble t(3,{2}^N) and
zeta(3,{2}^N).

build() produces the expression for any FormulaId by the same routes the
numeric layer uses (the nested-value families go through the integral
combinations, so the log-2 cancellation is asserted, not assumed);
eval_symbolic() evaluates an expression back to a rigorous interval and is
cross-checked against the closed-form layer in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .closed import (
    _HOFFMAN_TERMS,
    _vb,
    _vb_prod,
    _vb_sum,
    Formula,
    FormulaId,
    O_TABLE_PRIMARY,
)
from .hp import (
    GUARD_DIGITS,
    LOCK,
    EvalResult,
    Method,
    _coerce_prec,
    bernoulli_fraction,
    beta_fn,
    euler_number,
    log2_const,
    pi_const,
    psi3_quarter,
    wrap_result,
    zeta_single,
)

__all__ = [
    "BasisConstant",
    "SymbolicExpr",
    "PI",
    "LOG2",
    "zeta_odd",
    "beta_even",
    "PSI3Q",
    "zeta_even_rational",
    "beta_odd_rational",
    "t_single_expr",
    "build",
    "eval_symbolic",
    "weight_check",
    "canonical_text",
    "json_terms",
]

_KINDS = ("pi", "log2", "zeta_odd", "beta_even", "psi3_quarter")
_KIND_ORDER = {k: i for i, k in enumerate(_KINDS)}


@dataclass(frozen=True, order=True)
class BasisConstant:
    """A generator of the constant ring; arg is 0 except for the zeta/beta
    families, where it is the (parity-checked) argument."""

    kind: str
    arg: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.kind == "zeta_odd":
            if self.arg < 3 or self.arg % 2 == 0:
                raise ValueError(f"zeta_odd needs odd arg >= 3, got {self.arg}")
        elif self.kind == "beta_even":
            if self.arg < 2 or self.arg % 2:
                raise ValueError(f"beta_even needs even arg >= 2, got {self.arg}")
        elif self.arg != 0:
            raise ValueError(f"{self.kind} takes no argument, got {self.arg}")

    @property
    def weight(self) -> int:
        if self.kind in ("pi", "log2"):
            return 1
        if self.kind == "psi3_quarter":
            return 4
        return self.arg

    def _sort_key(self):
        return (_KIND_ORDER[self.kind], self.arg)

    def _text(self) -> str:
        if self.kind == "pi":
            return "pi"
        if self.kind == "log2":
            return "log2"
        if self.kind == "zeta_odd":
            return f"zeta{self.arg}"
        if self.kind == "beta_even":
            return f"beta{self.arg}"
        return "psi3q"


PI = BasisConstant("pi")
LOG2 = BasisConstant("log2")
PSI3Q = BasisConstant("psi3_quarter")


def zeta_odd(m: int) -> BasisConstant:
    return BasisConstant("zeta_odd", m)


def beta_even(m: int) -> BasisConstant:
    return BasisConstant("beta_even", m)


# a monomial is a sorted tuple of (BasisConstant, positive exponent)
Monomial = tuple


def _mono_sorted(pairs) -> Monomial:
    merged: dict[BasisConstant, int] = {}
    for c, e in pairs:
        if e:
            merged[c] = merged.get(c, 0) + e
    for c, e in merged.items():
        if e < 0:
            raise ValueError(f"negative exponent on {c!r}")
    return tuple(sorted(((c, e) for c, e in merged.items() if e), key=lambda p: p[0]._sort_key()))


def _mono_weight(mono: Monomial) -> int:
    return sum(c.weight * e for c, e in mono)


def _mono_pi_exp(mono: Monomial) -> int:
    for c, e in mono:
        if c.kind == "pi":
            return e
    return 0


def _term_sort_key(item):
    mono, _ = item
    rest = tuple((c._sort_key(), e) for c, e in mono if c.kind != "pi")
    return (-_mono_pi_exp(mono), rest)


@dataclass(frozen=True)
class SymbolicExpr:
    """Normalized rational combination of basis monomials.

    terms is canonically ordered (descending pi power, then the remaining
    factors), holds no zero coefficients and no duplicate monomials, so
    structural equality is just dataclass equality.
    """

    terms: tuple = ()

    def __post_init__(self):
        seen = set()
        for mono, coeff in self.terms:
            if coeff == 0:
                raise ValueError("zero coefficient survived normalization")
            if mono in seen:
                raise ValueError("duplicate monomial survived normalization")
            seen.add(mono)
        if list(self.terms) != sorted(self.terms, key=_term_sort_key):
            raise ValueError("terms not in canonical order")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _from_dict(d: dict) -> "SymbolicExpr":
        items = [(m, c) for m, c in d.items() if c != 0]
        items.sort(key=_term_sort_key)
        return SymbolicExpr(tuple(items))

    @classmethod
    def zero(cls) -> "SymbolicExpr":
        return cls(())

    @classmethod
    def rational(cls, c) -> "SymbolicExpr":
        c = Fraction(c)
        return cls._from_dict({(): c})

    @classmethod
    def atom(cls, const: BasisConstant, exp: int = 1, coeff=1) -> "SymbolicExpr":
        return cls._from_dict({_mono_sorted([(const, exp)]): Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "SymbolicExpr") -> "SymbolicExpr":
        d = {m: c for m, c in self.terms}
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return SymbolicExpr._from_dict(d)

    def __sub__(self, other: "SymbolicExpr") -> "SymbolicExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "SymbolicExpr":
        c = Fraction(c)
        if c == 0:
            return SymbolicExpr.zero()
        return SymbolicExpr._from_dict({m: k * c for m, k in self.terms})

    def __mul__(self, other: "SymbolicExpr") -> "SymbolicExpr":
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _mono_sorted(list(m1) + list(m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return SymbolicExpr._from_dict(d)

    def divide_by_pi(self) -> "SymbolicExpr":
        """Divide every monomial by pi; raises if any term lacks a pi factor."""
        d: dict = {}
        for mono, c in self.terms:
            if _mono_pi_exp(mono) < 1:
                raise ValueError(f"term {c} * {mono} has no pi factor to cancel")
            pairs = [(cc, e - 1 if cc.kind == "pi" else e) for cc, e in mono]
            d[_mono_sorted(pairs)] = c
        return SymbolicExpr._from_dict(d)

    # -- inspection --------------------------------------------------------

    def coefficient_of(self, *pairs) -> Fraction:
        """Coefficient of the monomial prod const^exp (pairs of (const, exp))."""
        target = _mono_sorted(pairs)
        for m, c in self.terms:
            if m == target:
                return c
        return Fraction(0)

    def weights(self) -> set:
        return {_mono_weight(m) for m, _ in self.terms}

    @property
    def is_zero(self) -> bool:
        return not self.terms


def weight_check(expr: SymbolicExpr, expected: int) -> bool:
    """True iff every monomial of expr has total weight == expected."""
    return expr.weights() <= {expected}


# ---------------------------------------------------------------------------
# rewrites into the basis
# ---------------------------------------------------------------------------


def zeta_even_rational(m: int) -> Fraction:
    """zeta(2k) / pi^(2k) as an exact rational."""
    if m < 2 or m % 2:
        raise ValueError(f"even m >= 2 required, got {m}")
    k = m // 2
    return Fraction((-1) ** (k + 1)) * bernoulli_fraction(2 * k) * Fraction(2 ** (2 * k), 2 * math.factorial(2 * k))


def beta_odd_rational(m: int) -> Fraction:
    """beta(2k+1) / pi^(2k+1) as an exact rational."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"odd m >= 1 required, got {m}")
    k = (m - 1) // 2
    return Fraction((-1) ** k) * euler_number(2 * k) / Fraction(4 ** (k + 1) * math.factorial(2 * k))


def _zeta_expr(m: int) -> SymbolicExpr:
    """zeta(m) in the basis (even arguments become pi powers)."""
    if m % 2 == 0:
        return SymbolicExpr.atom(PI, m, zeta_even_rational(m))
    return SymbolicExpr.atom(zeta_odd(m))


def _eta_expr(m: int) -> SymbolicExpr:
    """eta(m) = (1 - 2^(1-m)) zeta(m), with eta(1) = log 2."""
    if m == 1:
        return SymbolicExpr.atom(LOG2)
    return _zeta_expr(m).scale(1 - Fraction(1, 2 ** (m - 1)))


def _beta_expr(m: int) -> SymbolicExpr:
    """beta(m): odd arguments become pi powers, even stay opaque."""
    if m % 2:
        return SymbolicExpr.atom(PI, m, beta_odd_rational(m))
    return SymbolicExpr.atom(beta_even(m))


def t_single_expr(m: int) -> SymbolicExpr:
    """t(m) = (1 - 2^(-m)) zeta(m) in the basis (m >= 2)."""
    if m < 2:
        raise ValueError(f"m >= 2 required, got {m}")
    return _zeta_expr(m).scale(1 - Fraction(1, 2 ** m))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _build_i(N: int) -> SymbolicExpr:
    if N < 1:
        raise ValueError(f"N >= 1 required, got {N}")
    acc = SymbolicExpr.zero()
    if N % 2:
        M = (N - 1) // 2
        js = range(M + 1)
    else:
        M = N // 2
        js = range(M)
    for j in js:
        c = Fraction((-1) ** j * math.factorial(N), 2 ** N * math.factorial(N - 2 * j))
        acc = acc + (SymbolicExpr.atom(PI, N - 2 * j) * _eta_expr(2 * j + 1)).scale(c)
    if N % 2 == 0:
        c = Fraction((-1) ** M * math.factorial(N) * (2 ** (2 * M + 1) - 1), 2 ** N * 2 ** (2 * M))
        acc = acc + _zeta_expr(N + 1).scale(c)
    return acc


def _build_t322(N: int) -> SymbolicExpr:
    # ((pi/2) I(2N+1) - I(2N+2)) / (2N+1)!  -- the log-2 monomials must
    # cancel exactly between the two integrals
    half_pi = SymbolicExpr.atom(PI, 1, Fraction(1, 2))
    expr = (half_pi * _build_i(2 * N + 1) - _build_i(2 * N + 2)).scale(
        Fraction(1, math.factorial(2 * N + 1))
    )
    _assert_log2_free(expr, f"t(3,{{2}}^{N})")
    return expr


def _build_z322(N: int) -> SymbolicExpr:
    # 2^(2N+4)/(2N+2)! [I(2N+2)/2 - I(2N+3)/pi]
    expr = (
        _build_i(2 * N + 2).scale(Fraction(1, 2)) - _build_i(2 * N + 3).divide_by_pi()
    ).scale(Fraction(2 ** (2 * N + 4), math.factorial(2 * N + 2)))
    _assert_log2_free(expr, f"zeta(3,{{2}}^{N})")
    return expr


def _assert_log2_free(expr: SymbolicExpr, what: str) -> None:
    for mono, c in expr.terms:
        if any(cc.kind == "log2" for cc, _ in mono):
            raise RuntimeError(f"{what}: log 2 failed to cancel (coefficient {c})")


def _build_o_table(p: int, q: int) -> SymbolicExpr:
    if (p, q) in O_TABLE_PRIMARY:
        acc = SymbolicExpr.zero()
        for c, a, m in O_TABLE_PRIMARY[(p, q)]:
            term = _zeta_expr(m) if m else SymbolicExpr.rational(1)
            if a:
                term = term * SymbolicExpr.atom(PI, a)
            acc = acc + term.scale(c)
        return acc
    if (q, p) in O_TABLE_PRIMARY:
        return _build_o_reflect(q, p)
    raise ValueError(f"(p, q) = {(p, q)!r} not in the closed-form table")


def _build_o_reflect(p: int, q: int) -> SymbolicExpr:
    # O(q,p) = O(p) O(q) + O(p+q) - O(p,q)
    return t_single_expr(p) * t_single_expr(q) + t_single_expr(p + q) - _build_o_table(p, q)


def _build_b23() -> SymbolicExpr:
    return (
        SymbolicExpr.atom(zeta_odd(5), coeff=Fraction(31, 64))
        + (SymbolicExpr.atom(PI, 2) * SymbolicExpr.atom(zeta_odd(3))).scale(Fraction(-9, 256))
        + (SymbolicExpr.atom(PI, 3) * _beta_expr(2)).scale(Fraction(1, 32))
    )


def _build_hoffman(depth: int) -> SymbolicExpr:
    acc = SymbolicExpr.zero()
    for c, t_args, log_pow in _HOFFMAN_TERMS[depth]:
        term = SymbolicExpr.rational(c)
        for m in t_args:
            term = term * t_single_expr(m)
        if log_pow:
            term = term * SymbolicExpr.atom(LOG2, log_pow)
        acc = acc + term
    return acc


def build(fid: FormulaId) -> SymbolicExpr:
    """Exact basis expression for any FormulaId."""
    name, params = fid.name, tuple(fid.params)
    if name is Formula.I_CLOSED:
        return _build_i(params[0])
    if name is Formula.T322:
        return _build_t322(params[0])
    if name is Formula.Z322:
        return _build_z322(params[0])
    if name is Formula.E211:
        N = params[0]
        return _zeta_expr(N + 1).scale(Fraction(2 ** (N + 1) - 1, 2 ** (2 * N)))
    if name is Formula.O_DIAG:
        q = params[0]
        t = t_single_expr(q)
        return (_zeta_expr(2 * q).scale(1 - Fraction(1, 4 ** q)) + t * t).scale(Fraction(1, 2))
    if name is Formula.B_DIAG:
        q = params[0]
        b = _beta_expr(q)
        return (_zeta_expr(2 * q).scale(1 - Fraction(1, 4 ** q)) + b * b).scale(Fraction(1, 2))
    if name is Formula.O_REFLECT:
        return _build_o_reflect(*params)
    if name is Formula.B_REFLECT:
        # B(3,2) = beta(2) beta(3) + O(5) - B(2,3); the Catalan monomials cancel
        return _beta_expr(2) * _beta_expr(3) + t_single_expr(5) - _build_b23()
    if name is Formula.O_TABLE:
        return _build_o_table(*params)
    if name is Formula.B23:
        return _build_b23()
    if name is Formula.T2S1_CONJECTURE:
        N = params[0]
        return _build_i(2 * N).scale(Fraction(1, math.factorial(2 * N)))
    if name is Formula.HOFFMAN_T:
        return _build_hoffman(params[0])
    if name is Formula.ZETA311:
        return _zeta_expr(5).scale(2) - _zeta_expr(2) * _zeta_expr(3)
    raise ValueError(f"unknown formula {name!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# evaluation and rendering
# ---------------------------------------------------------------------------


def _const_value(c: BasisConstant, prec: int) -> EvalResult:
    if c.kind == "pi":
        return pi_const(prec)
    if c.kind == "log2":
        return log2_const(prec)
    if c.kind == "zeta_odd":
        return zeta_single(c.arg, prec)
    if c.kind == "beta_even":
        return beta_fn(c.arg, prec)
    return psi3_quarter(prec)


def eval_symbolic(expr: SymbolicExpr, prec: int = 50) -> EvalResult:
    """Evaluate a basis expression with rigorous bound propagation."""
    _coerce_prec(prec)
    wd = prec + GUARD_DIGITS
    with LOCK, mp.workdps(wd):
        terms = []
        for mono, coeff in expr.terms:
            factors = []
            for c, e in mono:
                factors.extend([_vb(_const_value(c, prec))] * e)
            v, b = _vb_prod(factors, wd) if factors else (mpf(1), mpf(0))
            cf = mpf(coeff.numerator) / coeff.denominator
            terms.append((cf * v, abs(cf) * b))
        v, b = _vb_sum(terms, wd) if terms else (mpf(0), mpf(0))
        return wrap_result(v, b, prec, Method.SYMBOLIC, rigorous=True)


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def canonical_text(expr: SymbolicExpr) -> str:
    """Deterministic human form, e.g. '1/2*pi^2*zeta3 - 11/2*zeta5'."""
    if expr.is_zero:
        return "0"
    parts = []
    for i, (mono, coeff) in enumerate(expr.terms):
        factors = [f"{c._text()}^{e}" if e > 1 else c._text() for c, e in mono]
        mag = abs(coeff)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_text(mag)] + factors)
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def json_terms(expr: SymbolicExpr) -> list:
    """JSON-ready term list mirroring the canonical order."""
    out = []
    for mono, coeff in expr.terms:
        out.append(
            {
                "coefficient": _coeff_text(coeff),
                "factors": [
                    {"constant": c.kind, "arg": c.arg, "power": e} for c, e in mono
                ],
            }
        )
    return out
