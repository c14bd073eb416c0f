"""Command-line front end.

Subcommands map one-to-one onto the evaluation families:

  constants     single constants (pi, log2, zeta m, eta m, beta m, t m, psi3_quarter)
  zeta          nested zeta values zeta(i1,...,ik), outermost exponent first
  tvalue        nested odd-denominator values t(i1,...,ik)
  mu            nested parity-constrained values mu(i1,...,ik)
  bigT          2^depth-scaled parity values T(i1,...,ik)
  oddsum        odd Euler sums O(p,q) / alternating B(p,q)
  eulersum      classical Euler sums  sum prod_j H_n^(p_j) / n^q
  integral      the integral family (I, J, K, logsine)
  series-coeff  exact coefficient-table entries (G, H, arctanh families)
  cbsum         central-binomial (Lehmer) sums
  verify        run the cross-verification suites

Every evaluating subcommand takes --method {closed,series,quadrature,
symbolic,all}: 'all' runs every route available for the requested shape and
checks pairwise agreement within the combined error bounds.  Routes that do
not apply to a shape are simply absent (e.g. there is no closed form for an
arbitrary zeta index), and asking for one explicitly is an invalid request.
--json emits a deterministic machine payload (identical invocations produce
byte-identical output); --symbolic attaches the exact basis expression where
one exists.

Exit codes: 0 success, 1 route disagreement (or failed verification),
2 invalid request, 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import closed
from .closed import Formula, FormulaId
from .hp import (
    GUARD_DIGITS,
    EvalResult,
    Method,
    _coerce_prec,
    beta_fn,
    eta,
    log2_const,
    pi_const,
    psi3_quarter,
    t_single,
    wrap_result,
    zeta_single,
)
from .quadrature import (
    I_quad,
    QuadratureNonConvergence,
    j_cot,
    k_arctanh,
    logsine_check,
    t_kernel_quad,
)
from .series import (
    CB_KINDS,
    DEFAULT_CUTOFF,
    big_t_series,
    central_binomial_sum,
    euler_H_series,
    mtv_series,
    mu_series,
    mzv_series,
    odd_B_series,
    odd_O_series,
)
from .symbolic import build, canonical_text, eval_symbolic, json_terms
from .verify import SUITES, _kernel_combination, run_suite
from .wseries import arctanh_nested_coeff, g_coeff, h_coeff

__all__ = ["Request", "run", "main"]

_METHODS = ("closed", "series", "quadrature", "symbolic", "all")
_QUANTITIES = (
    "constants",
    "zeta",
    "tvalue",
    "mu",
    "bigT",
    "oddsum",
    "eulersum",
    "integral",
    "cbsum",
)
_CONSTANT_NAMES = ("pi", "log2", "zeta", "eta", "beta", "t", "psi3_quarter")
_INTEGRAL_KINDS = ("I", "J", "K", "logsine")


@dataclass(frozen=True)
class Request:
    """One evaluation request: a quantity family plus its parameters.

    ``params`` holds the subcommand's positional arguments verbatim
    (integers for exponent tuples; a leading name string for constants,
    oddsum, integral, and cbsum).
    """

    quantity: str
    params: tuple
    method: str = "all"
    prec: int = 50
    cutoff: int = DEFAULT_CUTOFF
    output: str = "text"
    symbolic: bool = False

    def __post_init__(self):
        if self.quantity not in _QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.output not in ("text", "json"):
            raise ValueError(f"output must be 'text' or 'json', got {self.output!r}")
        _coerce_prec(self.prec)
        if not isinstance(self.cutoff, int) or self.cutoff < 10:
            raise ValueError(f"cutoff must be an integer >= 10, got {self.cutoff!r}")


# ---------------------------------------------------------------------------
# shape recognizers
# ---------------------------------------------------------------------------


def _head_tail_run(params, head, tail) -> int:
    """Length of the tail run when params == (head, tail, ..., tail), else 0."""
    if len(params) >= 2 and params[0] == head and all(p == tail for p in params[1:]):
        return len(params) - 1
    return 0


def _twos_then_one(params) -> int:
    """N when params == ({2}^N, 1), else 0."""
    if len(params) >= 2 and params[-1] == 1 and all(p == 2 for p in params[:-1]):
        return len(params) - 1
    return 0


def _scaled(r: EvalResult, factor: Fraction, prec: int, conjectural: bool = False) -> EvalResult:
    """r times an exact rational, bound scaled alongside (plus an ulp of slop)."""
    with mp.workdps(prec + GUARD_DIGITS):
        f = mpf(factor.numerator) / factor.denominator
        v = r.value.magnitude * f
        b = r.error_bound.magnitude * abs(f) + abs(v) * mpf(10) ** (-prec - 5)
        return wrap_result(
            v, b, prec, r.method, rigorous=r.rigorous,
            conjectural=conjectural or r.conjectural,
        )


def _kernel_pair(p: int, q: int, sign_den: int, prec: int) -> EvalResult:
    """(-1)^q/(2(q-1)!) * (L(p,q,-1,den) - L(p,q,+1,den)) as one result."""
    v, b = _kernel_combination(p, q, sign_den, prec)
    return wrap_result(v, b, prec, Method.QUADRATURE, rigorous=False)


# ---------------------------------------------------------------------------
# route tables
# ---------------------------------------------------------------------------


def _fid_for(req: Request):
    """FormulaId for the requested shape, when a symbolic build exists."""
    p = req.params
    if req.quantity == "zeta":
        if p == (3,):
            return FormulaId(Formula.Z322, (0,))
        if (n := _head_tail_run(p, 3, 2)):
            return FormulaId(Formula.Z322, (n,))
        if p == (3, 1, 1):
            return FormulaId(Formula.ZETA311)
    elif req.quantity == "tvalue":
        if (n := _head_tail_run(p, 3, 2)):
            return FormulaId(Formula.T322, (n,))
        if (n := _twos_then_one(p)):
            if n <= 3:
                return FormulaId(Formula.HOFFMAN_T, (n,))
            return FormulaId(Formula.T2S1_CONJECTURE, (n,))
    elif req.quantity == "mu":
        if p == (2,):
            return FormulaId(Formula.E211, (1,))
        if (n := _head_tail_run(p, 2, 1)):
            return FormulaId(Formula.E211, (n + 1,))
    elif req.quantity == "oddsum":
        fam, a, b = p
        if fam == "O":
            if a == b and a >= 2:
                return FormulaId(Formula.O_DIAG, (a,))
            if (a, b) in closed.O_TABLE_PRIMARY or (b, a) in closed.O_TABLE_PRIMARY:
                return FormulaId(Formula.O_TABLE, (a, b))
        else:
            if a == b and a >= 2:
                return FormulaId(Formula.B_DIAG, (a,))
            if (a, b) == (2, 3):
                return FormulaId(Formula.B23)
            if (a, b) == (3, 2):
                return FormulaId(Formula.B_REFLECT, (2, 3))
    elif req.quantity == "integral":
        kind, n = p
        if kind == "I" and isinstance(n, int) and n >= 1:
            return FormulaId(Formula.I_CLOSED, (n,))
    return None


def _routes(req: Request) -> dict:
    """Available evaluation routes for the request, name -> thunk."""
    p, prec, cutoff = req.params, req.prec, req.cutoff
    routes: dict = {}

    if req.quantity == "constants":
        name, arg = p
        routes["closed"] = {
            "pi": lambda: pi_const(prec),
            "log2": lambda: log2_const(prec),
            "psi3_quarter": lambda: psi3_quarter(prec),
            "zeta": lambda: zeta_single(arg, prec),
            "eta": lambda: eta(arg, prec),
            "beta": lambda: beta_fn(arg, prec),
            "t": lambda: t_single(arg, prec),
        }[name]
        return routes

    if req.quantity == "zeta":
        if len(p) == 1:
            routes["closed"] = lambda: zeta_single(p[0], prec)
        elif (n := _head_tail_run(p, 3, 2)):
            routes["closed"] = lambda: closed.z_closed(n, prec)
        elif p == (3, 1, 1):
            routes["closed"] = lambda: closed.zeta311(prec)
        elif _head_tail_run(p, 2, 1):
            # telescoping:  zeta(2, {1}^(k-1)) = zeta(k+1)
            routes["closed"] = lambda: zeta_single(len(p) + 1, prec)
        routes["series"] = lambda: mzv_series(p, cutoff, prec)

    elif req.quantity == "tvalue":
        if len(p) == 1:
            routes["closed"] = lambda: t_single(p[0], prec)
        elif (n := _head_tail_run(p, 3, 2)):
            routes["closed"] = lambda: closed.t_closed(n, prec)
            routes["quadrature"] = lambda: t_kernel_quad(n, prec)
        elif (m := _twos_then_one(p)):
            if m <= 3:
                routes["closed"] = lambda: closed.hoffman_t(
                    closed.HOFFMAN_KINDS[m - 1], prec
                )
                routes["quadrature"] = lambda: _scaled(
                    I_quad(2 * m, prec), Fraction(1, math.factorial(2 * m)), prec
                )
            else:
                routes["closed"] = lambda: closed.t2s1_conjecture(m, prec)
                routes["quadrature"] = lambda: _scaled(
                    I_quad(2 * m, prec),
                    Fraction(1, math.factorial(2 * m)),
                    prec,
                    conjectural=True,
                )
        routes["series"] = lambda: mtv_series(p, cutoff, prec)

    elif req.quantity == "mu":
        if p == (2,) or _head_tail_run(p, 2, 1):
            N = len(p)
            routes["closed"] = lambda: closed.mu_closed(N, prec)
            routes["quadrature"] = lambda: _scaled(
                k_arctanh(N, prec), Fraction(1, math.factorial(N)), prec
            )
        routes["series"] = lambda: mu_series(p, cutoff, prec)

    elif req.quantity == "bigT":
        if len(p) == 1:
            routes["closed"] = lambda: _scaled(t_single(p[0], prec), Fraction(2), prec)
        elif _head_tail_run(p, 2, 1):
            # T(2, {1}^(k-1)) = T(k+1) = 2 t(k+1)
            routes["closed"] = lambda: _scaled(t_single(len(p) + 1, prec), Fraction(2), prec)
        routes["series"] = lambda: big_t_series(p, cutoff, prec)

    elif req.quantity == "oddsum":
        fam, a, b = p
        if fam == "O":
            if a == b and a >= 2:
                routes["closed"] = lambda: closed.o_diag(a, prec)
            elif (a, b) in closed.O_TABLE_PRIMARY or (b, a) in closed.O_TABLE_PRIMARY:
                routes["closed"] = lambda: closed.o_table(a, b, prec)
            routes["series"] = lambda: odd_O_series(a, b, cutoff, prec)
            if a >= 2 and b >= 2:
                routes["quadrature"] = lambda: _kernel_pair(a, b, -1, prec)
        else:
            if a == b and a >= 2:
                routes["closed"] = lambda: closed.b_diag(a, prec)
            elif (a, b) == (2, 3):
                routes["closed"] = lambda: closed.b23_closed(prec)
            elif (a, b) == (3, 2):
                routes["closed"] = lambda: closed.b_reflect(
                    2, 3, closed.b23_closed(prec), prec
                )
            routes["series"] = lambda: odd_B_series(a, b, cutoff, prec)
            if a >= 2 and b >= 2:
                routes["quadrature"] = lambda: _kernel_pair(a, b, +1, prec)

    elif req.quantity == "eulersum":
        q, ps = p[0], p[1:]
        routes["series"] = lambda: euler_H_series(ps, q, cutoff, prec)

    elif req.quantity == "integral":
        kind, n = p
        if kind == "I":
            routes["closed"] = lambda: closed.i_closed(n, prec)
            routes["quadrature"] = lambda: I_quad(n, prec)
        elif kind == "J":
            # J(n) = I(n)/pi^(n+1)
            def _j_closed():
                base = closed.i_closed(n, prec)
                with mp.workdps(prec + GUARD_DIGITS):
                    f = pi_const(prec).value.magnitude ** (-(n + 1))
                    return wrap_result(
                        base.value.magnitude * f,
                        base.error_bound.magnitude * f * 2,
                        prec,
                        Method.CLOSED_FORM,
                        rigorous=True,
                    )

            routes["closed"] = _j_closed
            routes["quadrature"] = lambda: j_cot(n, prec)
        elif kind == "K":
            # K(N) = N! (2^(N+1)-1) zeta(N+1) / 2^(2N) = N! mu(2, {1}^(N-1))
            routes["closed"] = lambda: _scaled(
                closed.mu_closed(n, prec), Fraction(math.factorial(n)), prec
            )
            routes["quadrature"] = lambda: k_arctanh(n, prec)
        else:  # logsine: -n int_0^(pi/2) z^(n-1) log sin z dz, equals I(n)
            routes["closed"] = lambda: closed.i_closed(n, prec)
            routes["quadrature"] = lambda: logsine_check(n, prec)

    elif req.quantity == "cbsum":
        routes["series"] = lambda: central_binomial_sum(p[0], cutoff, prec)

    fid = _fid_for(req)
    if fid is not None:
        conj = fid.name is Formula.T2S1_CONJECTURE
        routes["symbolic"] = lambda: _scaled(
            eval_symbolic(build(fid), prec), Fraction(1), prec, conjectural=conj
        )
    return routes


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------


def _result_payload(req: Request, method: str, r: EvalResult) -> dict:
    with mp.workdps(req.prec + GUARD_DIGITS):
        err = mp.nstr(r.error_bound.magnitude, 5)
    return {
        "quantity": req.quantity,
        "params": list(req.params),
        "method": method,
        "precision_digits": req.prec,
        "value": r.value.to_decimal(req.prec),
        "error_bound": err,
        "rigorous": bool(r.rigorous),
        "conjectural": bool(r.conjectural),
    }


def run(req: Request) -> dict:
    """Evaluate a request; returns the JSON-ready payload.

    Raises ValueError for shapes with no applicable route; lets
    QuadratureNonConvergence propagate for the caller's exit mapping.
    """
    routes = _routes(req)
    if not routes:
        raise ValueError(f"no evaluation route for {req.quantity} {req.params}")

    if req.method != "all":
        if req.method not in routes:
            raise ValueError(
                f"method {req.method!r} not available for {req.quantity} "
                f"{req.params}; available: {sorted(routes)}"
            )
        payload = _result_payload(req, req.method, routes[req.method]())
    else:
        order = [m for m in ("closed", "series", "quadrature", "symbolic") if m in routes]
        results = [(m, routes[m]()) for m in order]
        entries = [_result_payload(req, m, r) for m, r in results]
        agree = True
        with mp.workdps(req.prec + GUARD_DIGITS):
            for i in range(len(results)):
                for j in range(i + 1, len(results)):
                    diff = abs(
                        results[i][1].value.magnitude - results[j][1].value.magnitude
                    )
                    tol = (
                        results[i][1].error_bound.magnitude
                        + results[j][1].error_bound.magnitude
                    )
                    if diff > tol:
                        agree = False
        payload = {
            "quantity": req.quantity,
            "params": list(req.params),
            "method": "all",
            "precision_digits": req.prec,
            "routes": entries,
            "agreement": agree,
        }

    if req.symbolic:
        fid = _fid_for(req)
        if fid is not None:
            expr = build(fid)
            payload["symbolic"] = {"text": canonical_text(expr), "terms": json_terms(expr)}
    return payload


def _render_text(payload: dict) -> str:
    lines = []
    params = ",".join(str(x) for x in payload["params"])
    lines.append(f"{payload['quantity']}({params})   [prec {payload['precision_digits']}]")
    entries = payload["routes"] if "routes" in payload else [payload]
    for e in entries:
        flags = []
        if not e["rigorous"]:
            flags.append("estimate")
        if e["conjectural"]:
            flags.append("conjectural")
        suffix = f"   ({', '.join(flags)})" if flags else ""
        lines.append(f"  {e['method']:<12} {e['value']}   error <= {e['error_bound']}{suffix}")
    if "agreement" in payload and len(entries) >= 2:
        lines.append(
            "  agreement: OK (all pairwise differences within combined bounds)"
            if payload["agreement"]
            else "  agreement: FAILED"
        )
    if "symbolic" in payload:
        lines.append(f"  exact: {payload['symbolic']['text']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common_flags(sp):
    sp.add_argument("--prec", type=int, default=50, help="decimal digits (default 50)")
    sp.add_argument(
        "--cutoff", type=int, default=DEFAULT_CUTOFF, help="series cutoff (default 10^6)"
    )
    sp.add_argument(
        "--method", choices=_METHODS, default="all", help="evaluation route (default all)"
    )
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument(
        "--symbolic", action="store_true", help="attach the exact basis expression"
    )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="multizeta",
        description=(
            "high-precision nested zeta/t/mu values, odd Euler sums, "
            "and their integral representations"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="single constants")
    sp.add_argument("name", choices=_CONSTANT_NAMES)
    sp.add_argument("arg", type=int, nargs="?", default=None, help="argument m where applicable")
    _common_flags(sp)

    for cmd, hlp in (
        ("zeta", "nested zeta value, exponents outermost-first"),
        ("tvalue", "nested odd-denominator t value"),
        ("mu", "nested parity-constrained mu value"),
        ("bigT", "2^depth-scaled parity value"),
    ):
        sp = sub.add_parser(cmd, help=hlp)
        sp.add_argument("exponents", type=int, nargs="+")
        _common_flags(sp)

    sp = sub.add_parser("oddsum", help="odd Euler sums O(p,q) and alternating B(p,q)")
    sp.add_argument("family", choices=("O", "B"))
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    _common_flags(sp)

    sp = sub.add_parser(
        "eulersum", help="sum prod_j H_n^(p_j) / n^q  (arguments: q p1 [p2 ...])"
    )
    sp.add_argument("q", type=int)
    sp.add_argument("ps", type=int, nargs="+")
    _common_flags(sp)

    sp = sub.add_parser("integral", help="integral family")
    sp.add_argument("kind", choices=_INTEGRAL_KINDS)
    sp.add_argument("n", type=int)
    _common_flags(sp)

    sp = sub.add_parser("series-coeff", help="exact coefficient-table entries")
    sp.add_argument("family", choices=("G", "H", "arctanh"))
    sp.add_argument("N", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("cbsum", help="central-binomial (Lehmer) sums")
    sp.add_argument("kind", choices=CB_KINDS)
    _common_flags(sp)

    sp = sub.add_parser("verify", help="run the cross-verification suites")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--prec", type=int, default=50)
    sp.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    sp.add_argument("--json", action="store_true", help="print the report as JSON")
    sp.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    sp.add_argument(
        "--strict-conjectures",
        action="store_true",
        help="conjectural failures also gate the exit status",
    )
    return ap


def _request_from_args(args) -> Request:
    common = dict(
        method=args.method,
        prec=args.prec,
        cutoff=args.cutoff,
        output="json" if args.json else "text",
        symbolic=args.symbolic,
    )
    if args.command == "constants":
        if args.name in ("zeta", "eta", "beta", "t"):
            if args.arg is None:
                raise ValueError(f"constants {args.name} requires an integer argument m")
            return Request("constants", (args.name, args.arg), **common)
        if args.arg is not None:
            raise ValueError(f"constants {args.name} takes no argument")
        return Request("constants", (args.name, 0), **common)
    if args.command in ("zeta", "tvalue", "mu", "bigT"):
        return Request(args.command, tuple(args.exponents), **common)
    if args.command == "oddsum":
        return Request("oddsum", (args.family, args.p, args.q), **common)
    if args.command == "eulersum":
        return Request("eulersum", (args.q, *args.ps), **common)
    if args.command == "integral":
        return Request("integral", (args.kind, args.n), **common)
    if args.command == "cbsum":
        return Request("cbsum", (args.kind,), **common)
    raise ValueError(f"unhandled command {args.command!r}")  # pragma: no cover


def _run_series_coeff(args) -> int:
    fn = {"G": g_coeff, "H": h_coeff, "arctanh": arctanh_nested_coeff}[args.family]
    value = fn(args.N, args.k)
    if args.json:
        print(
            json.dumps(
                {
                    "quantity": "series-coeff",
                    "params": [args.family, args.N, args.k],
                    "value": str(value),
                    "exact": True,
                },
                indent=2,
            )
        )
    else:
        print(f"{args.family}_{args.N}[{args.k}] = {value}")
    return 0


def _run_verify(args) -> int:
    report = run_suite(args.suite, prec=args.prec, cutoff=args.cutoff)
    payload = report.to_dict()
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(report.render_table())
    return 0 if report.all_passed(strict_conjectures=args.strict_conjectures) else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "series-coeff":
            return _run_series_coeff(args)
        req = _request_from_args(args)
        payload = run(req)
    except QuadratureNonConvergence as exc:
        print(f"quadrature failed to converge: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return 2
    if req.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_render_text(payload))
    return 0 if payload.get("agreement", True) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
