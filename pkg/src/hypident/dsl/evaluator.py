"""Evaluation of comparison documents through the series ring and the hypergeometric evaluators."""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Mapping

import mpmath

from hypident.dsl.ast import Abs, BinOp, Document, Hyp, Name, Neg, Num, Poch, QProdInf, Sum, Vwp
from hypident.errors import ConstraintViolation, DSLEvaluationError, HypIdentError, PoleError
from hypident.exact import as_exact, is_integer, pochhammer, q_pochhammer, to_numeric
from hypident.hyper import HypSeriesSpec, VwpSpec, basic_hyp_phi, hyp_f, qpoch_inf, vwp_8phi7
from hypident.series import TruncatedSeries, q_product, series_invert, series_pow
from hypident.verify import ERROR, FAIL, PASS, VerificationReport, _compare_formal, _rel

DEFAULT_ORDER = 6
DEFAULT_TOL = 1e-10
AUTO_ZERO_RUN = 6  # consecutive vanishing terms that end an "auto" sum
AUTO_SMALL_RUN = 3  # numeric: consecutive negligible terms
MAX_AUTO_TERMS = 100_000


class _Located(Exception):
    """Carries the innermost failing node's position up the evaluation stack."""

    def __init__(self, exc, pos):
        self.exc = exc
        self.pos = pos


class Evaluator:
    def __init__(self, mode: str, order: int | None, tol, env: dict, variables: list):
        self.mode = mode
        self.order = order
        self.tol = tol
        self.env = env
        self.variables = variables

    # -- helpers ---------------------------------------------------------------------

    @property
    def numeric(self) -> bool:
        return self.mode == "numeric"

    def scalar(self, v):
        return to_numeric(v) if self.numeric else v

    def q(self, node):
        return self.env["q"]

    def _int(self, value, node, what) -> int:
        if isinstance(value, TruncatedSeries):
            if value.is_zero() or set(value.coefficients()) == {value.zero_index}:
                value = value.constant_term()
            else:
                raise DSLEvaluationError(f"{what} must be a scalar", *node.pos)
        if isinstance(value, (mpmath.mpf, float)):
            if value != int(value):
                raise DSLEvaluationError(f"{what} must be an integer, got {value}", *node.pos)
            return int(value)
        if not is_integer(value):
            raise DSLEvaluationError(f"{what} must be an integer, got {value}", *node.pos)
        return int(value)

    @staticmethod
    def _is_zero(v) -> bool:
        return v.is_zero() if isinstance(v, TruncatedSeries) else v == 0

    # -- evaluation ---------------------------------------------------------------------

    def ev(self, node):
        try:
            return self._ev(node)
        except _Located:
            raise
        except DSLEvaluationError:
            raise
        except (HypIdentError, ZeroDivisionError, mpmath.libmp.NoConvergence, OverflowError) as exc:
            raise _Located(exc, node.pos) from exc

    def _ev(self, node):
        if isinstance(node, Num):
            return self.scalar(node.value)
        if isinstance(node, Name):
            return self.env[node.name]
        if isinstance(node, Neg):
            return -self.ev(node.operand)
        if isinstance(node, BinOp):
            return self.binop(node)
        if isinstance(node, Abs):
            v = self.ev(node.arg)
            if isinstance(v, TruncatedSeries):
                raise DSLEvaluationError("abs() needs a scalar", *node.pos)
            return abs(v)
        if isinstance(node, Poch):
            return self.poch(node)
        if isinstance(node, QProdInf):
            return self.qprodinf(node)
        if isinstance(node, Sum):
            return self.sum(node)
        if isinstance(node, Hyp):
            upper = [self.ev(u) for u in node.upper]
            lower = [self.ev(b) for b in node.lower]
            spec = HypSeriesSpec(upper, lower, self.ev(node.arg), base=self.env["q"] if node.q_analogue else None)
            return basic_hyp_phi(spec) if node.q_analogue else hyp_f(spec)
        if isinstance(node, Vwp):
            lateral = [self.ev(v) for v in node.lateral]
            return vwp_8phi7(VwpSpec(self.ev(node.a), lateral, self.env["q"], self.ev(node.arg)))
        raise DSLEvaluationError(f"cannot evaluate {type(node).__name__}", *getattr(node, "pos", (None, None)))

    def binop(self, node):
        left = self.ev(node.left)
        right = self.ev(node.right)
        op = node.op
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            if isinstance(right, TruncatedSeries):
                return left * series_invert(right)
            if right == 0:
                raise PoleError("division by zero", node.right and "divisor")
            return left / right
        # power
        if isinstance(right, TruncatedSeries):
            raise DSLEvaluationError("exponent must be a scalar", *node.pos)
        if isinstance(left, TruncatedSeries):
            return series_pow(left, right)
        if self.numeric:
            if left == 0 and right < 0:
                raise PoleError("zero to a negative power")
            return mpmath.power(left, right)
        if not is_integer(right):
            raise DSLEvaluationError("non-integer power of an exact scalar is not rational", *node.pos)
        n = int(right)
        if abs(n) > 100_000:
            raise DSLEvaluationError("exponent too large", *node.pos)
        if left == 0 and n < 0:
            raise PoleError("zero to a negative power")
        return left ** n

    def poch(self, node):
        base = self.ev(node.base)
        n = self._int(self.ev(node.index), node.index, "Pochhammer index")
        if abs(n) > 100_000:
            raise DSLEvaluationError("Pochhammer index too large", *node.pos)
        if not isinstance(base, TruncatedSeries):
            return q_pochhammer(base, self.env["q"], n) if node.q_analogue else pochhammer(base, n)
        if node.q_analogue:
            return q_product(base, self.env["q"], n)
        result = base * 0 + 1
        for i in range(abs(n)):
            result = result * (base + (i if n > 0 else n + i))
        return result if n >= 0 else series_invert(result)

    def qprodinf(self, node):
        arg = self.ev(node.arg)
        q = self.env["q"]
        if isinstance(arg, TruncatedSeries):
            return q_product(arg, q, math.inf)
        if self.numeric:
            return qpoch_inf(arg, q)
        raise DSLEvaluationError("qprodinf of an exact scalar is not a finite product; use numeric mode", *node.pos)

    def sum(self, node):
        lo = self._int(self.ev(node.lower), node.lower, "sum bound")
        saved = self.env.get(node.index, None)
        total = None
        try:
            if node.upper is not None:
                hi = self._int(self.ev(node.upper), node.upper, "sum bound")
                if hi - lo > MAX_AUTO_TERMS:
                    raise DSLEvaluationError("sum range too large", *node.pos)
                for i in range(lo, hi + 1):
                    self.env[node.index] = self.scalar(Fraction(i))
                    t = self.ev(node.body)
                    total = t if total is None else total + t
                return self.scalar(Fraction(0)) if total is None else total
            return self._auto_sum(node, lo)
        finally:
            if saved is None:
                self.env.pop(node.index, None)
            else:
                self.env[node.index] = saved

    def _auto_sum(self, node, lo):
        total = None
        run = 0
        for i in range(lo, lo + MAX_AUTO_TERMS):
            self.env[node.index] = self.scalar(Fraction(i))
            t = self.ev(node.body)
            total = t if total is None else total + t
            if self.numeric:
                small = abs(t) <= self.tol * abs(total) / 100 or t == 0
                run = run + 1 if small else 0
                if run >= AUTO_SMALL_RUN:
                    return total
            else:
                run = run + 1 if self._is_zero(t) else 0
                if run >= AUTO_ZERO_RUN:
                    return total
        raise DSLEvaluationError(
            "sum(..., auto, ...) does not terminate: no vanishing factor or degree bound ends it", *node.pos
        )


def _bind(doc: Document, mode, order, params, variables):
    """Resolve parameter and variable values; check the admissibility predicates."""
    numeric = mode == "numeric"
    env: dict = {}
    conv = to_numeric if numeric else as_exact
    params = dict(params or {})
    for p in doc.params:
        if p.name in params:
            env[p.name] = conv(params[p.name])
        elif p.value is not None:
            env[p.name] = Evaluator(mode, order, DEFAULT_TOL, env, []).ev(p.value)
        else:
            raise DSLEvaluationError(f"parameter {p.name!r} has no value", *p.pos)
    for p in doc.params:
        for w in p.where:
            ev = Evaluator(mode, order, DEFAULT_TOL, env, [])
            left, right = ev.ev(w.left), ev.ev(w.right)
            ok = {"!=": left != right, "<": left < right, ">": left > right,
                  "<=": left <= right, ">=": left >= right}[w.op]
            if not ok:
                raise ConstraintViolation(f"line {w.pos[0]}: predicate on {p.name!r} fails ({w.op})")
    names = doc.variable_names()
    values = dict(variables or {})
    if numeric:
        for v in doc.variables:
            if v.name in values:
                env[v.name] = to_numeric(values[v.name])
            elif v.value is not None:
                env[v.name] = Evaluator(mode, order, DEFAULT_TOL, env, []).ev(v.value)
            else:
                raise DSLEvaluationError(f"variable {v.name!r} needs a value in numeric mode", *v.pos)
    else:
        for v in names:
            env[v] = TruncatedSeries.variable(v, names, order)
    return env


def _exact_values(doc, params, variables, mode):
    """Exact parameter (and, numerically, variable) values for the report, when they are rational."""
    try:
        env = _bind(doc, "formal", 0, params, None)
        out = {k: v for k, v in env.items() if not isinstance(v, TruncatedSeries)}
        if mode == "numeric":
            values = dict(variables or {})
            for v in doc.variables:
                if v.name in values:
                    out[v.name] = as_exact(values[v.name])
                else:
                    out[v.name] = Evaluator("formal", 0, None, dict(out), []).ev(v.value)
        return out
    except (HypIdentError, ZeroDivisionError, TypeError, ValueError, _Located):
        return None


def evaluate(doc: Document, params: Mapping | None = None, variables: Mapping | None = None,
             order: int | None = None, tol=None, mode: str | None = None, name: str = "dsl") -> VerificationReport:
    """Evaluate every side of the document and compare them like the registry verifiers do."""
    if mode is None:
        mode = doc.mode.kind if doc.mode is not None else ("numeric" if tol is not None else "formal")
    if mode == "formal":
        if order is None:
            order = int(doc.mode.value) if doc.mode is not None and doc.mode.kind == "formal" else DEFAULT_ORDER
        tol = None
    else:
        if tol is None:
            tol = float(doc.mode.value) if doc.mode is not None and doc.mode.kind == "numeric" else DEFAULT_TOL
        order = None
    start = time.perf_counter()
    env = _bind(doc, mode, order or 0, params, variables)
    shown = _exact_values(doc, params, variables, mode) or {
        k: v for k, v in env.items() if not isinstance(v, TruncatedSeries)
    }
    report = VerificationReport(name, mode, shown, PASS, order=order, tol=tol)
    ev = Evaluator(mode, order, tol, env, doc.variable_names())
    try:
        values = [ev.ev(side) for side in doc.sides]
    except _Located as loc:
        report.verdict = ERROR
        report.error = f"line {loc.pos[0]}, column {loc.pos[1]}: {type(loc.exc).__name__}: {loc.exc}"
        report.timing = time.perf_counter() - start
        return report
    labels = [f"side {k + 1}" for k in range(len(values))]
    if mode == "formal":
        if any(isinstance(v, TruncatedSeries) for v in values):
            names = doc.variable_names()
            values = [v if isinstance(v, TruncatedSeries) else TruncatedSeries.constant(v, names, order)
                      for v in values]
        for label, v in zip(labels[1:], values[1:]):
            report.differences += _compare_formal(labels[0], values[0], label, v)
    else:
        worst = mpmath.mpf(0)
        for label, v in zip(labels[1:], values[1:]):
            r = _rel(values[0], v)
            worst = max(worst, r)
            if not r <= tol:
                report.differences.append({"sides": f"{labels[0]} vs {label}", "expected": values[0],
                                           "actual": v, "relative": r})
        report.measured = {**dict(zip(labels, values)), "relative error": worst}
    report.verdict = FAIL if report.differences else PASS
    report.timing = time.perf_counter() - start
    return report
