"""Truncated univariate formal power series in t with explicit precision.

A series stores rational coefficients for t^0 .. t^(k-1) (trailing zeros
trimmed) together with a precision: an integer N means "coefficients are
only claimed below t^N", None means the series is an exact polynomial.
Arithmetic propagates precision conservatively (min of the operands), so a
stored coefficient is always correct.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import InsufficientPrecisionError
from .extorder import INFINITE, ExtOrder


def _min_precision(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PowerSeries:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Sequence, precision: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if precision is not None:
            if precision < 0:
                raise ValueError("precision must be nonnegative")
            cs = cs[:precision]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self.precision: int | None = precision

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(precision: int | None = None) -> "PowerSeries":
        return PowerSeries((), precision)

    @staticmethod
    def one(precision: int | None = None) -> "PowerSeries":
        return PowerSeries((1,), precision)

    @staticmethod
    def t_power(k: int, precision: int | None = None) -> "PowerSeries":
        return PowerSeries((0,) * k + (1,), precision)

    @staticmethod
    def monomial(coeff, k: int, precision: int | None = None) -> "PowerSeries":
        return PowerSeries((0,) * k + (Fraction(coeff),), precision)

    # -- queries -------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    def is_exactly_zero(self) -> bool:
        return self.is_exact and not self.coeffs

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if self.precision is not None and k >= self.precision:
            raise InsufficientPrecisionError(
                f"coefficient of t^{k} requested, series known below t^{self.precision}"
            )
        if k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def constant_term(self) -> Fraction:
        return self[0]

    def order(self) -> ExtOrder:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return ExtOrder.exact(k)
        if self.is_exact:
            return INFINITE
        return ExtOrder.at_least(self.precision)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PowerSeries)
            and self.coeffs == other.coeffs
            and self.precision == other.precision
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.precision))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        prec = _min_precision(self.precision, other.precision)
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self._at(k) + other._at(k) for k in range(n)]
        return PowerSeries(out, prec)

    def _at(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.precision)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        prec = _min_precision(self.precision, other.precision)
        if not self.coeffs or not other.coeffs:
            return PowerSeries((), prec)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, prec)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] += a * b
        return PowerSeries(out, prec)

    def __pow__(self, n: int) -> "PowerSeries":
        if n < 0:
            raise ValueError("negative power of a series")
        result = PowerSeries.one(self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, value) -> "PowerSeries":
        c = Fraction(value)
        if c == 0:
            return PowerSeries((), self.precision)
        return PowerSeries([c * a for a in self.coeffs], self.precision)

    # -- reparametrizations -----------------------------------------------------

    def reparametrize(self, e: int) -> "PowerSeries":
        """Substitute t -> t^e; orders and precision scale by e."""
        if e < 1:
            raise ValueError("reparametrization exponent must be >= 1")
        if e == 1:
            return self
        out = [Fraction(0)] * (len(self.coeffs) * e)
        for k, c in enumerate(self.coeffs):
            out[k * e] = c
        prec = None if self.precision is None else self.precision * e
        return PowerSeries(out, prec)

    def scale_parameter(self, c) -> "PowerSeries":
        """Substitute t -> c*t for a nonzero rational c (a parameter unit)."""
        c = Fraction(c)
        if c == 0:
            raise ValueError("parameter scaling must be by a nonzero rational")
        out = []
        power = Fraction(1)
        for a in self.coeffs:
            out.append(a * power)
            power *= c
        return PowerSeries(out, self.precision)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """Substitute another series for t; inner must have order >= 1."""
        o = inner.order()
        if not o.is_infinite and o.lower_bound() < 1:
            raise ValueError("parameter substitution needs a series of order >= 1")
        prec = _min_precision(self.precision, inner.precision)
        result = PowerSeries.zero(prec)
        for c in reversed(self.coeffs):
            result = result * inner + PowerSeries((c,), prec)
        return result

    def divide_t_power(self, k: int) -> "PowerSeries":
        """Exact division by t^k; precision drops by k."""
        if k == 0:
            return self
        for j, c in enumerate(self.coeffs[:k]):
            if c != 0:
                raise ValueError(f"series has nonzero coefficient at t^{j}, not divisible by t^{k}")
        if self.precision is not None and self.precision < k:
            raise InsufficientPrecisionError(
                f"cannot certify divisibility by t^{k}: series known below t^{self.precision}"
            )
        prec = None if self.precision is None else self.precision - k
        return PowerSeries(self.coeffs[k:], prec)

    def truncate(self, precision: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, _min_precision(self.precision, precision))

    # -- printing ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            chunks = []
            for k, c in enumerate(self.coeffs):
                if c == 0:
                    continue
                if k == 0:
                    body = str(abs(c))
                elif abs(c) == 1:
                    body = "t" if k == 1 else f"t^{k}"
                else:
                    body = f"{abs(c)}*t" if k == 1 else f"{abs(c)}*t^{k}"
                chunks.append(("-" if c < 0 else "+", body))
            sign0, body0 = chunks[0]
            body = ("-" if sign0 == "-" else "") + body0
            for sign, b in chunks[1:]:
                body += f" {sign} {b}"
        if self.precision is None:
            return body
        return f"{body} + O(t^{self.precision})"

    def __repr__(self) -> str:
        return f"PowerSeries({self})"


def series_order(s: PowerSeries) -> ExtOrder:
    """Index of the first nonzero coefficient, censored at finite precision."""
    return s.order()


def series_reparametrize(s: PowerSeries, e: int) -> PowerSeries:
    return s.reparametrize(e)


def poly_compose_series(f, substitutions: dict) -> PowerSeries:
    """Evaluate a MultiPoly on power series, one substitute per variable.

    The result's precision is the min over the substitutes of variables that
    actually occur in f (exact when they are all exact).
    """
    from .errors import DimensionMismatchError

    prec: int | None = None
    for i, v in enumerate(f.vars):
        if any(exp[i] for exp in f.terms):
            if v not in substitutions:
                raise DimensionMismatchError(f"no substitute supplied for variable {v!r}")
            prec = _min_precision(prec, substitutions[v].precision)
    total = PowerSeries.zero(prec)
    for exp, coeff in sorted(f.terms.items()):
        term = PowerSeries((coeff,), prec)
        for v, e in zip(f.vars, exp):
            if e:
                term = term * substitutions[v] ** e
        total = total + term
    return total

