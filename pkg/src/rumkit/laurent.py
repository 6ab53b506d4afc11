"""Multivariate Laurent polynomials with exact (or float) coefficients.

A polynomial is a finitely supported map from exponent vectors in Z^r to
coefficients.  On the torus the conjugate variable is z^-1, so the symbol
function only ever needs integer exponents.

Terms are ordered graded-lexicographically with z1 > z2 > ... > zr.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .scalar import ExactScalar

__all__ = [
    "LaurentPoly",
    "add",
    "grlex_key",
    "monomial_shift",
    "multiply",
    "negate",
    "substitute_power",
    "variable_names",
]

Exponent = tuple[int, ...]


def grlex_key(e: Exponent):
    return (sum(e), e)


def variable_names(r: int) -> list[str]:
    if r <= 3:
        return ["z", "w", "u"][:r]
    return [f"z{i + 1}" for i in range(r)]


def _coeff_float(c) -> complex:
    return complex(c)


class LaurentPoly:
    """Immutable Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict | None = None, nvars: int = 1):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    clean[e] = c
        self.terms: dict[Exponent, object] = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, c, nvars: int) -> LaurentPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls({}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1, nvars: int | None = None) -> LaurentPoly:
        exponent = tuple(exponent)
        return cls({exponent: _default_coeff(c)}, nvars if nvars is not None else len(exponent))

    @classmethod
    def variable(cls, i: int, nvars: int) -> LaurentPoly:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ExactScalar(1)}, nvars)

    @classmethod
    def from_roots_product(cls, factors: Iterable[LaurentPoly]) -> LaurentPoly:
        it = iter(factors)
        out = next(it)
        for f in it:
            out = out * f
        return out

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other: LaurentPoly):
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, float, complex, ExactScalar)) or hasattr(other, "numerator"):
            return LaurentPoly.constant(_default_coeff(other), self.nvars)
        return None

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def min_exponents(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial")
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial")
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def min_total_degree(self) -> int:
        return min(sum(e) for e in self.terms)

    def is_polynomial(self) -> bool:
        """True when every exponent is nonnegative."""
        return all(x >= 0 for e in self.terms for x in e)

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), 0)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            lifted = self._lift(other)
            if lifted is None:
                return NotImplemented
            c = next(iter(lifted.terms.values()), None)
            if c is None:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly({e: v * c for e, v in self.terms.items()}, self.nvars)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    out[e] = out[e] + p
                else:
                    out[e] = p
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        out = LaurentPoly.constant(ExactScalar(1), self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return self.terms == lifted.terms

    __hash__ = None

    def shift(self, gamma: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial z^gamma."""
        gamma = tuple(gamma)
        if len(gamma) != self.nvars:
            raise ValueError("dimension mismatch in monomial shift")
        return LaurentPoly._raw(
            {tuple(a + g for a, g in zip(e, gamma)): c for e, c in self.terms.items()}, self.nvars
        )

    def substitute_power(self, m: Sequence[int]) -> LaurentPoly:
        """Substitute z_i -> z_i^{m_i}."""
        m = tuple(m)
        if len(m) != self.nvars:
            raise ValueError("dimension mismatch in power substitution")
        return LaurentPoly._raw(
            {tuple(a * k for a, k in zip(e, m)): c for e, c in self.terms.items()}, self.nvars
        )

    def scale(self, c) -> LaurentPoly:
        return self * c

    def map_coeffs(self, f) -> LaurentPoly:
        return LaurentPoly({e: f(c) for e, c in self.terms.items()}, self.nvars)

    def to_float(self) -> LaurentPoly:
        return self.map_coeffs(float)

    def chop(self, tol: float) -> LaurentPoly:
        """Drop coefficients with magnitude below ``tol`` (float backend)."""
        return LaurentPoly({e: c for e, c in self.terms.items() if abs(c) > tol}, self.nvars)

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient of an exact division in the Laurent ring.

        Raises ``ArithmeticError`` if ``other`` does not divide ``self``.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        le, lc = other.leading_term()
        inv = _inverse(lc)
        # the lowest homogeneous part of a product is the product of the
        # lowest parts, which bounds the quotient's degree from below
        floor = self.min_total_degree() - other.min_total_degree()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=grlex_key)
            q_e = tuple(a - b for a, b in zip(e, le))
            if sum(q_e) < floor:
                raise ArithmeticError("polynomial division is not exact")
            q_c = rem[e] * inv
            quot[q_e] = q_c
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(q_e, oe))
                v = rem.get(te, 0) - q_c * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return LaurentPoly._raw(quot, self.nvars)

    # -- evaluation ------------------------------------------------------------
    def evaluate(self, point: Sequence[complex]) -> complex:
        point = tuple(complex(x) for x in point)
        if len(point) != self.nvars:
            raise ValueError("point has wrong number of coordinates")
        if any(x == 0 for x in point):
            raise ValueError("Laurent polynomial evaluated at a point with a zero coordinate")
        total = 0j
        for e, c in self.terms.items():
            m = _coeff_float(c)
            for x, k in zip(point, e):
                if k:
                    m *= x**k
            total += m
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an array of points, shape (P, nvars)."""
        points = np.asarray(points, dtype=complex).reshape(-1, self.nvars)
        if np.any(points == 0):
            raise ValueError("Laurent polynomial evaluated at a point with a zero coordinate")
        out = np.zeros(points.shape[0], dtype=complex)
        for e, c in self.terms.items():
            out += _coeff_float(c) * np.prod(points ** np.array(e, dtype=float), axis=1)
        return out

    def __call__(self, *point):
        return self.evaluate(point)

    # -- display ---------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None, compact: bool = False) -> str:
        names = list(names) if names is not None else variable_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            neg, mag = _split_sign(c)
            mono = _monomial_str(e, names)
            cstr = _coeff_str(mag)
            if not mono:
                body = cstr
            elif cstr == "1":
                body = mono
            else:
                body = f"{cstr}{mono}" if compact else f"{cstr}*{mono}"
            pieces.append((neg, body))
        if compact:
            s = ("-" if pieces[0][0] else "") + pieces[0][1]
            for neg, body in pieces[1:]:
                s += ("-" if neg else "+") + body
            return s
        s = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            s += (" - " if neg else " + ") + body
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!s}, nvars={self.nvars})"

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj


def _default_coeff(c):
    if isinstance(c, (float, complex, ExactScalar)):
        return c
    return ExactScalar(c)


def _inverse(c):
    if isinstance(c, ExactScalar):
        return c.inverse()
    return 1.0 / c


def _split_sign(c):
    if isinstance(c, ExactScalar):
        return (c.sign() < 0, -c if c.sign() < 0 else c)
    if isinstance(c, complex):
        return (False, c)
    return (c < 0, abs(c))


def _coeff_str(c) -> str:
    if isinstance(c, ExactScalar):
        s = c.pretty()
        return f"({s})" if c.b and c.a else s
    if isinstance(c, complex):
        return f"({c.real:.12g}{c.imag:+.12g}j)"
    if float(c).is_integer():
        return str(int(c))
    return f"{c:.12g}"


def _monomial_str(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


# functional aliases
def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def negate(p: LaurentPoly) -> LaurentPoly:
    return -p


def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def monomial_shift(p: LaurentPoly, gamma: Sequence[int]) -> LaurentPoly:
    return p.shift(gamma)


def substitute_power(p: LaurentPoly, m: Sequence[int]) -> LaurentPoly:
    return p.substitute_power(m)
