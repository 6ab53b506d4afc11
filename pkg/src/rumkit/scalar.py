"""Exact scalars in a real quadratic field Q(sqrt(D)).

Coordinates of the built-in frameworks need at most one square root
(kagome uses sqrt(3)), so a single radicand per value is enough.  Values
with different nonzero radicands cannot be combined.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["ExactScalar", "as_scalar", "is_square_free", "parse_scalar"]


def is_square_free(n: int) -> bool:
    if n < 2:
        return False
    if n % 4 == 0:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


class ExactScalar:
    """The number ``a + b*sqrt(D)`` with rational ``a``, ``b``.

    ``D == 0`` means a pure rational.  Two scalars are equal when their
    rational and surd parts agree; the radicand only matters when the surd
    part is nonzero.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        d = int(d)
        if d != 0 and not is_square_free(d):
            raise ValueError(f"radicand {d} is not square-free (or is < 2)")
        self.a = Fraction(a)
        self.b = Fraction(b)
        if self.b and not d:
            raise ValueError("nonzero surd part requires a radicand")
        self.d = d

    # -- helpers -----------------------------------------------------------
    def _radicand_with(self, other: ExactScalar) -> int:
        # a rational value is compatible with any radicand
        if not self.b:
            return other.d if other.b else self.d or other.d
        if not other.b or self.d == other.d:
            return self.d
        raise ValueError(f"mixed radicands {self.d} and {other.d}")

    @property
    def is_rational(self) -> bool:
        return not self.b

    def conjugate(self) -> ExactScalar:
        """Galois conjugate ``a - b*sqrt(D)``."""
        return ExactScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.a + other.a, self.b + other.b, self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.a - other.a, self.b - other.b, self._radicand_with(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._radicand_with(other)
        if not self.b and not other.b:
            return ExactScalar(self.a * other.a, 0, d)
        return ExactScalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return ExactScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    # -- comparison / conversion -------------------------------------------
    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.a != other.a or self.b != other.b:
            return False
        return not self.b or self.d == other.d

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of the real number."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"ExactScalar({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return self.literal()

    def literal(self) -> str:
        """Serialize as ``R`` or ``R+R*sqrt(D)``."""
        if not self.b:
            return _rat(self.a)
        return f"{_rat(self.a)}+{_rat(self.b)}*sqrt({self.d})"

    def pretty(self) -> str:
        """Human-readable form, e.g. ``1/2-3*sqrt(3)``."""
        if not self.b:
            return _rat(self.a)
        surd = "sqrt(%d)" % self.d
        mag = abs(self.b)
        bpart = surd if mag == 1 else f"{_rat(mag)}*{surd}"
        if not self.a:
            return bpart if self.b > 0 else "-" + bpart
        op = "+" if self.b > 0 else "-"
        return f"{_rat(self.a)}{op}{bpart}"


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_scalar(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return ExactScalar(x)
    return NotImplemented


_RAT = r"-?\d+(?:/\d+)?"
_LITERAL = re.compile(rf"^({_RAT})(?:\+({_RAT})\*sqrt\((\d+)\))?$")


def parse_scalar(text: str) -> ExactScalar:
    """Parse ``R`` or ``R+R*sqrt(D)`` (whitespace-free) into an exact scalar."""
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"bad scalar literal {text!r}")
    try:
        a = Fraction(m.group(1))
        if m.group(2) is None:
            return ExactScalar(a)
        return ExactScalar(a, Fraction(m.group(2)), int(m.group(3)))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
