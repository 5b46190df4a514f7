"""Exact arithmetic in K(t), viewed inside the Laurent series field K((t)).

A :class:`LaurentScalar` is ``t**shift * num / den`` with ``num`` and ``den``
polynomials over the base field K whose constant terms are nonzero, so the
t-adic valuation is simply ``shift``.  The representation is canonical: the
two polynomials are coprime and ``den(0) == 1``.

The base field is either the rationals (:data:`QQ`) or a prime field
(:func:`GF`).  Polynomial arithmetic is delegated to python-flint.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly, nmod, nmod_poly

from .errors import DivisionByZero, FieldMismatch, ScalarSyntaxError

__all__ = [
    "QQ",
    "GF",
    "Field",
    "RationalField",
    "PrimeField",
    "parse_field",
    "LaurentScalar",
    "parse_scalar",
    "valuation",
    "arith",
    "expand",
]


class Field:
    """Base field K.  Coefficients are flint ``fmpq`` or ``nmod`` values."""

    name: str
    characteristic: int

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (parse_field, (self.name,))

    @property
    def zero(self):
        return self.coeff(0)

    @property
    def one(self):
        return self.coeff(1)

    def scalar(self, value) -> "LaurentScalar":
        """Coerce an int, Fraction, coefficient, or string into K(t)."""
        if isinstance(value, LaurentScalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field} used with {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        c = self.coeff(value)
        if c == 0:
            return LaurentScalar.zero(self)
        return LaurentScalar._raw(self, 0, self.poly([c]), self.poly([1]))

    def t(self, k: int = 1) -> "LaurentScalar":
        return LaurentScalar._raw(self, k, self.poly([1]), self.poly([1]))


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def poly(self, coeffs):
        return fmpq_poly(list(coeffs))

    def coeff(self, x):
        if isinstance(x, fmpq):
            return x
        if isinstance(x, bool):
            return fmpq(int(x))
        if isinstance(x, int):
            return fmpq(x)
        if isinstance(x, Fraction):
            return fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return self.parse_coeff(x)
        if isinstance(x, nmod):
            raise FieldMismatch("prime-field coefficient used over Q")
        raise TypeError(f"cannot coerce {x!r} into Q")

    def parse_coeff(self, text: str):
        f = Fraction(text.strip())
        return fmpq(f.numerator, f.denominator)

    def format_coeff(self, c) -> str:
        return str(c)

    def is_negative(self, c) -> bool:
        return c < 0

    def to_fraction(self, c) -> Fraction:
        return Fraction(int(c.p), int(c.q))


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def poly(self, coeffs):
        return nmod_poly([int(c) for c in coeffs], self.p)

    def coeff(self, x):
        if isinstance(x, nmod):
            if x.modulus() != self.p:
                raise FieldMismatch(f"coefficient mod {x.modulus()} used over F_{self.p}")
            return x
        if isinstance(x, bool):
            return nmod(int(x), self.p)
        if isinstance(x, int):
            return nmod(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return nmod(x.numerator, self.p) / nmod(x.denominator, self.p)
        if isinstance(x, fmpq):
            return self.coeff(Fraction(int(x.p), int(x.q)))
        if isinstance(x, str):
            return self.parse_coeff(x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def parse_coeff(self, text: str):
        return self.coeff(Fraction(text.strip()))

    def format_coeff(self, c) -> str:
        return str(int(c))

    def is_negative(self, c) -> bool:
        return False

    def to_fraction(self, c) -> Fraction:
        return Fraction(int(c))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """``"Q"`` or ``"Fp:<prime>"``."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp|F|GF):?(\d+)", spec)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {spec!r}; expected Q or Fp:<prime>")


def _low_degree(poly) -> int:
    for i, c in enumerate(poly.coeffs()):
        if c != 0:
            return i
    raise ValueError("zero polynomial has no low degree")


class LaurentScalar:
    """An element of K(t) inside K((t)), in canonical form."""

    __slots__ = ("field", "shift", "num", "den", "_hash")

    @classmethod
    def _raw(cls, field, shift, num, den):
        self = object.__new__(cls)
        self.field = field
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def zero(cls, field: Field) -> "LaurentScalar":
        return cls._raw(field, 0, field.poly([]), field.poly([1]))

    @classmethod
    def make(cls, field: Field, shift: int, num, den=None) -> "LaurentScalar":
        """Normalize ``t**shift * num / den`` (flint polys or coefficient lists)."""
        if not hasattr(num, "coeffs"):
            num = field.poly(num)
        if den is None:
            den = field.poly([1])
        elif not hasattr(den, "coeffs"):
            den = field.poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return cls.zero(field)
        vn = _low_degree(num)
        if vn:
            num = num.right_shift(vn)
            shift += vn
        vd = _low_degree(den)
        if vd:
            den = den.right_shift(vd)
            shift -= vd
        if den.degree() > 0 and num.degree() > 0:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        c = den[0]
        if c != 1:
            inv = field.one / c
            num = num * inv
            den = den * inv
        return cls._raw(field, shift, num, den)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def valuation(self):
        return math.inf if self.num.is_zero() else self.shift

    def is_integral(self) -> bool:
        return self.num.is_zero() or self.shift >= 0

    def is_polynomial(self) -> bool:
        """True when the denominator is 1 (a Laurent polynomial)."""
        return self.den.degree() == 0

    def residue(self):
        """Image in K under t -> 0; requires valuation >= 0."""
        if self.num.is_zero() or self.shift > 0:
            return self.field.zero
        if self.shift < 0:
            raise ValueError("residue of a non-integral scalar")
        return self.num[0]

    def leading_coefficient(self):
        """Coefficient of t**valuation in the expansion."""
        if self.num.is_zero():
            return self.field.zero
        return self.num[0]

    def expand(self, lo: int, hi: int) -> list:
        """Coefficients of t**lo .. t**hi of the Laurent expansion."""
        if lo > hi:
            raise ValueError("expand requires lo <= hi")
        zero = self.field.zero
        if self.num.is_zero():
            return [zero] * (hi - lo + 1)
        n = hi - self.shift + 1
        series = _series_quotient(self.num, self.den, n, zero) if n > 0 else []
        out = []
        for k in range(lo, hi + 1):
            j = k - self.shift
            out.append(series[j] if 0 <= j < len(series) else zero)
        return out

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, fmpq, nmod)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        m = min(self.shift, other.shift)
        a = self.num.left_shift(self.shift - m) if self.shift > m else self.num
        b = other.num.left_shift(other.shift - m) if other.shift > m else other.num
        if self.den.degree() == 0 and other.den.degree() == 0:
            return LaurentScalar.make(self.field, m, a + b, self.den)
        if self.den == other.den:
            return LaurentScalar.make(self.field, m, a + b, self.den)
        return LaurentScalar.make(
            self.field, m, a * other.den + b * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw(self.field, self.shift, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return LaurentScalar.zero(self.field)
        shift = self.shift + other.shift
        if self.den.degree() == 0 and other.den.degree() == 0:
            return LaurentScalar._raw(self.field, shift, self.num * other.num, self.den)
        return LaurentScalar.make(
            self.field, shift, self.num * other.num, self.den * other.den
        )

    __rmul__ = __mul__

    def inverse(self) -> "LaurentScalar":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return LaurentScalar.make(self.field, -self.shift, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZero("division by zero scalar")
        if self.num.is_zero():
            return self
        return LaurentScalar.make(
            self.field, self.shift - other.shift, self.num * other.den, self.den * other.num
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.scalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return (
                self.field == other.field
                and self.shift == other.shift
                and self.num == other.num
                and self.den == other.den
            )
        if isinstance(other, (int, Fraction, fmpq, nmod)):
            try:
                return self == self.field.scalar(other)
            except (FieldMismatch, DivisionByZero):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    self.field,
                    self.shift,
                    tuple(str(c) for c in self.num.coeffs()),
                    tuple(str(c) for c in self.den.coeffs()),
                )
            )
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"LaurentScalar({str(self)!r}, {self.field.name})"

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (parse_scalar, (str(self), self.field))


def _series_quotient(num, den, n, zero):
    """First n power-series coefficients of num/den, den(0) == 1."""
    a = num.coeffs()
    d = den.coeffs()
    q = []
    for k in range(n):
        acc = a[k] if k < len(a) else zero
        for j in range(1, min(k, len(d) - 1) + 1):
            acc = acc - d[j] * q[k - j]
        q.append(acc)
    return q


# -- printing -----------------------------------------------------------


def _format_terms(field, terms) -> str:
    """terms: (exponent, coefficient) pairs in descending exponent order."""
    parts = []
    for i, (e, c) in enumerate(terms):
        neg = field.is_negative(c)
        mag = -c if neg else c
        if e == 0:
            body = field.format_coeff(mag)
        elif mag == 1:
            body = "t" if e == 1 else f"t^{e}"
        else:
            body = f"{field.format_coeff(mag)}*t^{e}"
        if i == 0:
            if neg:
                # grammar requires a signed RAT, never a bare "-t"
                body = f"-{field.format_coeff(mag)}" if e == 0 else f"-{field.format_coeff(mag)}*t^{e}"
            parts.append(body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _poly_terms(poly, shift):
    return [
        (i + shift, c) for i, c in reversed(list(enumerate(poly.coeffs()))) if c != 0
    ]


def format_scalar(x: LaurentScalar) -> str:
    if x.num.is_zero():
        return "0"
    top = _format_terms(x.field, _poly_terms(x.num, x.shift))
    if x.den.degree() == 0:
        return top
    return f"({top})/({_format_terms(x.field, _poly_terms(x.den, 0))})"


# -- parsing ------------------------------------------------------------

_INT = re.compile(r"[+-]?\d+")
_RAT = re.compile(r"\d+(?:/\d+)?")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, message):
        raise ScalarSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def exponent(self):
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected integer exponent")
        self.pos = m.end()
        return int(m.group())

    def t_power(self):
        # at 't'
        self.pos += 1
        if self.peek() == "^":
            self.pos += 1
            return self.exponent()
        return 1

    def term(self, sign):
        """Returns (exponent, coefficient)."""
        ch = self.peek()
        if ch == "t":
            return self.t_power(), self.field.coeff(sign)
        m = _RAT.match(self.text, self.pos)
        if not m:
            self.error("expected a term")
        self.pos = m.end()
        value = Fraction(m.group())
        coeff = self.field.coeff(value * sign)
        if self.peek() == "*":
            self.pos += 1
            if self.peek() != "t":
                self.error("expected 't' after '*'")
            return self.t_power(), coeff
        return 0, coeff

    def laurent_poly(self):
        terms = []
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        terms.append(self.term(sign))
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            terms.append(self.term(sign))
        lo = min(e for e, _ in terms)
        hi = max(e for e, _ in terms)
        coeffs = [self.field.zero] * (hi - lo + 1)
        for e, c in terms:
            coeffs[e - lo] = coeffs[e - lo] + c
        return lo, self.field.poly(coeffs)

    def parse(self) -> LaurentScalar:
        if self.peek() == "(":
            self.pos += 1
            s1, top = self.laurent_poly()
            self.expect(")")
            if self.peek() == "/":
                self.pos += 1
                self.expect("(")
                start = self.pos
                s2, bottom = self.laurent_poly()
                self.expect(")")
                if bottom.is_zero():
                    self.pos = start
                    self.error("division by zero denominator")
            else:
                s2, bottom = 0, self.field.poly([1])
        else:
            s1, top = self.laurent_poly()
            s2, bottom = 0, self.field.poly([1])
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return LaurentScalar.make(self.field, s1 - s2, top, bottom)


def parse_scalar(text: str, field: Field = QQ) -> LaurentScalar:
    """Parse the scalar grammar, e.g. ``"t^-1 + 1"`` or ``"(1)/(1 - t)"``."""
    if not isinstance(text, str) or not text.strip():
        raise ScalarSyntaxError("empty scalar expression", text or "", 0)
    return _Parser(text, field).parse()


def valuation(x: LaurentScalar):
    """t-adic valuation; ``math.inf`` for zero."""
    return x.valuation()


def arith(x: LaurentScalar, y: LaurentScalar, op: str) -> LaurentScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def expand(x: LaurentScalar, lo: int, hi: int) -> list:
    return x.expand(lo, hi)
