"""Exact scalars: the rationals and the cyclotomic fields Q(zeta_d).

Rationals are plain ``int`` or :class:`fractions.Fraction` values; integers are
kept as ``int`` whenever possible because they are much cheaper and compare
and hash equal to the corresponding ``Fraction``.  Elements of Q(zeta_d) are
:class:`Cyclotomic` residues modulo the d-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC


class FieldMismatchError(TypeError):
    """Operands live in different (incompatible) fields."""


def _norm(q):
    """Collapse an integral Fraction to int."""
    if type(q) is Fraction and q.denominator == 1:
        return q.numerator
    return q


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def qdiv(a, b):
    """Exact rational division that never produces a float."""
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return _norm(Fraction(a) / b)


def sdiv(a, b):
    """Exact division for any scalar (rational or cyclotomic)."""
    if isinstance(a, Cyclotomic) or isinstance(b, Cyclotomic):
        if not isinstance(a, Cyclotomic):
            a = b.field(a)
        return a / b
    return qdiv(a, b)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str):
    return _norm(Fraction(text.strip()))


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _int_poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _int_poly_exact_div(num, den):
    """Divide by a monic integer polynomial; the division must be exact."""
    num = list(num)
    n = len(den) - 1
    quot = [0] * (len(num) - n)
    for i in range(len(num) - 1, n - 1, -1):
        c = num[i]
        if c:
            quot[i - n] = c
            for j, b in enumerate(den):
                num[i - n + j] -= c * b
    if any(num[:n]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_coefficients(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first."""
    if d < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [-1] + [0] * (d - 1) + [1]
    den = [1]
    for k in range(1, d):
        if d % k == 0:
            den = _int_poly_mul(den, list(cyclotomic_coefficients(k)))
    return tuple(_int_poly_exact_div(num, den))


def cyclotomic_polynomial(d: int):
    """Phi_d as a univariate :class:`~vflie.poly.Poly` over Q."""
    from .poly import Poly

    coeffs = cyclotomic_coefficients(d)
    return Poly({(i,): c for i, c in enumerate(coeffs) if c}, 1)


def totient(d: int) -> int:
    return len(cyclotomic_coefficients(d)) - 1


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """The field Q.  Elements are ``int`` or ``Fraction``."""

    order = 1
    degree = 1

    def __call__(self, x):
        if isinstance(x, Cyclotomic):
            if not x.is_rational():
                raise FieldMismatchError(f"{x!r} is not rational")
            return x.coeffs[0]
        if isinstance(x, bool) or not isinstance(x, (_RationalABC, str)):
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, str):
            return parse_rational(x)
        return _norm(Fraction(x))

    zero = 0
    one = 1

    def contains(self, x) -> bool:
        return is_rational(x)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


class CyclotomicField:
    """Q(zeta_d) presented as Q[t] / Phi_d(t)."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.order = order
        self.modulus = cyclotomic_coefficients(order)
        self.degree = len(self.modulus) - 1

    def __call__(self, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            if x.field is not self:
                if x.is_rational():
                    return self(x.coeffs[0])
                raise FieldMismatchError(
                    f"cannot move an element of Q(zeta_{x.field.order}) into Q(zeta_{self.order})"
                )
            return x
        return Cyclotomic._make(self, (QQ(x),) + (0,) * (self.degree - 1))

    @property
    def zero(self) -> "Cyclotomic":
        return self(0)

    @property
    def one(self) -> "Cyclotomic":
        return self(1)

    @property
    def zeta(self) -> "Cyclotomic":
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "Cyclotomic":
        return _zeta_power(self.order, k % self.order)

    def from_coeffs(self, coeffs) -> "Cyclotomic":
        """Reduce an arbitrary-length coefficient sequence modulo Phi_d."""
        return Cyclotomic._make(self, self._reduce([QQ(c) for c in coeffs]))

    def contains(self, x) -> bool:
        return isinstance(x, Cyclotomic) and x.field is self

    def _reduce(self, coeffs):
        n = self.degree
        mod = self.modulus
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, n - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(n):
                    if mod[j]:
                        coeffs[i - n + j] -= c * mod[j]
        coeffs = coeffs[:n]
        coeffs += [0] * (n - len(coeffs))
        return tuple(_norm(c) for c in coeffs)

    def __repr__(self):
        return f"QQ(zeta_{self.order})"

    def __reduce__(self):
        return (cyclotomic_field, (self.order,))


@lru_cache(maxsize=None)
def cyclotomic_field(d: int) -> CyclotomicField:
    return CyclotomicField(d)


@lru_cache(maxsize=None)
def _zeta_power(d: int, k: int) -> "Cyclotomic":
    field = cyclotomic_field(d)
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return field.from_coeffs(coeffs)


def field_of(x):
    return x.field if isinstance(x, Cyclotomic) else QQ


# ---------------------------------------------------------------------------


def _qpoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_qpoly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = qdiv(a[-1], lead)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
    return _qpoly_trim(q), a


def _qpoly_sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return _qpoly_trim(out)


class Cyclotomic:
    """An element of Q(zeta_d); immutable and canonically reduced."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        field = cyclotomic_field(order)
        obj = field.from_coeffs(coeffs)
        self.field = field
        self.coeffs = obj.coeffs
        self._hash = None

    @classmethod
    def _make(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @property
    def order(self) -> int:
        return self.field.order

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is self.field:
                return other
            if other.is_rational():
                return self.field(other.coeffs[0])
            if self.is_rational():
                return None
            raise FieldMismatchError(
                f"mixed cyclotomic orders {self.field.order} and {other.field.order}"
            )
        if is_rational(other):
            return self.field(other)
        return None

    def _promote_pair(self, other):
        # handles a rational self against a foreign-order other
        if isinstance(other, Cyclotomic) and other.field is not self.field and self.is_rational():
            return other.field(self.coeffs[0]), other
        o = self._coerce(other)
        if o is None:
            return None, None
        return self, o

    def __add__(self, other):
        a, b = self._promote_pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._make(a.field, tuple(_norm(x + y) for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.field, tuple(-x for x in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._promote_pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._make(a.field, tuple(_norm(x - y) for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if is_rational(other):
            return Cyclotomic._make(self.field, tuple(_norm(x * other) for x in self.coeffs))
        a, b = self._promote_pair(other)
        if a is None:
            return NotImplemented
        p, q = a.coeffs, b.coeffs
        prod = [0] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if x:
                for j, y in enumerate(q):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._make(a.field, a.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_d."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field(qdiv(1, self.coeffs[0]))
        # invariant: s_i * self = r_i (mod Phi_d)
        r0, r1 = list(self.field.modulus), _qpoly_trim(list(self.coeffs))
        s0, s1 = [0], [1]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, [_norm(c) for c in _int_free_mul(q, s1)])
        unit = r1[0]
        return self.field.from_coeffs([qdiv(c, unit) for c in s1])

    def __truediv__(self, other):
        a, b = self._promote_pair(other)
        if a is None:
            return NotImplemented
        if not b:
            raise ZeroDivisionError("division by zero")
        if b.is_rational():
            c = b.coeffs[0]
            return Cyclotomic._make(a.field, tuple(qdiv(x, c) for x in a.coeffs))
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is self.field:
                return self.coeffs == other.coeffs
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        if is_rational(other):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash((self.field.order, self.coeffs))
        return self._hash

    def __repr__(self):
        from .parse import format_cyclotomic

        return f"Cyclotomic({self.field.order}, {format_cyclotomic(self)!r})"

    def __str__(self):
        from .parse import format_cyclotomic

        return format_cyclotomic(self)


def _int_free_mul(p, q):
    out = [0] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out
