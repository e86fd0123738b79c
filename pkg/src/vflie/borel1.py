"""Derivations of k[x]: special polynomials and the small Borel subalgebras of the line."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .generate import Sl2Certificate, sl2_relations
from .poly import ArityError, Poly, is_scaled_linear_power, taylor_shift, vanishing_order
from .scalar import QQ, format_rational, qdiv
from .vecfield import VecField


class SpecialClass(str, enum.Enum):
    SPECIAL = "SPECIAL"
    NON_SPECIAL = "NON_SPECIAL"
    SPECIAL_OVER_CLOSURE = "SPECIAL_OVER_CLOSURE"


@dataclass(frozen=True)
class SpecialForm:
    """Classification of f; the witness (alpha, lam, mu, k) is set only for rational SPECIAL."""

    flag: SpecialClass
    alpha: object = None
    lam: object = None
    mu: object = None
    k: int | None = None

    @property
    def is_special(self) -> bool:
        return self.flag is not SpecialClass.NON_SPECIAL

    def reconstruct(self) -> Poly:
        if self.flag is not SpecialClass.SPECIAL:
            raise ValueError("no rational witness to reconstruct from")
        t = Poly.var(0, 1) - self.alpha
        return t**self.k * self.lam + t * self.mu

    def to_json(self) -> dict:
        out = {"class": self.flag.value}
        if self.flag is SpecialClass.SPECIAL:
            out["alpha"] = format_rational(self.alpha)
            out["lambda"] = format_rational(self.lam)
            out["mu"] = format_rational(self.mu)
            out["k"] = self.k
        return out


def _rational_sqrt(q):
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return qdiv(n, d)
    return None


def _check_line(f: Poly):
    if f.arity != 1:
        raise ArityError("a polynomial in one variable is required")
    if f.field is not QQ:
        raise ValueError("rational coefficients are required")
    if f.is_zero():
        raise ValueError("zero polynomial")


def special_form(f: Poly) -> SpecialForm:
    """Decide whether f = lam (x - alpha)^k + mu (x - alpha) for some alpha, lam, mu, k."""
    _check_line(f)
    k = f.degree()
    if k <= 1:
        return SpecialForm(SpecialClass.SPECIAL, 0, f.coeff((0,)), f.coeff((1,)), 0)
    if k == 2:
        c2, c1, c0 = f.coeff((2,)), f.coeff((1,)), f.coeff((0,))
        root = _rational_sqrt(c1 * c1 - 4 * c2 * c0)
        if root is None:
            return SpecialForm(SpecialClass.SPECIAL_OVER_CLOSURE, k=2)
        alpha = qdiv(root - c1, 2 * c2)
        return SpecialForm(SpecialClass.SPECIAL, alpha, c2, f.partial(0)(alpha), 2)
    # the second derivative of a special f is a scaled (k-2)-th power of (x - alpha)
    form = is_scaled_linear_power(f.partial(0).partial(0))
    if form is None:
        return SpecialForm(SpecialClass.NON_SPECIAL)
    alpha = form[1]
    g = taylor_shift(f, alpha)
    if set(e for (e,) in g.terms) - {1, k}:
        return SpecialForm(SpecialClass.NON_SPECIAL)
    return SpecialForm(SpecialClass.SPECIAL, alpha, g.coeff((k,)), g.coeff((1,)), k)


def borel_1d_dim1(p: Poly) -> bool:
    """Whether k p(x) d/dx is a one-dimensional Borel subalgebra, i.e. p is non-special."""
    return special_form(p).flag is SpecialClass.NON_SPECIAL


class BorelFormError(ValueError):
    pass


def borel_1d_dim2(alpha, k: int) -> tuple[VecField, VecField]:
    """The basis ((x - alpha)^k d/dx, (x - alpha) d/dx)."""
    if k == 1:
        raise BorelFormError("k = 1 gives a one-dimensional span")
    if k < 0:
        raise BorelFormError("k must be >= 0")
    t = Poly.var(0, 1) - alpha
    return VecField([t**k]), VecField([t])


def sl2_on_line() -> Sl2Certificate:
    x = Poly.var(0, 1)
    E, F, H = VecField([x * x]), VecField([Poly.constant(-1, 1)]), VecField([x * 2])
    return Sl2Certificate(E, H, F, sl2_relations(E, H, F))


def line_bracket(f: Poly, g: Poly) -> Poly:
    """Coefficient of [f d/dx, g d/dx] = (f g' - f' g) d/dx."""
    return f * g.partial(0) - f.partial(0) * g


def nested_orders(f1: Poly, f2: Poly) -> tuple:
    """Vanishing orders at 0 of g1 = [f1,[f1,f2]] and g2 = [f1,f2] (as coefficients)."""
    g2 = line_bracket(f1, f2)
    g1 = line_bracket(f1, g2)
    return vanishing_order(g1), vanishing_order(g2)
