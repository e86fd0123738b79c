"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from operator import add

from .scalar import QQ, Cyclotomic, CyclotomicField, FieldMismatchError, sdiv

INFINITE = float("inf")


class ArityError(ValueError):
    pass


def monomial_key(exps: tuple[int, ...]):
    """Graded-lex sort key: total degree first, then lexicographic (x > y > z)."""
    return (sum(exps), exps)


class Poly:
    """A polynomial in ``arity`` variables: a map exponent-tuple -> nonzero scalar.

    Instances are immutable.  The field is either :data:`~vflie.scalar.QQ` or a
    :class:`~vflie.scalar.CyclotomicField`; mixing fields is an error, use
    :meth:`promote` to move a rational polynomial into Q(zeta_d).
    """

    __slots__ = ("arity", "field", "terms", "_hash")

    def __init__(self, terms=None, arity: int = 1, field=QQ):
        self.arity = arity
        self.field = field
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise ArityError(f"bad exponent vector {exps} for arity {arity}")
            c = field(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c if exps in clean else c
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _make(cls, arity, field, terms):
        obj = object.__new__(cls)
        obj.arity = arity
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, arity: int, field=QQ) -> "Poly":
        return cls._make(arity, field, {})

    @classmethod
    def constant(cls, c, arity: int, field=QQ) -> "Poly":
        c = field(c)
        return cls._make(arity, field, {(0,) * arity: c} if c else {})

    @classmethod
    def one(cls, arity: int, field=QQ) -> "Poly":
        return cls.constant(1, arity, field)

    @classmethod
    def var(cls, i: int, arity: int, field=QQ) -> "Poly":
        if not 0 <= i < arity:
            raise ArityError(f"variable index {i} out of range for arity {arity}")
        exps = [0] * arity
        exps[i] = 1
        return cls._make(arity, field, {tuple(exps): field(1)})

    @classmethod
    def monomial(cls, exps, c=1, field=QQ) -> "Poly":
        exps = tuple(exps)
        return cls({exps: c}, len(exps), field)

    @classmethod
    def from_coeffs(cls, coeffs, field=QQ) -> "Poly":
        """Univariate polynomial from a low-to-high coefficient list."""
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, 1, field)

    # -- basic protocol ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, exps) -> object:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.arity, 0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.arity: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r}, arity={self.arity}, field={self.field!r})"

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
        if self.field is not other.field:
            raise FieldMismatchError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.arity, self.field)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = v
            else:
                s = s + v
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return Poly._make(self.arity, self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.arity, self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return Poly.zero(self.arity, self.field)
        return Poly._make(self.arity, self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._make(self.arity, self.field, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.arity, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_scalar(self, c) -> "Poly":
        return Poly._make(self.arity, self.field, {k: sdiv(v, c) for k, v in self.terms.items()})

    def promote(self, field) -> "Poly":
        """Explicit change of coefficient field (Q -> Q(zeta_d))."""
        if field is self.field:
            return self
        return Poly({k: field(v) for k, v in self.terms.items()}, self.arity, field)

    # -- calculus / substitution -------------------------------------------

    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.arity:
            raise ArityError(f"variable index {i} out of range for arity {self.arity}")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Poly._make(self.arity, self.field, out)

    def substitute(self, images) -> "Poly":
        """Replace variable i by ``images[i]`` and expand."""
        images = list(images)
        if len(images) != self.arity:
            raise ArityError(f"expected {self.arity} images, got {len(images)}")
        if not images:
            return self
        arity, field = images[0].arity, images[0].field
        for im in images:
            if im.arity != arity or im.field is not field:
                raise ArityError("substitution images must share arity and field")
        if self.field is not field:
            raise FieldMismatchError(f"field mismatch: {self.field!r} vs {field!r}")
        powers = [[Poly.one(arity, field)] for _ in images]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * images[i])
            return cache[k]

        result = Poly.zero(arity, field)
        for e, c in self.terms.items():
            term = Poly.constant(c, arity, field)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def evaluate(self, values):
        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def __call__(self, *values):
        return self.evaluate(values)

    def univariate_coeffs(self) -> list:
        """Low-to-high coefficient list of a univariate polynomial."""
        if self.arity != 1:
            raise ArityError("univariate polynomial expected")
        out = [0] * (self.degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def leading_coeff(self):
        if not self.terms:
            return 0
        return self.sorted_terms()[0][1]


def taylor_shift(f: Poly, alpha) -> Poly:
    """f(x + alpha) for univariate f."""
    if f.arity != 1:
        raise ArityError("univariate polynomial expected")
    x = Poly.var(0, 1, f.field)
    return f.substitute([x + alpha])


def vanishing_order(f: Poly, alpha=0):
    """Multiplicity of ``alpha`` as a root of univariate ``f``; INFINITE for f = 0."""
    if f.arity != 1:
        raise ArityError("univariate polynomial expected")
    if f.is_zero():
        return INFINITE
    g = f if not alpha else taylor_shift(f, alpha)
    return min(e[0] for e in g.terms)


def is_scaled_linear_power(f: Poly):
    """Return (c, alpha, k) with f = c (x - alpha)^k, or None if no such form exists.

    For constants the convention alpha = 0 is used.
    """
    if f.arity != 1:
        raise ArityError("univariate polynomial expected")
    if f.is_zero():
        raise ValueError("zero polynomial")
    k = f.degree()
    c = f.coeff((k,))
    if k == 0:
        return (c, f.field.zero if isinstance(f.field, CyclotomicField) else 0, 0)
    # (x - alpha)^k has x^(k-1) coefficient -k * alpha
    alpha = sdiv(-f.coeff((k - 1,)), c * k)
    x = Poly.var(0, 1, f.field)
    if (x - alpha) ** k * c == f:
        return (c, alpha, k)
    return None
