"""Polynomial vector fields (derivations of k[x_1, ..., x_n]).

A :class:`VecField` is the derivation ``sum_i f_i d/dx_i`` stored as the tuple
of its coefficient polynomials.  On the plane the fields are bigraded by
``bideg(x^i y^j d/dx) = (i-1, j)`` and ``bideg(x^i y^j d/dy) = (i, j-1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .poly import ArityError, Poly
from .scalar import QQ, FieldMismatchError, sdiv


class VecField:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ArityError("a vector field needs at least one coefficient")
        n = len(coeffs)
        field = coeffs[0].field
        for c in coeffs:
            if c.arity != n:
                raise ArityError(f"coefficient arity {c.arity} does not match {n} directions")
            if c.field is not field:
                raise FieldMismatchError("coefficients live in different fields")
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _make(cls, coeffs):
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, arity: int, field=QQ) -> "VecField":
        return cls._make(tuple(Poly.zero(arity, field) for _ in range(arity)))

    @classmethod
    def from_terms(cls, terms, arity: int, field=QQ) -> "VecField":
        """Build from ``{(direction, exponents): coeff}``."""
        parts = [{} for _ in range(arity)]
        for (i, exps), c in terms.items():
            parts[i][tuple(exps)] = c
        return cls(Poly(p, arity, field) for p in parts)

    @classmethod
    def monomial(cls, direction: int, exps, c=1, field=QQ) -> "VecField":
        exps = tuple(exps)
        return cls.from_terms({(direction, exps): c}, len(exps), field)

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    @property
    def field(self):
        return self.coeffs[0].field

    def __getitem__(self, i) -> Poly:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def degree(self) -> int:
        """Largest total degree of a coefficient; -1 for the zero field."""
        return max(c.degree() for c in self.coeffs)

    def terms(self):
        """Iterate ``((direction, exponents), coeff)``."""
        for i, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                yield (i, e), v

    def coordinates(self) -> dict:
        """Sparse coordinate vector keyed by (degree, exponents, direction)."""
        return {(sum(e), e, i): v for (i, e), v in self.terms()}

    @classmethod
    def from_coordinates(cls, coords: dict, arity: int, field=QQ) -> "VecField":
        return cls.from_terms({(i, e): v for (_, e, i), v in coords.items()}, arity, field)

    def __eq__(self, other):
        if isinstance(other, VecField):
            return self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"VecField({str(self)!r})"

    def __str__(self):
        from .parse import format_vecfield

        return format_vecfield(self)

    def _check(self, other: "VecField"):
        if not isinstance(other, VecField):
            raise TypeError(f"expected a VecField, got {type(other).__name__}")
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
        if self.field is not other.field:
            raise FieldMismatchError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        return VecField._make(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return VecField._make(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return VecField._make(tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        """Scalar multiple, or a polynomial multiple ``p * X`` when given a Poly."""
        if isinstance(c, VecField):
            return NotImplemented
        return VecField._make(tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def divide_scalar(self, c) -> "VecField":
        return VecField._make(tuple(a.divide_scalar(c) for a in self.coeffs))

    def promote(self, field) -> "VecField":
        return VecField._make(tuple(a.promote(field) for a in self.coeffs))

    # -- derivation calculus -----------------------------------------------

    def apply(self, p: Poly) -> Poly:
        """The derivation applied to ``p``: sum_i f_i dp/dx_i."""
        if p.arity != self.arity:
            raise ArityError(f"arity mismatch: field {self.arity}, polynomial {p.arity}")
        if p.field is not self.field:
            raise FieldMismatchError("field mismatch")
        out = Poly.zero(self.arity, self.field)
        for i, f in enumerate(self.coeffs):
            if f:
                dp = p.partial(i)
                if dp:
                    out = out + f * dp
        return out

    def bracket(self, other: "VecField") -> "VecField":
        self._check(other)
        return VecField._make(
            tuple(self.apply(g) - other.apply(f) for f, g in zip(self.coeffs, other.coeffs))
        )

    def divergence(self) -> Poly:
        out = Poly.zero(self.arity, self.field)
        for i, f in enumerate(self.coeffs):
            out = out + f.partial(i)
        return out

    def proportionality(self, other: "VecField"):
        """The scalar c with self == c * other, or None."""
        if other.is_zero():
            return None
        key, val = next(iter(other.terms()))
        i, e = key
        c = sdiv(self.coeffs[i].coeff(e), val)
        return c if self == other * c else None


def bracket(X: VecField, Y: VecField) -> VecField:
    return X.bracket(Y)


def apply(X: VecField, p: Poly) -> Poly:
    return X.apply(p)


def divergence(X: VecField) -> Poly:
    return X.divergence()


# ---------------------------------------------------------------------------
# bigrading on the plane


def term_bidegree(direction: int, exps) -> tuple[int, int]:
    i, j = exps
    return (i - 1, j) if direction == 0 else (i, j - 1)


def bidegree_components(X: VecField) -> dict[tuple[int, int], VecField]:
    if X.arity != 2:
        raise ArityError("bidegrees are defined on the plane only")
    groups: dict = {}
    for (i, e), c in X.terms():
        groups.setdefault(term_bidegree(i, e), {})[(i, e)] = c
    return {b: VecField.from_terms(t, 2, X.field) for b, t in sorted(groups.items())}


def bidegree(X: VecField) -> tuple[int, int] | None:
    """The bidegree of a nonzero homogeneous field on the plane, else None."""
    comps = bidegree_components(X)
    if len(comps) != 1:
        return None
    return next(iter(comps))


# ---------------------------------------------------------------------------
# homogeneous generators of the divergence-free plane fields


def gen_dplus(n: int, field=QQ) -> VecField:
    """y^n d/dx."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return VecField.monomial(0, (0, n), 1, field)


def gen_dminus(m: int, field=QQ) -> VecField:
    """x^m d/dy."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return VecField.monomial(1, (m, 0), 1, field)


def gen_dab(a: int, b: int, field=QQ) -> VecField:
    """x^a y^b ((b+1) x d/dx - (a+1) y d/dy)."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    return VecField.from_terms({(0, (a + 1, b)): b + 1, (1, (a, b + 1)): -(a + 1)}, 2, field)


@dataclass(frozen=True, order=True)
class Gen:
    """Descriptor of a homogeneous generator: ('plus', n), ('minus', m) or ('ab', a, b)."""

    kind: str
    params: tuple

    def __post_init__(self):
        expected = {"plus": 1, "minus": 1, "ab": 2}.get(self.kind)
        if expected is None:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if len(self.params) != expected or any(p < 0 for p in self.params):
            raise ValueError(f"invalid parameters {self.params} for {self.kind}")

    @property
    def bidegree(self) -> tuple[int, int]:
        if self.kind == "plus":
            return (-1, self.params[0])
        if self.kind == "minus":
            return (self.params[0], -1)
        return tuple(self.params)

    def field(self, field=QQ) -> VecField:
        if self.kind == "plus":
            return gen_dplus(self.params[0], field)
        if self.kind == "minus":
            return gen_dminus(self.params[0], field)
        return gen_dab(*self.params, field=field)

    def __str__(self):
        if self.kind == "ab":
            return f"d_{{{self.params[0]},{self.params[1]}}}"
        sign = "+" if self.kind == "plus" else "-"
        return f"d{sign}_{self.params[0]}"


def dplus(n: int) -> Gen:
    return Gen("plus", (n,))


def dminus(m: int) -> Gen:
    return Gen("minus", (m,))


def dab(a: int, b: int) -> Gen:
    return Gen("ab", (a, b))


def all_generators(max_param: int) -> list[Gen]:
    gens = [dplus(n) for n in range(max_param + 1)]
    gens += [dminus(m) for m in range(max_param + 1)]
    gens += [dab(a, b) for a in range(max_param + 1) for b in range(max_param + 1)]
    return gens


def _neg(res):
    return None if res is None else (-res[0], res[1])


def commutation_table(lhs: Gen, rhs: Gen):
    """Closed-form bracket of two generators: ``(coefficient, Gen)`` or None for zero."""
    k1, k2 = lhs.kind, rhs.kind
    if k1 == k2 and k1 in ("plus", "minus"):
        return None
    if k1 == "plus" and k2 == "minus":
        (n,), (m,) = lhs.params, rhs.params
        if n == 0 and m == 0:
            return None
        if n == 0:
            return (m, dminus(m - 1))
        if m == 0:
            # [d-_0, d+_n] = n d+_{n-1}
            return (-n, dplus(n - 1))
        return (-1, dab(m - 1, n - 1))
    if k1 == "minus" and k2 == "plus":
        return _neg(commutation_table(rhs, lhs))
    if k1 == "plus" and k2 == "ab":
        (n,), (a, b) = lhs.params, rhs.params
        if a == 0:
            return (n + b + 1, dplus(n + b))
        return (a + 1, dab(a - 1, n + b))
    if k1 == "minus" and k2 == "ab":
        (m,), (a, b) = lhs.params, rhs.params
        if b == 0:
            return (-(m + a + 1), dminus(m + a))
        return (b + 1, dab(m + a, b - 1))
    if k1 == "ab" and k2 != "ab":
        return _neg(commutation_table(rhs, lhs))
    (a, b), (a2, b2) = lhs.params, rhs.params
    det = (a2 + 1) * (b + 1) - (a + 1) * (b2 + 1)
    if det == 0:
        return None
    return (det, dab(a + a2, b + b2))


def table_check(max_param: int = 8):
    """Compare the closed-form table against the generic bracket on all pairs.

    Returns ``(number_checked, failures)`` where failures lists the offending pairs.
    """
    gens = all_generators(max_param)
    fields = {g: g.field() for g in gens}
    failures = []
    for g in gens:
        for h in gens:
            res = commutation_table(g, h)
            if res is None:
                expected = VecField.zero(2)
            else:
                coeff, gen = res
                expected = (fields.get(gen) or gen.field()) * coeff
            if fields[g].bracket(fields[h]) != expected:
                failures.append((g, h))
    return len(gens) ** 2, failures


# ---------------------------------------------------------------------------
# polynomial automorphisms and the Ad action


class PolyAutomorphism:
    """A polynomial automorphism given with its inverse (checked on construction).

    ``forward[i]`` is the image of the coordinate x_i, i.e. the map is
    p -> p(forward) on functions.
    """

    def __init__(self, forward, inverse, check: bool = True):
        self.forward = tuple(forward)
        self.inverse = tuple(inverse)
        n = len(self.forward)
        if len(self.inverse) != n:
            raise ArityError("forward and inverse must have the same length")
        for p in self.forward + self.inverse:
            if p.arity != n:
                raise ArityError("automorphism components must have arity n")
        if check:
            coords = [Poly.var(i, n, self.field) for i in range(n)]
            fwd_inv = [p.substitute(self.inverse) for p in self.forward]
            inv_fwd = [p.substitute(self.forward) for p in self.inverse]
            if fwd_inv != coords or inv_fwd != coords:
                raise ValueError("the given inverse does not invert the map")

    @property
    def arity(self) -> int:
        return len(self.forward)

    @property
    def field(self):
        return self.forward[0].field

    def pull(self, p: Poly) -> Poly:
        """p o phi."""
        return p.substitute(self.forward)

    def compose(self, other: "PolyAutomorphism") -> "PolyAutomorphism":
        """self o other."""
        fwd = [p.substitute(other.forward) for p in self.forward]
        inv = [p.substitute(self.inverse) for p in other.inverse]
        return PolyAutomorphism(fwd, inv, check=False)

    def inverted(self) -> "PolyAutomorphism":
        return PolyAutomorphism(self.inverse, self.forward, check=False)

    @classmethod
    def identity(cls, n: int, field=QQ):
        coords = [Poly.var(i, n, field) for i in range(n)]
        return cls(coords, coords, check=False)

    @classmethod
    def diagonal(cls, scalars, field=QQ):
        n = len(scalars)
        fwd = [Poly.var(i, n, field) * s for i, s in enumerate(scalars)]
        inv = [Poly.var(i, n, field).divide_scalar(s) for i, s in enumerate(scalars)]
        return cls(fwd, inv)

    @classmethod
    def twist(cls, field=QQ):
        x, y = Poly.var(0, 2, field), Poly.var(1, 2, field)
        return cls([y, x], [y, x])

    @classmethod
    def cyclic_generator(cls, d: int, e: int):
        """(x, y) -> (zeta^e x, zeta y) over Q(zeta_d)."""
        from .scalar import cyclotomic_field

        F = cyclotomic_field(d)
        x, y = Poly.var(0, 2, F), Poly.var(1, 2, F)
        fwd = [x * F.zeta_power(e), y * F.zeta]
        inv = [x * F.zeta_power(-e), y * F.zeta_power(-1)]
        return cls(fwd, inv)

    @classmethod
    def jonquieres_plus(cls, alpha, beta, q: Poly):
        """(x, y) -> (alpha x + q(y), beta y) where q is univariate."""
        F = q.field
        x, y = Poly.var(0, 2, F), Poly.var(1, 2, F)
        fwd = [x * alpha + q.substitute([y]), y * beta]
        y_back = y.divide_scalar(beta)
        inv = [(x - q.substitute([y_back])).divide_scalar(alpha), y_back]
        return cls(fwd, inv)


def pushforward(phi: PolyAutomorphism, X: VecField) -> VecField:
    """phi_* X, acting on functions by p -> X(p o phi) o phi^{-1}."""
    if phi.arity != X.arity:
        raise ArityError("arity mismatch")
    if phi.field is not X.field:
        raise FieldMismatchError("field mismatch")
    return VecField(X.apply(f).substitute(phi.inverse) for f in phi.forward)


# ---------------------------------------------------------------------------
# local finiteness


class Finiteness(enum.Enum):
    BOUNDED = "BOUNDED"
    EXCEEDED = "EXCEEDED"


@dataclass(frozen=True)
class FinitenessReport:
    verdict: Finiteness
    dimension: int
    max_degree: int
    iterations: int
    reason: str


def local_finiteness_probe(X: VecField, seeds, degree_bound: int = 40, iteration_bound: int = 40):
    """Semi-decision of local finiteness on the given seeds.

    BOUNDED means the span of all iterates X^k(seed) closed up within the bounds.
    EXCEEDED means a bound was hit first; ``reason`` says which one.
    """
    from .linalg import Echelon

    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")

    def key(p):
        return {(sum(e), e): c for e, c in p.terms.items()}

    span = Echelon()
    frontier = [s for s in seeds if span.add(key(s))]
    max_deg = max(s.degree() for s in seeds)
    it = 0
    while frontier:
        if it >= iteration_bound:
            return FinitenessReport(Finiteness.EXCEEDED, span.rank, max_deg, it, "iteration bound")
        it += 1
        nxt = []
        for p in frontier:
            q = X.apply(p)
            if q.degree() > degree_bound:
                return FinitenessReport(
                    Finiteness.EXCEEDED, span.rank, q.degree(), it, "degree bound"
                )
            max_deg = max(max_deg, q.degree())
            if span.add(key(q)):
                nxt.append(q)
        frontier = nxt
    return FinitenessReport(Finiteness.BOUNDED, span.rank, max_deg, it, "span closed")
