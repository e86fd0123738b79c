"""Spans of vector fields, derived series, and the catalog of named subalgebras."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product

from . import lattice
from .lattice import LatticeParams
from .linalg import Echelon
from .poly import ArityError, Poly
from .scalar import QQ, FieldMismatchError
from .vecfield import (
    VecField,
    bidegree_components,
    gen_dab,
    gen_dminus,
    gen_dplus,
)


class SpanBasis:
    """The linear span of a finite set of vector fields, kept in reduced echelon form.

    Coordinates are indexed by (degree, exponents, direction) so the reduced
    basis is ordered graded-lex on monomials, then by direction.
    """

    def __init__(self, arity: int, field=QQ):
        self.arity = arity
        self.field = field
        self.elements: list[VecField] = []
        self.reduced = Echelon()
        self.discards = 0

    @property
    def dim(self) -> int:
        return self.reduced.rank

    def __len__(self):
        return self.dim

    def _check(self, X: VecField):
        if X.arity != self.arity:
            raise ArityError(f"arity mismatch: span {self.arity}, field {X.arity}")
        if X.field is not self.field:
            raise FieldMismatchError("field mismatch")

    def add(self, X: VecField) -> bool:
        self._check(X)
        if self.reduced.add(X.coordinates()):
            self.elements.append(X)
            return True
        return False

    def __contains__(self, X: VecField) -> bool:
        self._check(X)
        return self.reduced.contains(X.coordinates())

    def contains(self, X: VecField) -> bool:
        return X in self

    def basis(self) -> list[VecField]:
        """The canonical reduced basis."""
        return [VecField.from_coordinates(r, self.arity, self.field) for r in self.reduced.basis()]

    def bidegree_support(self) -> set:
        """Bidegrees occurring in the span (plane fields only)."""
        out = set()
        for X in self.basis():
            out.update(bidegree_components(X))
        return out

    def __repr__(self):
        return f"SpanBasis(dim={self.dim}, arity={self.arity})"


def span(elements, arity: int | None = None, field=None) -> SpanBasis:
    elements = list(elements)
    if arity is None:
        if not elements:
            raise ValueError("empty span needs an explicit arity")
        arity = elements[0].arity
    if field is None:
        field = elements[0].field if elements else QQ
    S = SpanBasis(arity, field)
    for X in elements:
        S.add(X)
    return S


def bracket_span(A: SpanBasis, B: SpanBasis, degree_cap: int) -> SpanBasis:
    """Span of all brackets [a, b]; brackets above ``degree_cap`` are dropped and counted."""
    if A.arity != B.arity or A.field is not B.field:
        raise ArityError("spans must share arity and field")
    out = SpanBasis(A.arity, A.field)
    xs = A.basis()
    ys = xs if B is A else B.basis()
    for i, X in enumerate(xs):
        for j, Y in enumerate(ys):
            if B is A and j <= i:
                continue
            Z = X.bracket(Y)
            if Z.is_zero():
                continue
            if Z.degree() > degree_cap:
                out.discards += 1
                continue
            out.add(Z)
    return out


class Verdict(str, enum.Enum):
    SOLVABLE_AT_TRUNCATION = "SOLVABLE_AT_TRUNCATION"
    NOT_DECIDED = "NOT_DECIDED"


@dataclass
class DerivedSeriesReport:
    truncation: int
    level_dims: list[int]
    discards: int
    verdict: Verdict
    stabilized_at_zero: int | None = None

    @property
    def derived_length(self) -> int | None:
        return self.stabilized_at_zero

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "levels": list(self.level_dims),
            "discards": self.discards,
            "verdict": self.verdict.value,
        }


def derived_series(generators: SpanBasis, degree_cap: int, max_levels: int = 8) -> DerivedSeriesReport:
    if max_levels < 1:
        raise ValueError("max_levels must be >= 1")
    L = generators
    dims = [L.dim]
    discards = 0
    zero_at = 0 if L.dim == 0 else None
    for level in range(1, max_levels + 1):
        if zero_at is not None:
            break
        L = bracket_span(L, L, degree_cap)
        discards += L.discards
        dims.append(L.dim)
        if L.dim == 0:
            zero_at = level
    verdict = Verdict.SOLVABLE_AT_TRUNCATION if dims[-1] == 0 else Verdict.NOT_DECIDED
    return DerivedSeriesReport(degree_cap, dims, discards, verdict, zero_at)


# ---------------------------------------------------------------------------
# named algebras

PARAM_TAGS = frozenset({"u_de_plus", "u_de_minus", "n_de_invariants", "g_de", "I_de"})
VEC_TAGS = frozenset({"vec0", "vecc", "vec0_0", "vecc_0"})
TAGS = (
    "j2plus", "j2minus", "j20plus", "j20minus",
    "u2plus", "u2minus", "u20plus", "u20minus",
    "t2", "t3", "u3plus", "j3plus",
    "vec0", "vecc", "vec0_0", "vecc_0",
    "u_de_plus", "u_de_minus", "n_de_invariants", "g_de", "I_de",
    "sl2_A1",
)  # fmt: skip
_SOLVABLE = frozenset(
    {"j2plus", "j2minus", "j20plus", "j20minus", "u2plus", "u2minus", "u20plus",
     "u20minus", "t2", "t3", "u3plus", "j3plus", "u_de_plus", "u_de_minus"}
)  # fmt: skip


@dataclass(frozen=True)
class NamedAlgebra:
    tag: str
    params: LatticeParams | None = None
    ambient: int | None = None  # only for the vec* tags; defaults to the plane

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown algebra tag {self.tag!r}")
        if (self.tag in PARAM_TAGS) != (self.params is not None):
            raise ValueError(f"{self.tag}: lattice parameters required iff (d, e)-parameterized")
        if self.ambient is not None and self.tag not in VEC_TAGS:
            raise ValueError("ambient dimension can only be chosen for the vec* tags")

    @property
    def arity(self) -> int:
        if self.tag in VEC_TAGS:
            return self.ambient or 2
        if self.tag == "sl2_A1":
            return 1
        if self.tag in ("t3", "u3plus", "j3plus"):
            return 3
        return 2

    @property
    def known_solvable(self) -> bool:
        return self.tag in _SOLVABLE


def named(tag: str, d: int | None = None, e: int | None = None) -> NamedAlgebra:
    params = lattice.make_params(d, e) if d is not None else None
    return NamedAlgebra(tag, params)


def _only(p: Poly, allowed) -> bool:
    """Every monomial of p satisfies the predicate ``allowed``."""
    return all(allowed(e) for e in p.terms)


def _is_diag_linear(p: Poly, i: int) -> bool:
    unit = tuple(int(k == i) for k in range(p.arity))
    return all(e == unit for e in p.terms)


def _plane_member_de(alg: NamedAlgebra, X: VecField) -> bool:
    params = alg.params
    d, e, ep = params.d, params.e, params.e_prime
    tag = alg.tag
    for (a, b), comp in bidegree_components(X).items():
        if tag == "u_de_plus":
            ok = a == -1 and b >= e and (b - e) % d == 0
        elif tag == "u_de_minus":
            ok = b == -1 and a >= ep and (a - ep) % d == 0
        elif (a, b) == (0, 0):
            # components of bidegree (0,0) are combinations of x d/dx and y d/dy
            ok = tag in ("n_de_invariants", "g_de")
        elif a == -1:
            k0 = 1 if tag == "I_de" else 0
            ok = b >= e + k0 * d and (b - e) % d == 0
        elif b == -1:
            k0 = 1 if tag == "I_de" else 0
            ok = a >= ep + k0 * d and (a - ep) % d == 0
        else:
            ok = lattice.in_Lambda(params, (a, b)) and comp.proportionality(gen_dab(a, b, X.field)) is not None
        if not ok:
            return False
    if tag == "g_de":
        return X.divergence().is_zero()
    return True


def member(alg: NamedAlgebra, X: VecField) -> bool:
    """Exact membership of X in the (infinite-dimensional) named algebra."""
    if X.arity != alg.arity:
        raise ArityError(f"{alg.tag} lives on A^{alg.arity}, field has arity {X.arity}")
    tag = alg.tag
    if tag in PARAM_TAGS:
        return _plane_member_de(alg, X)
    if tag in VEC_TAGS:
        div = X.divergence()
        ok = div.is_zero() if tag.startswith("vec0") else div.is_constant()
        if tag.endswith("_0"):
            ok = ok and all(not c.constant_term() for c in X.coeffs)
        return ok
    if tag == "sl2_A1":
        return X.coeffs[0].degree() <= 2
    n = X.arity
    if tag in ("t2", "t3"):
        return all(_is_diag_linear(c, i) for i, c in enumerate(X.coeffs))
    if tag in ("u3plus", "j3plus"):
        diag = tag == "j3plus"

        def ok(i, c):
            # coefficient i may depend on the later variables only (+ x_i itself if diag)
            unit = tuple(int(k == i) for k in range(n))
            return _only(c, lambda ex: (diag and ex == unit) or not any(ex[: i + 1]))

        return all(ok(i, c) for i, c in enumerate(X.coeffs))
    # plane triangular algebras; the minus family is the twist of the plus family
    f, g = X.coeffs
    if tag.endswith("minus"):
        f, g = _swap(g), _swap(f)
    base = tag.replace("minus", "plus")
    diag = base.startswith("j")
    pointed = base in ("j20plus", "u20plus")
    f_ok = _only(f, lambda ex: (diag and ex == (1, 0)) or (ex[0] == 0 and not (pointed and ex[1] == 0)))
    if pointed:
        g_ok = _only(g, lambda ex: diag and ex == (0, 1))
    else:
        g_ok = _only(g, lambda ex: ex == (0, 0) or (diag and ex == (0, 1)))
    return f_ok and g_ok


def _monomials(arity: int, max_deg: int, vars_allowed):
    """Exponent vectors of total degree <= max_deg using only the allowed variables."""
    out = []
    for exps in product(range(max_deg + 1), repeat=arity):
        if sum(exps) <= max_deg and all(k == 0 or i in vars_allowed for i, k in enumerate(exps)):
            out.append(exps)
    return sorted(out, key=lambda ex: (sum(ex), tuple(-k for k in ex)))


def _plane_vec0_basis(cap: int, field) -> list[VecField]:
    out = [gen_dplus(n, field) for n in range(cap + 1)]
    out += [gen_dminus(m, field) for m in range(cap + 1)]
    out += [gen_dab(a, s - a, field) for s in range(cap) for a in range(s + 1)]
    return out


def truncated_basis(alg: NamedAlgebra, degree_cap: int, field=QQ) -> list[VecField]:
    """Homogeneous basis elements of total (coefficient) degree <= degree_cap."""
    tag, D = alg.tag, degree_cap
    n = alg.arity

    def mono(i, exps):
        return VecField.monomial(i, exps, 1, field)

    def diag(k):
        return [mono(i, tuple(int(j == i) for j in range(k))) for i in range(k)]

    if tag in ("t2", "t3"):
        return diag(n)
    if tag == "sl2_A1":
        x2, one, x = (2,), (0,), (1,)
        return [mono(0, x2), -mono(0, one), mono(0, x) * 2]
    if tag in ("u3plus", "j3plus"):
        out = [mono(2, (0, 0, 0))]
        out += [mono(1, ex) for ex in _monomials(3, D, {2})]
        out += [mono(0, ex) for ex in _monomials(3, D, {1, 2})]
        if tag == "j3plus":
            out = diag(3) + out
        return [X for X in out if X.degree() <= D]
    if tag in VEC_TAGS:
        if n != 2:
            raise NotImplementedError("truncated bases of vec* algebras are provided on the plane")
        out = _plane_vec0_basis(D, field)
        if tag.endswith("_0"):
            out = [X for X in out if all(not c.constant_term() for c in X.coeffs)]
        if tag.startswith("vecc"):
            out = [mono(0, (1, 0)) + mono(1, (0, 1))] + out
        return [X for X in out if X.degree() <= D]
    if tag in PARAM_TAGS:
        params = alg.params
        d, e, ep = params.d, params.e, params.e_prime
        k0 = 1 if tag == "I_de" else 0
        plus = [gen_dplus(e + k * d, field) for k in range(k0, D // d + 2) if e + k * d <= D]
        minus = [gen_dminus(ep + l * d, field) for l in range(k0, D // d + 2) if ep + l * d <= D]
        if tag == "u_de_plus":
            return plus
        if tag == "u_de_minus":
            return minus
        abs_ = [gen_dab(a, b, field) for a, b in lattice.lambda_points(params, D - 1)]
        torus = diag(2) if tag == "n_de_invariants" else []
        if tag == "g_de":
            torus = [mono(0, (1, 0)) - mono(1, (0, 1))]
        items = [(0, 0, X) for X in torus] + [(X.degree(), 1, X) for X in plus]
        items += [(X.degree(), 2, X) for X in minus] + [(X.degree(), 3, X) for X in abs_]
        return [X for _, _, X in sorted(items, key=lambda t: (t[0], t[1]))]
    # plane triangular families: build the plus version and twist for minus
    base = tag.replace("minus", "plus")
    pointed = base in ("j20plus", "u20plus")
    out = []
    if base.startswith("j"):
        out += diag(2)
    out += [mono(0, (0, k)) for k in range(1 if pointed else 0, D + 1)]
    if not pointed:
        out.append(mono(1, (0, 0)))
    if tag.endswith("minus"):
        out = [VecField([_swap(X.coeffs[1]), _swap(X.coeffs[0])]) for X in out]
    return out


def _swap(p: Poly) -> Poly:
    return Poly._make(2, p.field, {(b, a): c for (a, b), c in p.terms.items()})


def derived_series_of(alg: NamedAlgebra, degree_cap: int, max_levels: int = 8) -> DerivedSeriesReport:
    return derived_series(span(truncated_basis(alg, degree_cap), arity=alg.arity), degree_cap, max_levels)


@dataclass
class BracketSuiteReport:
    checked: int
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


def ideal_bracket_suite(params: LatticeParams, degree_cap: int) -> BracketSuiteReport:
    """[x, y] in I_{d,e} for x in the invariants basis and y in the I_{d,e} basis."""
    inv = NamedAlgebra("n_de_invariants", params)
    ideal = NamedAlgebra("I_de", params)
    xs = truncated_basis(inv, degree_cap)
    ys = truncated_basis(ideal, degree_cap)
    failures = []
    for X in xs:
        for Y in ys:
            Z = X.bracket(Y)
            if not member(ideal, Z):
                failures.append((X, Y, Z))
    return BracketSuiteReport(len(xs) * len(ys), failures)


def nested_basis(alg: NamedAlgebra, level: int, field=QQ) -> list[VecField]:
    """Basis of a finite-dimensional subalgebra exhausting the algebra as ``level`` grows.

    For the plane triangular families this is the degree truncation.  For the
    three-space triangular algebra the degree truncation is not closed
    ([y^a z^b d/dx, z^c d/dy] raises the z-degree), so y is weighted by
    ``level + 1``: p(y, z) d/dx is kept when its weighted degree is at most
    level * (level + 1) and z^c d/dy when c <= level.
    """
    if alg.tag not in ("u3plus", "j3plus"):
        return truncated_basis(alg, level, field)
    D = level
    W = D * (D + 1)
    out = [VecField.monomial(2, (0, 0, 0), 1, field)]
    out += [VecField.monomial(1, (0, 0, c), 1, field) for c in range(D + 1)]
    out += [
        VecField.monomial(0, (0, a, b), 1, field)
        for a in range(D + 1)
        for b in range(W - a * (D + 1) + 1)
    ]
    if alg.tag == "j3plus":
        out = truncated_basis(NamedAlgebra("t3"), 1, field) + out
    return out


def nested_derived_series(alg: NamedAlgebra, level: int, max_levels: int = 8) -> DerivedSeriesReport:
    basis = nested_basis(alg, level)
    cap = max(X.degree() for X in basis)
    return derived_series(span(basis, arity=alg.arity), cap, max_levels)
