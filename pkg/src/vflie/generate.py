"""Constructive generation: bracket words, root-derivation builders, sl(2) detection,
and finite verifiers for the triangular extension and the generation probe."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import LatticeError, LatticeParams, decompose_path, in_Lambda
from .liealg import (
    NamedAlgebra,
    SpanBasis,
    bracket_span,
    member,
    span,
    truncated_basis,
)
from .scalar import QQ, is_rational, qdiv, sdiv
from .vecfield import (
    VecField,
    bidegree,
    gen_dab,
    gen_dminus,
    gen_dplus,
)

# ---------------------------------------------------------------------------
# bracket words


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    name: str


@dataclass(frozen=True)
class Bracket:
    left: "BracketWord"
    right: "BracketWord"


@dataclass(frozen=True)
class Scale:
    s: object
    w: "BracketWord"

    def __post_init__(self):
        if not self.s:
            raise WordError("scale factor must be nonzero")


BracketWord = Leaf | Bracket | Scale


def eval_word(w: BracketWord, binding: dict) -> VecField:
    if isinstance(w, Leaf):
        try:
            return binding[w.name]
        except KeyError:
            raise WordError(f"unbound generator name {w.name!r}") from None
    if isinstance(w, Bracket):
        return eval_word(w.left, binding).bracket(eval_word(w.right, binding))
    if isinstance(w, Scale):
        return eval_word(w.w, binding) * w.s
    raise TypeError(f"not a bracket word: {w!r}")


def leaves(w: BracketWord) -> set[str]:
    if isinstance(w, Leaf):
        return {w.name}
    if isinstance(w, Bracket):
        return leaves(w.left) | leaves(w.right)
    return leaves(w.w)


def ad_power(g: BracketWord, w: BracketWord, r: int) -> BracketWord:
    """ad(g)^r (w), nested as Bracket(g, Bracket(g, ... w))."""
    for _ in range(r):
        w = Bracket(g, w)
    return w


def scaled(c, w: BracketWord) -> BracketWord:
    """Scale(c, w), merging nested scales and dropping a unit factor."""
    if isinstance(w, Scale):
        c, w = c * w.s, w.w
    return w if c == 1 else Scale(c, w)


def word_to_json(w: BracketWord):
    from .scalar import format_rational

    if isinstance(w, Leaf):
        return {"leaf": w.name}
    if isinstance(w, Bracket):
        return {"bracket": [word_to_json(w.left), word_to_json(w.right)]}
    if not is_rational(w.s):
        raise WordError("only rational scale factors are serializable")
    return {"scale": {"s": format_rational(w.s), "w": word_to_json(w.w)}}


def word_from_json(obj) -> BracketWord:
    from .scalar import parse_rational

    if not isinstance(obj, dict) or len(obj) != 1:
        raise WordError(f"malformed word node: {obj!r}")
    (kind, val), = obj.items()
    if kind == "leaf":
        if not isinstance(val, str) or not val:
            raise WordError("leaf must be a nonempty string")
        return Leaf(val)
    if kind == "bracket":
        if not isinstance(val, list) or len(val) != 2:
            raise WordError("bracket must hold exactly two words")
        return Bracket(word_from_json(val[0]), word_from_json(val[1]))
    if kind == "scale":
        if not isinstance(val, dict) or set(val) != {"s", "w"}:
            raise WordError("scale must hold keys 's' and 'w'")
        try:
            s = parse_rational(str(val["s"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise WordError(f"bad scale factor {val['s']!r}") from exc
        return Scale(s, word_from_json(val["w"]))
    raise WordError(f"unknown word node {kind!r}")


# ---------------------------------------------------------------------------
# d_{a,b} from the two root derivations

DPLUS = Leaf("Dplus_e")
DMINUS = Leaf("Dminus_eprime")


def dab_binding(params: LatticeParams, field=QQ) -> dict:
    return {
        DPLUS.name: gen_dplus(params.e, field),
        DMINUS.name: gen_dminus(params.e_prime, field),
    }


@dataclass(frozen=True)
class TraceStep:
    """One block of a build: after applying ad(g)^mult the word equals c^-1 d_{point}."""

    direction: str
    mult: int
    point: tuple[int, int]
    c: object
    beta: object


def step_factor(direction: str, mult: int, end: tuple[int, int]):
    """Predicted ratio c_after / c_before for one block of ``mult`` equal ad-steps.

    Applying ad(x^{e'} d/dy) r times to d_{a, b+r} multiplies by (b+2)...(b+r+1);
    the y^e d/dx case is symmetric in a.
    """
    a, b = end
    k = b if direction == "v" else a
    prod = 1
    for j in range(k + 2, k + mult + 2):
        prod *= j
    return qdiv(1, prod)


def dab_word_trace(params: LatticeParams, p) -> tuple[BracketWord, list[TraceStep]]:
    """The unscaled word for d_p and the scalar after every block of the ad-chain."""
    if not in_Lambda(params, p):
        raise LatticeError(f"{tuple(p)} is not in Lambda_{{{params.d},{params.e}}}")
    path = decompose_path(params, p)
    binding = dab_binding(params)
    gp, gm = binding[DPLUS.name], binding[DMINUS.name]
    w: BracketWord = Bracket(DPLUS, DMINUS)
    X = gp.bracket(gm)
    trace = [TraceStep("base", 0, path.start, _match(X, path.start), 1)]
    point = path.start
    for step in path.steps:
        g, G = (DMINUS, gm) if step.direction == "v" else (DPLUS, gp)
        du, dv = params.v if step.direction == "v" else params.u
        for _ in range(step.mult):
            w = Bracket(g, w)
            X = G.bracket(X)
        point = (point[0] + step.mult * du, point[1] + step.mult * dv)
        c = _match(X, point)
        trace.append(TraceStep(step.direction, step.mult, point, c, sdiv(c, trace[-1].c)))
    return w, trace


def _match(X: VecField, point) -> object:
    c = gen_dab(*point).proportionality(X)
    if not c:
        raise ArithmeticError(f"word value is not a nonzero multiple of d_{point}")
    return c


def build_dab_word(params: LatticeParams, p) -> tuple[BracketWord, object]:
    """(w, c) with c * eval(w) = d_{a,b}; w is an ad-chain over Dplus_e and Dminus_eprime."""
    w, trace = dab_word_trace(params, p)
    return w, trace[-1].c


# ---------------------------------------------------------------------------
# the e = 1 (Veronese) identities


def veronese_identity(d: int, k: int, l: int) -> tuple[VecField, VecField]:
    if d < 2 or k < 0 or l < 0:
        raise ValueError("need d >= 2 and k, l >= 0")
    lhs = gen_dab(l * d, k * d)
    rhs = gen_dminus(1 + l * d).bracket(gen_dplus(1 + k * d))
    return lhs, rhs


@dataclass(frozen=True)
class VeroneseChain:
    value: VecField
    target: VecField
    alpha: object


def veronese_ad_chain(d: int, l: int, s: int) -> VeroneseChain:
    """ad(y d/dx)^s (d_{ld,0}) = alpha_s d_{ld-s,s} with alpha_s > 0."""
    if d < 2 or l < 0:
        raise ValueError("need d >= 2 and l >= 0")
    if not 0 <= s <= l * d:
        raise ValueError(f"s must lie in [0, {l * d}], got {s}")
    g = gen_dplus(1)
    X = gen_dab(l * d, 0)
    for _ in range(s):
        X = g.bracket(X)
    target = gen_dab(l * d - s, s)
    alpha = X.proportionality(target)
    if alpha is None or not alpha > 0:
        raise ArithmeticError(f"chain value is not a positive multiple of d_{(l * d - s, s)}")
    return VeroneseChain(X, target, alpha)


# ---------------------------------------------------------------------------
# sl(2) detection in Vec^c of the plane


class Sl2PreconditionError(ValueError):
    pass


class NotHomogeneousError(Sl2PreconditionError):
    pass


class AlreadyTriangularError(Sl2PreconditionError):
    pass


class NonConstantDivergenceError(Sl2PreconditionError):
    pass


def _plane(i, exps, c=1):
    return VecField.monomial(i, exps, c)


# the elements of j2+ used by the reductions
J2_BINDING = {
    "dx": _plane(0, (0, 0)),
    "dy": _plane(1, (0, 0)),
    "ydx": _plane(0, (0, 1)),
    "xdx": _plane(0, (1, 0)),
    "ydy": _plane(1, (0, 1)),
}


@dataclass
class Sl2Certificate:
    E: VecField
    H: VecField
    F: VecField
    relations_verified: tuple[bool, bool, bool]
    provenance: dict | None = None  # name -> BracketWord
    binding: dict = field(default_factory=dict)
    reduction: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(self.relations_verified)


def sl2_relations(E: VecField, H: VecField, F: VecField) -> tuple[bool, bool, bool]:
    return (H.bracket(E) == E * 2, H.bracket(F) == F * -2, E.bracket(F) == H)


def _normalized(E, E_w, F, F_w, binding, reduction) -> Sl2Certificate:
    H = E.bracket(F)
    kappa = H.bracket(E).proportionality(E)
    if not kappa:
        raise ArithmeticError("reduction did not produce an sl(2) triple")
    t = qdiv(2, kappa)
    F, F_w = F * t, scaled(t, F_w)
    H = E.bracket(F)
    prov = {"E": E_w, "H": Bracket(E_w, F_w), "F": F_w}
    return Sl2Certificate(E, H, F, sl2_relations(E, H, F), prov, binding, reduction)


def detect_sl2(v: VecField) -> Sl2Certificate:
    """An sl(2)-triple inside the Lie algebra generated by v and j2+.

    ``v`` must be a homogeneous plane field of constant divergence outside j2+.
    """
    if v.arity != 2:
        raise Sl2PreconditionError("a plane vector field is required")
    if v.field is not QQ:
        raise Sl2PreconditionError("rational coefficients are required")
    bd = bidegree(v)
    if bd is None:
        raise NotHomogeneousError("v is zero or not homogeneous")
    if not v.divergence().is_constant():
        raise NonConstantDivergenceError("v has non-constant divergence")
    if member(NamedAlgebra("j2plus"), v):
        raise AlreadyTriangularError("v already lies in j2+")

    binding = {"v": v, **J2_BINDING}
    dy = Leaf("dy")
    a, b = bd
    w: BracketWord = Leaf("v")
    X = v
    reduction = []

    def push(g_name, times):
        nonlocal w, X
        G = binding[g_name]
        for _ in range(times):
            w = Bracket(Leaf(g_name), w)
            X = G.bracket(X)
        if times:
            reduction.append((g_name, times))

    if a == 0:
        # (0, b), b >= 1: down to a multiple of y(2x d/dx - y d/dy), paired with d/dy
        push("dy", b - 1)
        t = gen_dab(0, 1).proportionality(X)
        return _normalized(binding["dy"], dy, gen_dab(0, 1), scaled(t, w), binding, reduction)
    if b >= 0:
        push("dy", b + 1)  # lands on a multiple of x^a d/dy
    push("dx", a - 1)  # lands on a multiple of x d/dy
    E_w = scaled(_plane(1, (1, 0)).proportionality(X), w)
    return _normalized(eval_word(E_w, binding), E_w, binding["ydx"], Leaf("ydx"), binding, reduction)


# ---------------------------------------------------------------------------
# the triangular extension j3+ + k z(x d/dx - y d/dy)


def _space(i, exps, c=1):
    return VecField.monomial(i, exps, c)


DELTA = _space(0, (1, 0, 1)) + _space(1, (0, 1, 1), -1)
H0 = _space(0, (1, 0, 0)) + _space(1, (0, 1, 0), -1)


def _in_x_summand(Z: VecField) -> bool:
    """Z in k[y,z] d/dx."""
    return not Z[1] and not Z[2] and 0 not in Z[0].variables()


def _in_y_summand(Z: VecField) -> bool:
    """Z in k[z] d/dy."""
    return not Z[0] and not Z[2] and Z[1].variables() <= {2}


def _peel(Z: VecField, W: VecField, key) -> VecField:
    """Remove from Z the multiple of W fixed by the coefficient at ``key``."""
    i, e = key
    c = Z[i].coeff(e)
    return Z - W * c if c else Z


_U3 = NamedAlgebra("u3plus")
_J3 = NamedAlgebra("j3plus")


def _in_u3_h0(Z: VecField) -> bool:
    return member(_U3, _peel(Z, H0, (0, (1, 0, 0))))


def _in_u3_h0_delta(Z: VecField) -> bool:
    return _in_u3_h0(_peel(Z, DELTA, (0, (1, 0, 1))))


@dataclass
class TriangularExtensionReport:
    degree_cap: int
    clauses: dict  # clause name -> bool
    dims: dict = field(default_factory=dict)
    ad_dz_multiple: object = None

    @property
    def holds(self) -> bool:
        return all(self.clauses.values())


_UNBOUNDED = 10**9


def verify_triangular_extension(degree_cap: int) -> TriangularExtensionReport:
    if degree_cap < 3:
        raise ValueError("degree_cap must be >= 3")
    D = degree_cap
    ad = DELTA.bracket
    u3 = truncated_basis(_U3, D)
    xs = [X for X in u3 if _in_x_summand(X)]
    ys = [X for X in u3 if _in_y_summand(X)]
    dz = _space(2, (0, 0, 0))
    xdx, ydy, zdz = (_space(i, tuple(int(j == i) for j in range(3))) for i in range(3))

    clauses = {}
    clauses["ad_delta_x_summand"] = all(_in_x_summand(ad(X)) for X in xs)
    clauses["ad_delta_y_summand"] = all(_in_y_summand(ad(X)) for X in ys)
    mult = H0.proportionality(ad(dz))
    clauses["ad_delta_dz_span"] = bool(mult)
    clauses["ad_delta_u3"] = all(_in_u3_h0(ad(X)) for X in u3)
    clauses["ad_delta_xdx_zero"] = ad(xdx).is_zero()
    clauses["ad_delta_ydy_zero"] = ad(ydy).is_zero()
    clauses["ad_delta_zdz"] = ad(zdz) == -DELTA
    t3_image = span([ad(xdx), ad(ydy), ad(zdz)], arity=3)
    clauses["ad_delta_t3_span"] = t3_image.dim == 1 and DELTA in t3_image
    clauses["ad_delta_h0_zero"] = ad(H0).is_zero()

    h = span(truncated_basis(_J3, D) + [DELTA])
    h1 = bracket_span(h, h, _UNBOUNDED)
    clauses["derived_in_u3_h0_delta"] = all(_in_u3_h0_delta(Z) for Z in h1.basis())
    h2 = bracket_span(h1, h1, _UNBOUNDED)
    clauses["second_commutant_in_j3"] = all(member(_J3, Z) for Z in h2.basis())
    dims = {"h": h.dim, "h1": h1.dim, "h2": h2.dim}
    return TriangularExtensionReport(D, clauses, dims, mult)


# ---------------------------------------------------------------------------
# generation probe on the invariant algebra


@dataclass
class Question2Report:
    degree_cap: int
    generated_support: list
    invariant_support: list
    missing: list
    extra: list
    generated_dim: int
    invariant_dim: int


def bracket_closure(gens, degree_cap: int) -> SpanBasis:
    """The span of all brackets of ``gens`` with degree <= degree_cap (fixed point)."""
    S = span(gens)
    frontier = S.basis()
    while frontier:
        current = S.basis()
        fresh = []
        for X in frontier:
            for Y in current:
                Z = X.bracket(Y)
                if Z and Z.degree() <= degree_cap and S.add(Z):
                    fresh.append(Z)
        frontier = fresh
    return S


def question2_probe(params: LatticeParams, degree_cap: int) -> Question2Report:
    """Compare what the root derivations and the torus generate with the invariant algebra.

    Only supports within the truncation are compared; nothing is concluded about
    the untruncated algebras.
    """
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    gens = truncated_basis(NamedAlgebra("u_de_plus", params), degree_cap)
    gens += truncated_basis(NamedAlgebra("u_de_minus", params), degree_cap)
    gens += truncated_basis(NamedAlgebra("t2"), degree_cap)
    G = bracket_closure(gens, degree_cap)
    inv = span(truncated_basis(NamedAlgebra("n_de_invariants", params), degree_cap))
    gs, vs = G.bidegree_support(), inv.bidegree_support()
    return Question2Report(
        degree_cap,
        sorted(gs),
        sorted(vs),
        sorted(vs - gs),
        sorted(gs - vs),
        G.dim,
        inv.dim,
    )


__all__ = [
    "Bracket",
    "BracketWord",
    "Leaf",
    "Scale",
    "Sl2Certificate",
    "WordError",
    "build_dab_word",
    "dab_binding",
    "dab_word_trace",
    "detect_sl2",
    "eval_word",
    "question2_probe",
    "step_factor",
    "veronese_ad_chain",
    "veronese_identity",
    "verify_triangular_extension",
    "word_from_json",
    "word_to_json",
]
