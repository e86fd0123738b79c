"""Lattice combinatorics of the cyclic quotient surfaces X_{d,e}.

Bidegrees (a, b) of homogeneous plane vector fields invariant under
(x, y) -> (zeta^e x, zeta y) are the lattice points with ae + b = 0 mod d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeParams:
    d: int
    e: int
    e_prime: int

    @property
    def u(self) -> tuple[int, int]:
        return (-1, self.e)

    @property
    def v(self) -> tuple[int, int]:
        return (self.e_prime, -1)

    @property
    def base(self) -> tuple[int, int]:
        """u + v = (e' - 1, e - 1)."""
        return (self.e_prime - 1, self.e - 1)

    @property
    def is_generating_regime(self) -> bool:
        """ee' = d + 1."""
        return self.e * self.e_prime == self.d + 1


def make_params(d: int, e: int) -> LatticeParams:
    if d <= 1:
        raise LatticeError(f"d must be > 1, got {d}")
    if not 1 <= e < d:
        raise LatticeError(f"e must satisfy 1 <= e < d, got e={e}, d={d}")
    if gcd(d, e) != 1:
        raise LatticeError(f"gcd(d, e) must be 1, got gcd({d}, {e}) = {gcd(d, e)}")
    return LatticeParams(d, e, pow(e, -1, d))


def in_lattice(params: LatticeParams, p) -> bool:
    a, b = p
    return (a * params.e + b) % params.d == 0


def in_Lambda(params: LatticeParams, p) -> bool:
    a, b = p
    return in_lattice(params, p) and a >= 0 and b >= 0 and a + b > 0


def in_Lambda_hat(params: LatticeParams, p) -> bool:
    a, b = p
    return in_lattice(params, p) and a >= -1 and b >= -1 and (a, b) != (-1, -1)


def excluded_roots(params: LatticeParams) -> frozenset:
    return frozenset({(-1, params.e), (params.e_prime, -1), (0, 0)})


def in_lambda_small(params: LatticeParams, p) -> bool:
    return in_Lambda_hat(params, p) and tuple(p) not in excluded_roots(params)


def f_value(params: LatticeParams, p) -> int:
    """(e + 1) a + (e' + 1) b on Lambda."""
    if not in_Lambda(params, p):
        raise LatticeError(f"{tuple(p)} is not in Lambda_{{{params.d},{params.e}}}")
    a, b = p
    return (params.e + 1) * a + (params.e_prime + 1) * b


def _require_regime(params: LatticeParams):
    if not params.is_generating_regime:
        raise LatticeError(
            f"requires e*e' = d + 1, got e={params.e}, e'={params.e_prime}, d={params.d}"
        )


def nm_solution(params: LatticeParams, p) -> tuple[int, int]:
    """(n, m) with p = n u + m v."""
    _require_regime(params)
    if not in_Lambda(params, p):
        raise LatticeError(f"{tuple(p)} is not in Lambda_{{{params.d},{params.e}}}")
    a, b = p
    n, rn = divmod(a + b * params.e_prime, params.d)
    m, rm = divmod(a * params.e + b, params.d)
    assert rn == 0 and rm == 0
    return n, m


@dataclass(frozen=True)
class Step:
    direction: str  # "u" or "v"
    mult: int


@dataclass(frozen=True)
class LatticePath:
    start: tuple[int, int]
    steps: tuple[Step, ...]
    end: tuple[int, int]

    def partial_sums(self, params: LatticeParams) -> list[tuple[int, int]]:
        pts = [self.start]
        a, b = self.start
        for s in self.steps:
            da, db = params.u if s.direction == "u" else params.v
            a, b = a + s.mult * da, b + s.mult * db
            pts.append((a, b))
        return pts

    def to_json(self) -> dict:
        return {
            "start": list(self.start),
            "steps": [{"dir": s.direction, "mult": s.mult} for s in self.steps],
            "end": list(self.end),
        }

    @classmethod
    def from_json(cls, obj) -> "LatticePath":
        return cls(
            tuple(obj["start"]),
            tuple(Step(s["dir"], int(s["mult"])) for s in obj["steps"]),
            tuple(obj["end"]),
        )


def decompose_path(params: LatticeParams, p, prefer: str = "v") -> LatticePath:
    """Greedy reduction of p to the base point u + v, returned as a path from the base.

    When both a >= e' and b >= e, ``prefer`` picks the direction reduced first.
    """
    _require_regime(params)
    if params.e <= 1:
        raise LatticeError("path decomposition needs e > 1")
    if not in_Lambda(params, p):
        raise LatticeError(f"{tuple(p)} is not in Lambda_{{{params.d},{params.e}}}")
    e, ep = params.e, params.e_prime
    a, b = p
    reductions = []
    while (a, b) != params.base:
        can_v, can_u = a >= ep, b >= e
        if can_v and (prefer == "v" or not can_u):
            rho = a // ep
            a, b = a - rho * ep, b + rho
            reductions.append(Step("v", rho))
        elif can_u:
            eta = b // e
            a, b = a + eta, b - eta * e
            reductions.append(Step("u", eta))
        else:
            # unreachable: the base point is the only Lambda point with a < e', b < e
            raise LatticeError(f"greedy reduction stuck at {(a, b)}")
    return LatticePath(params.base, tuple(reversed(reductions)), tuple(p))


@dataclass
class IdealCheckReport:
    holds: bool
    checked: int
    violations: list = field(default_factory=list)


def monoid_ideal_check(params: LatticeParams, box_bound: int) -> IdealCheckReport:
    """Check (Lambda_hat + lambda) cap Lambda_hat is contained in lambda on a box."""
    if box_bound < params.d:
        raise LatticeError("box_bound must be >= d")
    rng = range(-1, box_bound + 1)
    hat = [(a, b) for a in rng for b in rng if in_Lambda_hat(params, (a, b))]
    small = [q for q in hat if in_lambda_small(params, q)]
    violations = []
    checked = 0
    for p in hat:
        for q in small:
            s = (p[0] + q[0], p[1] + q[1])
            if in_Lambda_hat(params, s):
                checked += 1
                if not in_lambda_small(params, s):
                    violations.append((p, q, s))
    return IdealCheckReport(not violations, checked, violations)


def demazure_roots(params: LatticeParams, count: int):
    """Bidegrees of the root derivations y^{e+kd} d/dx and x^{e'+ld} d/dy, k, l < count."""
    if count < 1:
        raise LatticeError("count must be >= 1")
    plus = [(-1, params.e + k * params.d) for k in range(count)]
    minus = [(params.e_prime + l * params.d, -1) for l in range(count)]
    return plus, minus


def lambda_points(params: LatticeParams, max_total: int):
    """Points of Lambda with a + b <= max_total, in (a + b, a) order."""
    return [
        (a, s - a)
        for s in range(1, max_total + 1)
        for a in range(s + 1)
        if in_Lambda(params, (a, s - a))
    ]
