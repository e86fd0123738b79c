from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import nonzero_rationals, polys, rationals
from vflie.linalg import Echelon, rank
from vflie.poly import (
    INFINITE,
    ArityError,
    Poly,
    is_scaled_linear_power,
    taylor_shift,
    vanishing_order,
)
from vflie.scalar import FieldMismatchError, cyclotomic_field

x2, y2 = Poly.var(0, 2), Poly.var(1, 2)
t = Poly.var(0, 1)


def test_arith_examples():
    assert (x2 + y2) * (x2 - y2) == x2**2 - y2**2
    assert (x2**2 * 0).is_zero() and (x2**2 * 0).terms == {}
    p = 1 + t  # p(t) = 1 + t, then y^2 p(y^3)
    assert y2**2 * p.substitute([y2**3]) == y2**2 + y2**5


def test_partial_examples():
    assert (x2**2 * y2).partial(0) == x2 * y2 * 2
    assert (x2**2).partial(1).is_zero()
    assert (t**3 + t).partial(0) == t**2 * 3 + 1
    with pytest.raises(ArityError):
        t.partial(1)


def test_substitute_examples():
    K = cyclotomic_field(4)
    x, y = Poly.var(0, 2, K), Poly.var(1, 2, K)
    z = K.zeta
    assert (x * x * y).substitute([x * z**3, y * z]) == x * x * y * z**3
    assert (x2 + y2).substitute([y2, x2]) == x2 + y2
    assert (x2**2).substitute([x2 + y2**2, y2]) == x2**2 + x2 * y2**2 * 2 + y2**4


def test_vanishing_order_examples():
    assert vanishing_order(t**4) == 4
    assert vanishing_order(t**2 - 2 * t + 1, 1) == 2
    assert vanishing_order(Poly.zero(1)) == INFINITE


def test_scaled_linear_power_examples():
    assert is_scaled_linear_power(t**2 * 3 - t * 6 + 3) == (3, 1, 2)
    assert is_scaled_linear_power(t**2 + 1) is None
    assert is_scaled_linear_power(Poly.constant(7, 1)) == (7, 0, 0)
    c, a, k = is_scaled_linear_power((t - Fraction(2, 3)) ** 5 * -4)
    assert (c, a, k) == (-4, Fraction(2, 3), 5)


def test_errors():
    with pytest.raises(ArityError):
        x2 + t
    K = cyclotomic_field(3)
    with pytest.raises(FieldMismatchError):
        Poly.var(0, 1, K) + t
    assert t.promote(K) + Poly.var(0, 1, K) == Poly.var(0, 1, K) * 2
    with pytest.raises(ArityError):
        Poly({(1,): 1}, 2)


def test_degrees_and_order():
    p = x2**3 * y2 + y2 * 5 - 2
    assert p.degree() == 4 and p.degree_in(1) == 1
    assert [e for e, _ in p.sorted_terms()] == [(3, 1), (0, 1), (0, 0)]
    assert Poly.zero(2).degree() == -1
    assert p(2, 3) == 24 + 15 - 2


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == 0


@given(polys(3), polys(3), st.integers(0, 2))
def test_leibniz(p, q, i):
    assert (p * q).partial(i) == p * q.partial(i) + q * p.partial(i)


@settings(max_examples=50)
@given(polys(2, 3), polys(2, 2, 3), polys(2, 2, 3), polys(2, 2, 3), polys(2, 2, 3))
def test_substitution_composes(p, a, b, c, d):
    inner = [c, d]
    composite = [a.substitute(inner), b.substitute(inner)]
    assert p.substitute([a, b]).substitute(inner) == p.substitute(composite)


@given(polys(1, 5), polys(1, 5), rationals)
def test_vanishing_order_additive(f, g, alpha):
    assume(f and g)
    assert vanishing_order(f * g, alpha) == vanishing_order(f, alpha) + vanishing_order(g, alpha)


@given(polys(1, 5), rationals)
def test_taylor_shift_roundtrip(f, alpha):
    assert taylor_shift(taylor_shift(f, alpha), -alpha) == f
    assert taylor_shift(f, alpha)(0) == f(alpha)


@given(nonzero_rationals, rationals, st.integers(0, 7))
def test_scaled_linear_power_recovers(c, alpha, k):
    f = (t - alpha) ** k * c
    got = is_scaled_linear_power(f)
    assert got is not None
    gc, ga, gk = got
    assert (gc, gk) == (c, k)
    if k:
        assert ga == alpha


# order of a Wronskian-type bracket: nu(f g' - f' g) = nu(f) + nu(g) - 1 when nu(f) != nu(g), both >= 1
monomial_rich = st.builds(
    lambda lo, extra: t**lo * (1 + extra),
    st.integers(1, 6),
    polys(1, 4, 3),
)


@given(monomial_rich, monomial_rich)
def test_order_identity(f, g):
    nf, ng = vanishing_order(f), vanishing_order(g)
    assume(nf != ng and f and g)
    w = f * g.partial(0) - f.partial(0) * g
    assert vanishing_order(w) == nf + ng - 1


def test_echelon():
    E = Echelon()
    assert E.add({1: 1, 2: 1})
    assert E.add({2: 1})
    assert not E.add({1: 3, 2: 5})
    assert E.contains({1: 1}) and not E.contains({3: 1})
    assert E.basis() == [{1: 1}, {2: 1}]
    assert rank([{0: 1}, {0: 2}, {1: Fraction(1, 2)}]) == 2
    assert E.coordinates({1: 2, 2: 3}) == {1: 2, 2: 3}
    assert E.coordinates({3: 1}) is None
