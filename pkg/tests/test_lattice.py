import json
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vflie.lattice import (
    LatticeError,
    LatticePath,
    decompose_path,
    demazure_roots,
    f_value,
    in_Lambda,
    in_Lambda_hat,
    in_lambda_small,
    lambda_points,
    make_params,
    monoid_ideal_check,
    nm_solution,
)

P32 = make_params(3, 2)
REGIME = [make_params(d, e) for d, e in [(3, 2), (8, 3), (15, 4), (5, 3), (11, 4), (24, 5)]]


def test_make_params_examples():
    assert P32.e_prime == 2
    assert all(make_params(d, 1).e_prime == 1 for d in range(2, 10))
    assert make_params(8, 3).e_prime == 3
    for d, e in [(4, 2), (1, 0), (5, 5), (5, 0), (6, 9)]:
        with pytest.raises(LatticeError):
            make_params(d, e)


def test_membership_examples():
    assert in_Lambda(P32, (1, 1))
    assert not in_Lambda(P32, (-1, 2))
    assert in_Lambda_hat(P32, (-1, 2))
    assert not in_lambda_small(P32, (-1, 2))
    assert not in_Lambda(P32, (0, 0))
    assert in_Lambda_hat(P32, (0, 0)) and not in_lambda_small(P32, (0, 0))
    assert not in_Lambda_hat(P32, (-1, -1))


def test_f_value_examples():
    assert f_value(P32, (1, 1)) == 6
    assert f_value(P32, (3, 0)) == 9
    assert f_value(make_params(8, 3), (2, 2)) == 16
    with pytest.raises(LatticeError):
        f_value(P32, (1, 0))


def test_nm_examples():
    assert nm_solution(P32, (1, 1)) == (1, 1)
    assert nm_solution(P32, (3, 0)) == (1, 2)
    assert nm_solution(make_params(8, 3), (2, 2)) == (1, 1)
    with pytest.raises(LatticeError):
        nm_solution(make_params(4, 3), (1, 1))


def test_path_examples():
    assert decompose_path(P32, (1, 1)).steps == ()
    p = decompose_path(P32, (3, 0))
    assert [(s.direction, s.mult) for s in p.steps] == [("v", 1)]
    p = decompose_path(P32, (0, 3))
    assert [(s.direction, s.mult) for s in p.steps] == [("u", 1)]
    with pytest.raises(LatticeError):
        decompose_path(make_params(5, 1), (1, 0))
    with pytest.raises(LatticeError):
        decompose_path(P32, (1, 0))


def test_path_json_roundtrip():
    p = decompose_path(make_params(15, 4), (10, 20))
    text = json.dumps(p.to_json())
    assert LatticePath.from_json(json.loads(text)) == p
    assert set(p.to_json()) == {"start", "steps", "end"}


@pytest.mark.parametrize("params", REGIME, ids=lambda p: f"{p.d},{p.e}")
def test_path_invariants(params):
    u, v = params.u, params.v
    for prefer in ("v", "u"):
        for p in lambda_points(params, 4 * params.d):
            path = decompose_path(params, p, prefer=prefer)
            sums = path.partial_sums(params)
            assert path.start == params.base and sums[-1] == p
            assert all(in_Lambda_hat(params, s) for s in sums)
            fs = [f_value(params, s) for s in sums]
            for (a, b), s, f0, f1 in zip(sums, path.steps, fs, fs[1:]):
                assert f1 - f0 == s.mult * params.d
            n, m = nm_solution(params, p)
            assert 1 + sum(s.mult for s in path.steps if s.direction == "v") == m
            assert 1 + sum(s.mult for s in path.steps if s.direction == "u") == n
            assert (n * u[0] + m * v[0], n * u[1] + m * v[1]) == p


@pytest.mark.parametrize("params", REGIME, ids=lambda p: f"{p.d},{p.e}")
def test_unique_minimum_and_f(params):
    box = range(0, 3 * params.d)
    below = [(a, b) for a in box for b in box if in_Lambda(params, (a, b)) and a < params.e_prime and b < params.e]
    assert below == [params.base]
    fs = [f_value(params, p) for p in lambda_points(params, 3 * params.d)]
    assert min(fs) == 2 * params.d and all(f % params.d == 0 for f in fs)


@pytest.mark.parametrize("d", range(2, 14))
def test_congruence_equivalence(d):
    for e in range(1, d):
        if gcd(d, e) != 1:
            continue
        P = make_params(d, e)
        for a in range(-1, 2 * d):
            for b in range(-1, 2 * d):
                assert ((a * e + b) % d == 0) == ((a + b * P.e_prime) % d == 0)


@given(st.integers(2, 15).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, d - 1)).filter(lambda t: gcd(*t) == 1)),
       st.tuples(st.integers(0, 30), st.integers(0, 30)), st.tuples(st.integers(0, 30), st.integers(0, 30)))
def test_Lambda_submonoid(de, p, q):
    P = make_params(*de)
    if in_Lambda(P, p) and in_Lambda(P, q):
        assert in_Lambda(P, (p[0] + q[0], p[1] + q[1]))


@pytest.mark.parametrize("de", [(3, 2), (4, 3), (5, 2), (8, 3), (7, 3), (9, 2)])
def test_monoid_ideal(de):
    r = monoid_ideal_check(make_params(*de), 12)
    assert r.holds and r.violations == [] and r.checked > 0


def test_monoid_ideal_box_precondition():
    with pytest.raises(LatticeError):
        monoid_ideal_check(make_params(8, 3), 5)


def test_demazure_roots():
    assert demazure_roots(P32, 2) == ([(-1, 2), (-1, 5)], [(2, -1), (5, -1)])
    for d in range(2, 7):
        assert demazure_roots(make_params(d, 1), 1) == ([(-1, 1)], [(1, -1)])
    P = make_params(11, 4)
    plus, minus = demazure_roots(P, 5)
    assert all(in_Lambda_hat(P, p) for p in plus + minus)
    with pytest.raises(LatticeError):
        demazure_roots(P, 0)
