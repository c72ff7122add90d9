"""Module invariants over the whole order-16 corpus, plus hypothesis checks."""
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringplane import check_axioms, direct_sum, gf, zmod
from ringplane.classify import (
    classify_case,
    decompose_commutative,
    is_chain,
    is_local,
    is_pir,
    raghavendran_params,
    zero_divisor_local_test,
)
from ringplane.plane import build_plane, verify_theorems
from ringplane.ring import (
    find_isomorphism,
    idempotents,
    jacobson_radical,
    nilpotency_index,
    opposite,
    quotient,
    units,
    zero_divisors,
)
from ringplane.ringspec import parse_spec
from ringplane.suite import suite_corpus

import oracles

CORPUS = suite_corpus(16)


@lru_cache(maxsize=None)
def ring(spec):
    return parse_spec(spec)


@lru_cache(maxsize=None)
def plane(spec):
    return build_plane(ring(spec), spec=spec)


def _zd_sides(R):
    z = R.zero
    nz = np.arange(R.order) != z
    left = ((R.mul == z) & nz[None, :]).any(axis=1)
    right = ((R.mul == z) & nz[:, None]).any(axis=0)
    return left, right


@pytest.mark.parametrize("spec", CORPUS)
def test_ring_core_invariants(spec):
    R = ring(spec)
    assert check_axioms(R).ok
    left, right = _zd_sides(R)
    assert (left == right).all()
    u, z = units(R), zero_divisors(R)
    assert not (u & z)
    if is_local(R):
        assert u | z == set(range(R.order))
    J = jacobson_radical(R)
    assert nilpotency_index(R, J.members) is not None
    Q, _ = quotient(R, J)
    assert jacobson_radical(Q) == {Q.zero}
    assert (opposite(opposite(R)).mul == R.mul).all()


@pytest.mark.parametrize("spec", [s for s in CORPUS if ring(s).order <= 16])
def test_isomorphism_reflexive_and_symmetric(spec):
    R = ring(spec)
    phi = find_isomorphism(R, R)
    assert phi is not None and phi.is_homomorphism()
    S = parse_spec(spec)
    psi = find_isomorphism(S, R)
    assert psi is not None and psi.inverse().is_homomorphism()


@pytest.mark.parametrize("spec", CORPUS)
def test_classify_invariants(spec):
    R = ring(spec)
    chain = is_chain(R)
    assert bool(chain) == (bool(is_local(R)) and bool(is_pir(R)))
    assert chain.left == chain.right
    report = classify_case(R)
    if is_local(R):
        p = raghavendran_params(R)
        q = p.p ** p.r
        assert R.order == q ** p.n and len(jacobson_radical(R)) == q ** (p.n - 1)
        assert 1 <= p.k <= p.n and p.nil_index <= p.n
        if chain:
            assert p.chain_consistent
    zd = zero_divisor_local_test(R)
    if report.case != "field":
        assert bool(zd) == bool(is_local(R))
    if zd:
        assert zd.r == zd.m - zd.n
    if R.is_commutative():
        parts = decompose_commutative(R)
        assert int(np.prod([P.order for P in parts])) == R.order
        assert all(is_local(P) for P in parts)


@pytest.mark.parametrize("spec", CORPUS)
def test_plane_invariants(spec):
    R, P = ring(spec), plane(spec)
    assert not (P.incidence & ~P.flag_neighbors).any()
    for nb in (P.point_neighbors, P.line_neighbors):
        assert nb.diagonal().all() and (nb == nb.T).all()
    assert sum(len(p.orbit) for p in P.points) == P.left_unimodular_count
    assert sum(len(L.orbit) for L in P.lines) == P.right_unimodular_count
    if is_local(R):
        u = len(units(R))
        assert all(len(p.orbit) == u for p in P.points)
        s, t = R.order, len(jacobson_radical(R))
        assert len(P.points) == (s ** 3 - t ** 3) // (s - t) == s * s + s * t + t * t
    stats = P.params
    if R.is_commutative():
        assert stats.point_count == stats.line_count
        assert stats.points_per_line == stats.lines_per_point
        assert stats.neighbor_class_size == stats.line_neighbor_class_size
        assert stats.flag_neighbor_count == stats.dual_flag_neighbor_count
    report = verify_theorems(P)
    assert report.ok, report.certificate()


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.integers(2, 30))
def test_direct_sum_multiplicative(a, b):
    R, S = zmod(a), zmod(b)
    T = direct_sum(R, S)
    assert T.order == a * b
    assert len(units(T)) == len(units(R)) * len(units(S))
    assert len(idempotents(T)) == len(idempotents(R)) * len(idempotents(S))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 60))
def test_zmod_structure_matches_arithmetic(n):
    R = zmod(n)
    from math import gcd
    assert units(R) == {a for a in range(n) if gcd(a, n) == 1}
    assert jacobson_radical(R).members == oracles.brute_radical(R)
    assert bool(is_local(R)) == (len({p for p in range(2, n + 1) if n % p == 0
                                      and all(p % d for d in range(2, p))}) == 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["zmod:4", "ts:2,2,id", "gf:2,2", "double:2", "zmod:6", "ixy:2,2"]),
       st.data())
def test_mutated_tables_fail_axioms(spec, data):
    R = ring(spec)
    m = R.order
    a = data.draw(st.integers(0, m - 1))
    b = data.draw(st.integers(0, m - 1))
    v = data.draw(st.integers(0, m - 1).filter(lambda v: v != R.mul[a, b]))
    mul = R.mul.copy()
    mul[a, b] = v
    assert not check_axioms(R.add, mul, R.zero, R.one).ok


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3))
def test_gf_is_field(p, r):
    if p ** r > 343:
        return
    F = gf(p, r)
    assert zero_divisors(F) == {F.zero} and len(units(F)) == p ** r - 1
