import pytest

from ringplane import (
    CapacityError,
    check_axioms,
    double,
    eisenstein_chain,
    galois_ring,
    gf,
    ixy,
    jacobson_radical,
    matrix_ring,
    trunc_skew,
    units,
    witt2,
    zero_divisors,
    zmod,
    characteristic,
    direct_sum,
)
from ringplane.classify import is_chain, is_local, classify_case, raghavendran_params
from ringplane.constructions import (
    default_irreducible,
    irreducible_factor,
    witt_carry_coefficients,
)
from ringplane.errors import ArgumentError
from ringplane.ring import find_isomorphism, is_isomorphic


def test_zmod_examples():
    R = zmod(4)
    assert (R.order, characteristic(R), units(R)) == (4, 4, {1, 3})
    assert not is_local(zmod(6))
    assert is_chain(zmod(9)) and jacobson_radical(zmod(9)) == {0, 3, 6}
    with pytest.raises(ArgumentError):
        zmod(1)


def test_gf_examples():
    F = gf(2, 2)
    assert F.order == 4 and len(units(F)) == 3 and zero_divisors(F) == {0}
    assert (gf(3).add == zmod(3).add).all() and (gf(3).mul == zmod(3).mul).all()
    G = gf(2, 2, f=[1, 1, 1])
    assert (G.mul == F.mul).all()


def test_gf_reducible_modulus_reports_factor():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(ArgumentError, match="factor"):
        gf(2, 2, f=[1, 0, 1])
    assert irreducible_factor([1, 0, 1], 2) is not None
    assert irreducible_factor([1, 1, 1], 2) is None


def test_default_irreducible_is_least():
    # the only monic irreducible quadratic over GF(2); cubic x^3 + x + 1
    assert default_irreducible(2, 2) == [1, 1, 1]
    assert default_irreducible(2, 3) == [1, 1, 0, 1]
    assert default_irreducible(3, 2) == [1, 0, 1]


def test_galois_ring_examples():
    assert is_isomorphic(galois_ring(2, 2, 1), zmod(4))
    assert is_isomorphic(galois_ring(2, 1, 2), gf(2, 2))
    G = galois_ring(2, 2, 2)
    assert (G.order, characteristic(G), len(jacobson_radical(G))) == (16, 4, 4)


@pytest.mark.parametrize("p,n,r", [(2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 2, 1), (2, 2, 2),
                                   (2, 1, 3), (5, 2, 1), (2, 3, 2)])
def test_galois_ring_formulas(p, n, r):
    G = galois_ring(p, n, r)
    assert G.order == p ** (n * r)
    assert characteristic(G) == p ** n
    assert len(jacobson_radical(G)) == p ** ((n - 1) * r)
    assert check_axioms(G).ok and is_chain(G)


def test_trunc_skew_examples():
    D = trunc_skew(2, 2, 0)
    assert D.order == 4 and characteristic(D) == 2 and jacobson_radical(D) == {0, 2}
    T = trunc_skew(4, 2, 1)
    assert T.order == 16 and not T.is_commutative()
    a, b = T.commutator_witness()
    assert T.mul[a, b] != T.mul[b, a]
    A = trunc_skew(3, 3, 0)
    assert A.order == 27 and jacobson_radical(A).nilpotency == 3


def test_trunc_skew_bad_automorphism():
    with pytest.raises(ArgumentError):
        trunc_skew(4, 2, 2)


def test_witt_examples():
    W = witt2(2)
    one0 = 1  # (1, 0)
    assert W.one == one0
    assert W.add[one0, one0] == 2  # (0, 1)
    assert is_isomorphic(W, zmod(4))
    # coefficients of X^i Y^(p-i), i = 1..p-1, in (X^p + Y^p - (X+Y)^p) / p
    assert witt_carry_coefficients(2) == [-1]
    assert witt_carry_coefficients(3) == [-1, -1]
    assert witt_carry_coefficients(5) == [-1, -2, -2, -1]


@pytest.mark.parametrize("q,p,r", [(2, 2, 1), (3, 3, 1), (4, 2, 2)])
def test_witt_is_galois_ring(q, p, r):
    W = witt2(q)
    assert W.is_commutative() and is_local(W) and len(jacobson_radical(W)) == q
    assert find_isomorphism(W, galois_ring(p, 2, r)) is not None


def test_double_examples():
    B = double(2)
    assert (B.order, characteristic(B), units(B)) == (4, 2, {1})
    assert is_isomorphic(B, direct_sum(gf(2), gf(2)))
    B3 = double(3)
    assert B3.order == 9 and len(units(B3)) == 4


def test_matrix_ring_examples():
    M = matrix_ring(gf(2), 2)
    assert M.order == 16 and jacobson_radical(M) == {M.zero} and not is_local(M)
    assert len(units(M)) == 6
    M1 = matrix_ring(zmod(4), 1)
    assert (M1.mul == zmod(4).mul).all()


def test_ixy_examples():
    I = ixy(2, 2)
    assert I.order == 8 and jacobson_radical(I) == {0, 2, 4, 6}
    J = jacobson_radical(I)
    assert all(I.mul[a, b] == 0 for a in J.members for b in J.members)
    assert is_local(I) and not is_chain(I)
    I3 = ixy(3, 2)
    assert I3.order == 27 and len(jacobson_radical(I3)) == 9


def test_eisenstein_order_eight():
    E = eisenstein_chain(2, 3, 1, 2, 2, 1, 0, [1])
    x = 4  # index of x: |S| for S = Z/4
    assert E.order == 8 and characteristic(E) == 4 and is_chain(E)
    assert E.mul[x, x] == E.scalar(2)
    assert E.mul[E.mul[x, x], x] == E.zero
    assert find_isomorphism(E, zmod(8)) is None
    assert find_isomorphism(E, trunc_skew(2, 3, 0)) is None


def test_eisenstein_k_equals_n_is_galois():
    E = eisenstein_chain(2, 2, 1, 2, 1, 1, 0, [1])
    assert is_isomorphic(E, galois_ring(2, 2, 1))
    E = eisenstein_chain(3, 2, 1, 2, 1, 1, 0, [1])
    assert is_isomorphic(E, galois_ring(3, 2, 1))


def test_eisenstein_k_one_is_trunc_skew():
    E = eisenstein_chain(2, 3, 1, 1, 3, 3, 0, [1])
    assert is_isomorphic(E, trunc_skew(2, 3, 0))
    E = eisenstein_chain(2, 2, 2, 1, 2, 2, 1, [1])
    assert E.order == 16 and not E.is_commutative() and is_chain(E)


@pytest.mark.parametrize("args,needle", [
    ((2, 3, 1, 2, 2, 2, 0, [1]), "n = (k-1)s + t"),
    ((2, 3, 1, 2, 1, 2, 0, [1]), "t <= s"),
    ((2, 2, 1, 2, 2, 0, 0, [1]), "1 <= t"),
    ((2, 3, 1, 2, 2, 1, 0, [2]), "unit"),
])
def test_eisenstein_constraint_errors(args, needle):
    with pytest.raises(ArgumentError) as info:
        eisenstein_chain(*args)
    assert needle in str(info.value)


def test_capacity_errors():
    with pytest.raises(CapacityError):
        zmod(5000)
    with pytest.raises(CapacityError):
        galois_ring(2, 4, 4, capacity=1000)


@pytest.mark.parametrize("R", [zmod(12), gf(5), gf(3, 2), galois_ring(3, 2, 1), trunc_skew(9, 2, 1),
                               witt2(3), double(4), ixy(2, 3), matrix_ring(zmod(2), 2)],
                         ids=lambda R: R.name)
def test_constructors_pass_axioms(R):
    assert check_axioms(R).ok


def test_raghavendran_for_constructions():
    assert raghavendran_params(trunc_skew(4, 2, 0)).as_dict() == {
        "p": 2, "n": 2, "r": 2, "k": 1, "nil_index": 2, "chain_consistent": True}
    assert classify_case(eisenstein_chain(2, 3, 1, 2, 2, 1, 0, [1])).ramification == 2
