import json

import numpy as np
import pytest

from ringplane import (
    AxiomError,
    CapacityError,
    StructuralError,
    check_axioms,
    direct_sum,
    double,
    find_isomorphism,
    generated_ideal,
    gf,
    idempotents,
    ixy,
    jacobson_radical,
    matrix_ring,
    opposite,
    quotient,
    ring_from_json,
    ring_to_json,
    trunc_skew,
    units,
    witt2,
    zero_divisors,
    zmod,
    galois_ring,
    characteristic,
    all_ideals,
)
from ringplane.errors import ArgumentError, InvariantViolation
from ringplane.ring import FiniteRing, inverse, is_isomorphic, nilpotency_index

import oracles

# ixy(2,2) indices: x = 2, y = 4; D(2): x = 2; B(2): t = 2


def test_check_axioms_accepts_zmod4():
    assert check_axioms(zmod(4)).ok


def test_check_axioms_reports_corrupted_entry():
    R = zmod(4)
    mul = R.mul.copy()
    mul[3, 3] = 2
    rep = check_axioms(R.add, mul)
    assert not rep.ok
    assert rep.axiom in ("mul_associative", "mul_identity", "left_distributive",
                         "right_distributive")
    assert len(rep.witness) >= 1


def test_check_axioms_degenerate_ring():
    rep = check_axioms(np.zeros((1, 1), dtype=np.int64), np.zeros((1, 1), dtype=np.int64), 0, 0)
    assert not rep.ok and rep.axiom == "one_ne_zero"


def test_check_axioms_bad_shape():
    with pytest.raises(StructuralError):
        check_axioms(np.zeros((2, 3), dtype=np.int64), np.zeros((2, 2), dtype=np.int64))


def test_units_examples():
    assert units(zmod(4)) == {1, 3}
    assert units(double(2)) == {1}
    M = matrix_ring(gf(2), 2)
    assert len(units(M)) == 6 == len(oracles.brute_units(M))


def test_inverse_of_unit():
    R = zmod(9)
    for u in units(R):
        assert R.mul[u, inverse(R, u)] == R.one
    with pytest.raises(ArgumentError):
        inverse(R, 3)


def test_zero_divisors_examples():
    assert zero_divisors(zmod(4)) == {0, 2}
    assert zero_divisors(gf(2, 2)) == {0}
    assert zero_divisors(trunc_skew(2, 2, 0)) == {0, 2}


def test_jacobson_examples():
    J = jacobson_radical(zmod(4))
    assert J == {0, 2} and J.nilpotency == 2
    assert jacobson_radical(double(2)) == {0}
    J = jacobson_radical(ixy(2, 2))
    assert J == {0, 2, 4, 6} and J.nilpotency == 2


@pytest.mark.parametrize("R", [zmod(12), ixy(2, 2), double(3), matrix_ring(gf(2), 2),
                               trunc_skew(4, 2, 1)], ids=lambda R: R.name)
def test_jacobson_matches_oracle(R):
    assert jacobson_radical(R).members == oracles.brute_radical(R)
    assert units(R) == oracles.brute_units(R)
    assert zero_divisors(R) == oracles.brute_zero_divisors(R)
    assert characteristic(R) == oracles.brute_characteristic(R)


def test_generated_ideal_examples():
    assert generated_ideal(zmod(4), [2], "two-sided") == {0, 2}
    assert generated_ideal(trunc_skew(2, 2, 0), [2], "right") == {0, 2}
    assert generated_ideal(ixy(2, 2), [2], "two-sided") == {0, 2}


def test_all_ideals_examples():
    assert [I.members for I in all_ideals(zmod(4))] == [{0}, {0, 2}, {0, 1, 2, 3}]
    ideals = all_ideals(ixy(2, 2))
    assert [sorted(I.members) for I in ideals] == [
        [0], [0, 2], [0, 4], [0, 6], [0, 2, 4, 6], list(range(8))]
    assert [I.members for I in all_ideals(gf(2, 2))] == [{0}, {0, 1, 2, 3}]


def test_all_ideals_bound():
    with pytest.raises(CapacityError, match="16"):
        all_ideals(zmod(17))


def test_quotient_examples():
    Q, phi = quotient(zmod(4), jacobson_radical(zmod(4)))
    assert Q.order == 2 and is_isomorphic(Q, gf(2))
    assert phi.is_homomorphism()
    Q, _ = quotient(zmod(9), generated_ideal(zmod(9), [3]))
    assert is_isomorphic(Q, gf(3))
    I = ixy(2, 2)
    Q, _ = quotient(I, jacobson_radical(I))
    assert is_isomorphic(Q, gf(2))


def test_quotient_rejects_improper_or_one_sided():
    R = zmod(4)
    with pytest.raises(ArgumentError):
        quotient(R, generated_ideal(R, [1]))
    M = matrix_ring(gf(2), 2)
    left = next(I for I in all_ideals(M, "left") if 1 < len(I) < 16)
    with pytest.raises(ArgumentError):
        quotient(M, left)


def test_direct_sum_examples():
    assert is_isomorphic(direct_sum(gf(2), gf(2)), double(2))
    assert is_isomorphic(direct_sum(gf(2), gf(3)), zmod(6))
    R, S = zmod(4), gf(3)
    T = direct_sum(R, S)
    assert T.order == 12
    assert len(units(T)) == len(units(R)) * len(units(S))
    assert len(idempotents(T)) == len(idempotents(R)) * len(idempotents(S))


def test_opposite_examples():
    R = zmod(4)
    assert (opposite(R).mul == R.mul).all()
    D = trunc_skew(4, 2, 1)
    O = opposite(D)
    assert not (O.mul == D.mul).all()
    assert (opposite(O).mul == D.mul).all()
    assert check_axioms(O).ok


def test_idempotents_examples():
    assert idempotents(zmod(4)) == {0, 1}
    assert idempotents(double(2)) == {0, 1, 2, 3}
    assert idempotents(gf(2, 2)) == {0, 1}


def test_characteristic_examples():
    assert characteristic(zmod(4)) == 4
    assert characteristic(trunc_skew(2, 2, 0)) == 2
    assert characteristic(galois_ring(2, 2, 2)) == 4


def test_find_isomorphism_examples():
    phi = find_isomorphism(witt2(2), zmod(4))
    assert phi is not None and phi.is_homomorphism() and phi.is_bijective()
    assert find_isomorphism(zmod(4), trunc_skew(2, 2, 0)) is None
    assert find_isomorphism(gf(2, 2), double(2)) is None


def test_find_isomorphism_nontrivial_map():
    R, S = galois_ring(2, 1, 2), gf(2, 2, f=[1, 1, 1])
    phi = find_isomorphism(R, S)
    assert phi is not None and phi.is_homomorphism()
    assert phi.inverse().is_homomorphism()


def test_find_isomorphism_bound():
    with pytest.raises(CapacityError):
        find_isomorphism(zmod(64), zmod(64))


def test_json_round_trip_is_deterministic():
    R = ixy(2, 2)
    text = ring_to_json(R)
    assert text == ring_to_json(R)
    S = ring_from_json(text)
    assert (S.add == R.add).all() and (S.mul == R.mul).all()
    assert ring_to_json(S) == text
    doc = json.loads(text)
    assert list(doc) == ["order", "zero", "one", "add", "mul", "meta"]


def test_json_import_rejects_non_ring():
    doc = json.loads(ring_to_json(zmod(3)))
    doc["mul"][2][2] = 2
    with pytest.raises(AxiomError, match="distributive"):
        ring_from_json(json.dumps(doc))


def test_cache_is_write_once():
    R = zmod(5)
    assert R.cached("x", lambda: 1) == 1
    assert R.cached("x", lambda: 2) == 1


def test_nilpotency_index_of_radical():
    R = trunc_skew(3, 3, 0)
    assert nilpotency_index(R, jacobson_radical(R).members) == 3


def test_non_dedekind_finite_table_is_rejected():
    # a one-sided-only inverse cannot occur in a genuine finite ring; fake one
    R = FiniteRing(zmod(4).add, zmod(4).mul)
    mul = R.mul.copy()
    mul[2, 3] = 1  # 2*3 = 1 but 3*2 = 2
    fake = FiniteRing(R.add, mul)
    with pytest.raises(InvariantViolation):
        units(fake)
