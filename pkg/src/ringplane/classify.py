"""Structural predicates and the four-way case label for finite rings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import numpy as np

from .constructions import prime_power
from .errors import ArgumentError, CapacityError, InvariantViolation
from .ring import (
    IDEAL_ENUMERATION_BOUND,
    ISOMORPHISM_BOUND,
    FiniteRing,
    all_ideals,
    characteristic,
    corner_ring,
    direct_sum,
    find_isomorphism,
    generated_ideal,
    ideal_power,
    is_ideal,
    jacobson_radical,
    primitive_idempotents,
    principal_ideal_mask,
    quotient,
    unit_mask,
    zero_divisors,
)

CASES = ("field", "chain", "local_non_chain", "semilocal_non_local")


@dataclass(frozen=True)
class LocalityResult:
    verdict: bool
    nonunits_form_ideal: bool
    r_or_complement_unit: bool
    quotient_is_division_ring: bool
    witness: Optional[int] = None

    def __bool__(self):
        return self.verdict


@dataclass(frozen=True)
class ChainResult:
    left: bool
    right: bool
    witness: Optional[tuple] = None

    @property
    def verdict(self) -> bool:
        return self.right

    def __bool__(self):
        return self.right


@dataclass(frozen=True)
class PIRResult:
    verdict: bool
    method: str
    witness: Optional[tuple] = None  # non-principal ideal members, if any

    def __bool__(self):
        return self.verdict


def is_local(R: FiniteRing) -> LocalityResult:
    """Decide locality three ways and insist they agree.

    (i) the non-units form a two-sided ideal, (ii) for every r, r or 1 - r
    is a unit, (iii) R/J(R) is a division ring.
    """

    def compute():
        u = unit_mask(R)
        nonunits = np.flatnonzero(~u)
        ideal = bool(is_ideal(R, nonunits.tolist(), "two-sided"))
        witness = None
        one_minus = R.sub(R.one, np.arange(R.order))
        both_bad = ~u & ~u[one_minus]
        complements = not both_bad.any()
        if not complements:
            witness = int(np.argmax(both_bad))
        elif not ideal:
            sums = R.add[np.ix_(nonunits, nonunits)]
            i, _ = np.argwhere(u[sums])[0]
            witness = int(nonunits[i])
        J = jacobson_radical(R)
        Q, _ = quotient(R, J)
        qu = unit_mask(Q)
        division = bool(qu.sum() == Q.order - 1)
        if not ideal == complements == division:
            raise InvariantViolation(
                f"locality tests disagree: ideal={ideal} complements={complements} "
                f"division={division}")
        return LocalityResult(ideal, ideal, complements, division, witness)

    return R.cached("is_local", compute)


def is_chain(R: FiniteRing) -> ChainResult:
    """Right chain test (a in bR or b in aR for all a, b) and its left dual."""

    def compute():
        right = principal_ideal_mask(R, "right")  # right[b, a]: a in bR
        left = principal_ideal_mask(R, "left")
        bad_r = ~(right | right.T)
        bad_l = ~(left | left.T)
        r_ok, l_ok = not bool(bad_r.any()), not bool(bad_l.any())
        if r_ok != l_ok:
            raise InvariantViolation("left and right chain conditions differ on a finite ring")
        witness = None
        if not r_ok:
            a, b = np.argwhere(bad_r)[0]
            witness = (int(a), int(b))
        return ChainResult(l_ok, r_ok, witness)

    return R.cached("is_chain", compute)


def _principal_generator(R, members, side):
    mask = principal_ideal_mask(R, side)
    target = R.mask(members)
    for a in sorted(members):
        if (mask[a] == target).all():
            return a
    return None


def is_pir(R: FiniteRing, bound=IDEAL_ENUMERATION_BOUND) -> PIRResult:
    """Principal ideal ring test.

    Local rings: PIR iff J is principal.  Otherwise every left and right ideal
    is enumerated (``|R| <= bound``); larger commutative rings fall back to
    their local components.
    """

    def compute():
        if is_local(R):
            J = jacobson_radical(R)
            right = _principal_generator(R, J.members, "right")
            left = _principal_generator(R, J.members, "left")
            if (right is None) != (left is None):
                raise InvariantViolation("J is principal on one side only")
            if right is None:
                return PIRResult(False, "radical", tuple(sorted(J.members)))
            return PIRResult(True, "radical")
        if R.order <= bound:
            for side in ("right", "left"):
                for I in all_ideals(R, side, bound):
                    if _principal_generator(R, I.members, side) is None:
                        return PIRResult(False, f"{side}-ideals", tuple(sorted(I.members)))
            return PIRResult(True, "ideals")
        if R.is_commutative():
            for C in decompose_commutative(R):
                sub = is_pir(C, bound)
                if not sub:
                    return PIRResult(False, "components", sub.witness)
            return PIRResult(True, "components")
        raise CapacityError("PIR test on a non-local ring", R.order, bound)

    return R.cached(("is_pir", bound), compute)


def is_field(R: FiniteRing) -> bool:
    return zero_divisors(R) == {R.zero}


@dataclass(frozen=True)
class RaghavendranParams:
    p: int
    n: int
    r: int
    k: int
    nil_index: int
    chain_consistent: bool

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "r": self.r, "k": self.k,
                "nil_index": self.nil_index, "chain_consistent": self.chain_consistent}


def _exact_log(value, base):
    e, x = 0, 1
    while x < value:
        x *= base
        e += 1
    return e if x == value else None


def raghavendran_params(R: FiniteRing) -> RaghavendranParams:
    """Parameters p, n, r, k of a finite local ring.

    ``n`` is defined by ``|R| = |R/J|^n``; the nilpotency index of J is
    reported separately as ``nil_index`` and the two agree exactly for chain
    rings.
    """
    if not is_local(R):
        raise ArgumentError("raghavendran_params needs a local ring")
    J = jacobson_radical(R)
    q = R.order // len(J)
    p, r = prime_power(q)
    n = _exact_log(R.order, q)
    if n is None:
        raise InvariantViolation(f"|R| = {R.order} is not a power of |R/J| = {q}")
    k = _exact_log(characteristic(R), p)
    if k is None or not 1 <= k <= n:
        raise InvariantViolation(f"characteristic {characteristic(R)} is not p^k, 1 <= k <= n")
    if len(J) != p ** ((n - 1) * r):
        raise InvariantViolation("|J| != p^((n-1)r)")
    nil = J.nilpotency
    if nil > n:
        raise InvariantViolation(f"nilpotency index {nil} exceeds n = {n}")
    if k == n and not R.is_commutative():
        raise InvariantViolation("maximal characteristic but not commutative")
    return RaghavendranParams(p, n, r, k, nil, n == nil)


def ramification(R: FiniteRing) -> int:
    """Least s with ``(p) = J^s``; rings of characteristic p return n."""
    if not is_chain(R):
        raise ArgumentError("ramification index needs a chain ring")
    params = raghavendran_params(R)
    if params.k == 1:
        return params.n
    J = jacobson_radical(R)
    pideal = generated_ideal(R, [R.scalar(params.p)], "two-sided").members
    for s in range(1, params.n + 1):
        if ideal_power(R, J.members, s).members == pideal:
            return s
    raise InvariantViolation("(p) is not a power of J in a chain ring")


def decompose_commutative(R: FiniteRing, bound=ISOMORPHISM_BOUND) -> list:
    """Local components ``e_i R`` for the primitive idempotents ``e_i``.

    Sorted by order, then by the index of ``e_i``.  Each component is checked
    to be local, the idempotents to sum to 1, and (for ``|R| <= bound``) the
    reassembled direct sum to be isomorphic to R.
    """
    if not R.is_commutative():
        raise ArgumentError("decompose_commutative needs a commutative ring")

    def compute():
        prims = primitive_idempotents(R)
        total = reduce(lambda a, b: int(R.add[a, b]), prims, R.zero)
        if total != R.one:
            raise InvariantViolation("primitive idempotents do not sum to 1")
        parts = []
        for e in prims:
            C, _ = corner_ring(R, e)
            if R.name:
                C.name = f"{R.name}#e{e}"
            if not is_local(C):
                raise InvariantViolation(f"component at idempotent {e} is not local")
            parts.append((C.order, e, C))
        parts.sort(key=lambda t: (t[0], t[1]))
        comps = [C for _, _, C in parts]
        if int(np.prod([C.order for C in comps])) != R.order:
            raise InvariantViolation("component orders do not multiply to |R|")
        if R.order <= bound and len(comps) > 1:
            whole = reduce(direct_sum, comps)
            if find_isomorphism(whole, R, bound) is None:
                raise InvariantViolation("direct sum of components is not isomorphic to R")
        return comps

    return R.cached(("decomposition", bound), compute)


@dataclass(frozen=True)
class ZeroDivisorLocalResult:
    verdict: bool
    m: Optional[int]
    n: Optional[int]
    r: Optional[int]

    def __bool__(self):
        return self.verdict


def zero_divisor_local_test(R: FiniteRing) -> ZeroDivisorLocalResult:
    """Locality read off ``|R| = p^m`` and ``|Z(R)| = p^n`` with ``1 <= n < m``."""
    try:
        p, m = prime_power(R.order)
    except ArgumentError:
        return ZeroDivisorLocalResult(False, None, None, None)
    n = _exact_log(len(zero_divisors(R)), p)
    verdict = n is not None and 1 <= n < m
    r = m - n if verdict else None
    if not is_field(R) and verdict != bool(is_local(R)):
        raise InvariantViolation("zero-divisor count test disagrees with locality")
    if verdict:
        q = R.order // len(jacobson_radical(R))
        if q != p ** r:
            raise InvariantViolation(f"|R/J| = {q} but p^(m-n) = {p ** r}")
    return ZeroDivisorLocalResult(verdict, m, n, r)


@dataclass
class ClassificationReport:
    case: str
    is_local: LocalityResult
    is_chain: ChainResult
    is_pir: PIRResult
    params: Optional[RaghavendranParams] = None
    ramification: Optional[int] = None
    evidence: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "case": self.case,
            "is_local": self.is_local.verdict,
            "is_chain": self.is_chain.verdict,
            "is_pir": self.is_pir.verdict,
            "params": None if self.params is None else self.params.as_dict(),
            "ramification": self.ramification,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":")) + "\n"


def classify_case(R: FiniteRing) -> ClassificationReport:
    """Assign field / chain / local_non_chain / semilocal_non_local."""
    local = is_local(R)
    chain = is_chain(R)
    pir = is_pir(R)
    if is_field(R):
        case = "field"
    elif local and pir:
        case = "chain"
    elif local:
        case = "local_non_chain"
    else:
        case = "semilocal_non_local"
    if bool(chain) != (bool(local) and bool(pir)):
        raise InvariantViolation("chain ring test disagrees with local-and-PIR")
    evidence = {
        "locality": {"nonunits_form_ideal": local.nonunits_form_ideal,
                     "r_or_complement_unit": local.r_or_complement_unit,
                     "quotient_is_division_ring": local.quotient_is_division_ring,
                     "witness": local.witness},
        "chain": {"left": chain.left, "right": chain.right,
                  "witness": None if chain.witness is None else list(chain.witness)},
        "pir": {"method": pir.method,
                "non_principal_ideal": None if pir.witness is None else list(pir.witness)},
    }
    params = raghavendran_params(R) if local else None
    ram = ramification(R) if chain else None
    return ClassificationReport(case, local, chain, pir, params, ram, evidence)
