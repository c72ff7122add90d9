"""Finite unital rings realized by addition and multiplication tables.

Elements are the indices ``0..m-1``; every operation goes through the two
``m x m`` tables.  Structural data (units, radical, ...) is computed on demand
and cached on the ring; caches are write-once and always equal a fresh
recomputation, so a ring can be shared freely between threads.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import (
    ArgumentError,
    AxiomError,
    CapacityError,
    InvariantViolation,
    StructuralError,
)

SIDES = ("left", "right", "two-sided")

IDEAL_ENUMERATION_BOUND = 16
ISOMORPHISM_BOUND = 32

# elements per chunk when vectorizing O(m^3) scans
_CHUNK = 1 << 22


def _side(side: str) -> str:
    s = side.lower().replace("_", "-")
    if s in ("both", "two", "twosided"):
        s = "two-sided"
    if s not in SIDES:
        raise ArgumentError(f"unknown ideal side {side!r}; expected one of {SIDES}")
    return s


class FiniteRing:
    """A finite associative ring with ``1 != 0`` given by its tables.

    Parameters
    ----------
    add, mul : array-like of shape (m, m)
        Row-major operation tables over element indices.
    zero, one : int
        Indices of the additive and multiplicative identities.
    name : str, optional
        Human-readable name, usually the ring-spec string that built it.
    construction : ConstructionTag-like, optional
        Pedigree recorded by the constructor.
    check : bool
        Run :func:`check_axioms` and raise :class:`AxiomError` on failure.
    """

    def __init__(self, add, mul, zero=0, one=1, name=None, construction=None, check=False):
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        _check_shapes(add, mul, zero, one)
        add.setflags(write=False)
        mul.setflags(write=False)
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.one = int(one)
        self.name = name
        self.construction = construction
        self._cache = {}
        if check:
            report = check_axioms(self)
            if not report.ok:
                raise AxiomError(report.axiom, report.witness)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or "FiniteRing"
        return f"<{label} order={self.order}>"

    @property
    def elements(self) -> range:
        return range(self.order)

    def cached(self, key, compute):
        # write-once: concurrent fills compute identical values
        try:
            return self._cache[key]
        except KeyError:
            value = compute()
            return self._cache.setdefault(key, value)

    @property
    def neg(self) -> np.ndarray:
        def compute():
            rows, cols = np.nonzero(self.add == self.zero)
            out = np.empty(self.order, dtype=np.int64)
            out[rows] = cols
            out.setflags(write=False)
            return out

        return self.cached("neg", compute)

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def scalar(self, k: int) -> int:
        """Index of ``k * 1`` (``1 + 1 + ... + 1``, k terms)."""
        x = self.zero
        for _ in range(k % characteristic(self) if k >= 0 else 0):
            x = int(self.add[x, self.one])
        return x

    def power(self, x: int, k: int) -> int:
        y = self.one
        for _ in range(k):
            y = int(self.mul[y, x])
        return y

    def is_commutative(self) -> bool:
        return self.cached("commutative", lambda: bool((self.mul == self.mul.T).all()))

    def commutator_witness(self):
        """A pair ``(a, b)`` with ``ab != ba``, or None."""
        bad = np.argwhere(self.mul != self.mul.T)
        return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))

    def mask(self, members: Iterable[int]) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[list(members)] = True
        return m


def _check_shapes(add, mul, zero, one):
    if add.ndim != 2 or add.shape[0] != add.shape[1]:
        raise StructuralError(f"addition table must be square, got shape {add.shape}")
    if mul.shape != add.shape:
        raise StructuralError(
            f"multiplication table shape {mul.shape} differs from addition {add.shape}"
        )
    m = add.shape[0]
    if m == 0:
        raise StructuralError("empty ring")
    for name, t in (("add", add), ("mul", mul)):
        if t.min() < 0 or t.max() >= m:
            raise StructuralError(f"{name} table has entries outside 0..{m - 1}")
    for name, v in (("zero", zero), ("one", one)):
        if not 0 <= int(v) < m:
            raise StructuralError(f"{name} index {v} outside 0..{m - 1}")


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def _first(bad: np.ndarray, offset=0):
    idx = np.argwhere(bad)[0]
    return (int(idx[0]) + offset,) + tuple(int(i) for i in idx[1:])


def _chunks(m):
    step = max(1, _CHUNK // (m * m))
    for start in range(0, m, step):
        yield start, np.arange(start, min(m, start + step))


def check_axioms(add, mul=None, zero=0, one=1) -> AxiomReport:
    """Check the unital ring axioms on a pair of tables.

    Accepts either a :class:`FiniteRing` or raw ``add``/``mul`` tables.
    Returns the first violated axiom together with a witness tuple of
    element indices.  Cost is ``O(m^3)``.
    """
    if isinstance(add, FiniteRing):
        R = add
        A, M, zero, one = R.add, R.mul, R.zero, R.one
    else:
        A = np.asarray(add, dtype=np.int64)
        M = np.asarray(mul, dtype=np.int64)
        _check_shapes(A, M, zero, one)
    m = A.shape[0]
    ar = np.arange(m)

    if zero == one:
        return AxiomReport(False, "one_ne_zero", (zero,))

    bad = A[zero] != ar
    if bad.any():
        return AxiomReport(False, "add_identity", (zero, int(np.argmax(bad))))
    bad = A != A.T
    if bad.any():
        return AxiomReport(False, "add_commutative", _first(bad))
    for start, a in _chunks(m):
        left = A[A[a]]  # (a+b)+c
        right = A[a[:, None, None], A[None, :, :]]  # a+(b+c)
        bad = left != right
        if bad.any():
            return AxiomReport(False, "add_associative", _first(bad, start))
    has_inverse = (A == zero).any(axis=1)
    if not has_inverse.all():
        return AxiomReport(False, "add_inverse", (int(np.argmin(has_inverse)),))

    for start, a in _chunks(m):
        left = M[M[a]]
        right = M[a[:, None, None], M[None, :, :]]
        bad = left != right
        if bad.any():
            return AxiomReport(False, "mul_associative", _first(bad, start))
    bad = (M[one] != ar) | (M[:, one] != ar)
    if bad.any():
        return AxiomReport(False, "mul_identity", (one, int(np.argmax(bad))))

    for start, a in _chunks(m):
        Mab = M[a]
        left = M[a[:, None, None], A[None, :, :]]  # a(b+c)
        right = A[Mab[:, :, None], Mab[:, None, :]]  # ab+ac
        bad = left != right
        if bad.any():
            return AxiomReport(False, "left_distributive", _first(bad, start))
    for start, a in _chunks(m):
        Mba = M[:, a].T  # row i: b*a_i
        left = M[A[None, :, :], a[:, None, None]]  # (b+c)a
        right = A[Mba[:, :, None], Mba[:, None, :]]  # ba+ca
        bad = left != right
        if bad.any():
            i, b, c = _first(bad, start)
            return AxiomReport(False, "right_distributive", (b, c, i))
    return AxiomReport(True)


# ---------------------------------------------------------------------------
# element-level structure


def unit_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        is_one = R.mul == R.one
        right_inv = is_one.any(axis=1)  # u*v = 1
        left_inv = is_one.any(axis=0)  # v*u = 1
        if not (right_inv == left_inv).all():
            x = int(np.argmax(right_inv != left_inv))
            raise InvariantViolation(
                f"element {x} is invertible on one side only; ring is not Dedekind-finite"
            )
        right_inv.setflags(write=False)
        return right_inv

    return R.cached("units", compute)


def units(R: FiniteRing) -> frozenset:
    """Two-sided units; one-sided invertibility is checked to coincide."""
    return frozenset(np.flatnonzero(unit_mask(R)).tolist())


def inverse(R: FiniteRing, u: int) -> int:
    hits = np.flatnonzero(R.mul[u] == R.one)
    if len(hits) == 0:
        raise ArgumentError(f"element {u} is not a unit")
    return int(hits[0])


def zero_divisor_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        is_zero = R.mul == R.zero
        nonzero = np.arange(R.order) != R.zero
        left = is_zero[:, nonzero].any(axis=1)  # a*b = 0, b != 0
        right = is_zero[nonzero, :].any(axis=0)  # b*a = 0, b != 0
        if not (left == right).all():
            x = int(np.argmax(left != right))
            raise InvariantViolation(f"element {x} is a zero divisor on one side only")
        left.setflags(write=False)
        return left

    return R.cached("zero_divisors", compute)


def zero_divisors(R: FiniteRing) -> frozenset:
    """Z(R), including 0. Left and right zero divisors are checked to agree."""
    return frozenset(np.flatnonzero(zero_divisor_mask(R)).tolist())


def nilpotent_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        ar = np.arange(R.order)
        cur = ar.copy()
        nil = cur == R.zero
        k = 1
        while k < R.order:
            cur = R.mul[cur, cur]
            nil |= cur == R.zero
            k *= 2
        nil.setflags(write=False)
        return nil

    return R.cached("nilpotent", compute)


def idempotents(R: FiniteRing) -> frozenset:
    ar = np.arange(R.order)
    return frozenset(np.flatnonzero(R.mul[ar, ar] == ar).tolist())


def primitive_idempotents(R: FiniteRing) -> list:
    """Minimal nonzero idempotents under ``e <= f  iff  e f = f e = e``.

    For a commutative ring these are the units of its local components, so
    their count is the number of maximal ideals.
    """
    idem = sorted(idempotents(R) - {R.zero})
    out = []
    for e in idem:
        below = [f for f in idem if f != e and R.mul[e, f] == f and R.mul[f, e] == f]
        if not below:
            out.append(e)
    return out


def characteristic(R: FiniteRing) -> int:
    """Additive order of the identity."""

    def compute():
        x, k = R.one, 1
        while x != R.zero:
            x = int(R.add[x, R.one])
            k += 1
        return k

    return R.cached("characteristic", compute)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class IdealSet:
    """A one- or two-sided ideal, stored as a frozen member set."""

    ring: FiniteRing
    members: frozenset
    side: str = "two-sided"
    nilpotency: Optional[int] = field(default=None, compare=False)

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        if isinstance(other, IdealSet):
            return self.ring is other.ring and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"IdealSet({sorted(self.members)}, side={self.side!r})"

    @property
    def mask(self) -> np.ndarray:
        return self.ring.mask(self.members)

    def is_proper(self) -> bool:
        return self.ring.one not in self.members


def additive_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[R.zero] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add[np.ix_(idx, idx)].ravel()] = True
        if (new == mask).all():
            return mask
        mask = new


def _ideal_closure(R: FiniteRing, mask: np.ndarray, side: str) -> np.ndarray:
    mask = mask.copy()
    while True:
        mask = additive_closure(R, mask)
        idx = np.flatnonzero(mask)
        new = mask.copy()
        if side in ("right", "two-sided"):
            new[R.mul[idx, :].ravel()] = True
        if side in ("left", "two-sided"):
            new[R.mul[:, idx].ravel()] = True
        if (new == mask).all():
            return mask
        mask = new


def is_ideal(R: FiniteRing, members, side="two-sided") -> bool:
    side = _side(side)
    mask = R.mask(members)
    return bool(mask[R.zero]) and bool((_ideal_closure(R, mask, side) == mask).all())


def generated_ideal(R: FiniteRing, gens: Iterable[int], side="two-sided") -> IdealSet:
    """Smallest ideal of the given side containing ``gens``."""
    side = _side(side)
    mask = _ideal_closure(R, R.mask(gens), side)
    return IdealSet(R, frozenset(np.flatnonzero(mask).tolist()), side)


def principal_ideal_mask(R: FiniteRing, side: str) -> np.ndarray:
    """Row ``a`` is the member mask of ``aR`` (right) or ``Ra`` (left)."""
    side = _side(side)
    if side == "two-sided":
        raise ArgumentError("principal masks are one-sided")

    def compute():
        m = R.order
        out = np.zeros((m, m), dtype=bool)
        rows = np.repeat(np.arange(m), m)
        if side == "right":
            out[rows, R.mul.ravel()] = True
        else:
            out[rows, R.mul.T.ravel()] = True
        out.setflags(write=False)
        return out

    return R.cached(("principal", side), compute)


def additive_subgroups(R: FiniteRing, bound=IDEAL_ENUMERATION_BOUND) -> list:
    if R.order > bound:
        raise CapacityError("additive subgroup enumeration", R.order, bound)
    start = R.mask([R.zero])
    found = {start.tobytes(): start}
    queue = [start]
    while queue:
        H = queue.pop()
        for g in np.flatnonzero(~H):
            K = H.copy()
            K[g] = True
            K = additive_closure(R, K)
            key = K.tobytes()
            if key not in found:
                found[key] = K
                queue.append(K)
    return list(found.values())


def all_ideals(R: FiniteRing, side="two-sided", bound=IDEAL_ENUMERATION_BOUND) -> list:
    """Every ideal of ``side``, sorted by size then membership.

    Enumerates additive subgroups and keeps the multiplicatively closed ones;
    exponential, hence the hard ``bound`` on ``|R|``.
    """
    side = _side(side)

    def compute():
        ideals = []
        for H in additive_subgroups(R, bound):
            idx = np.flatnonzero(H)
            ok = True
            if side in ("right", "two-sided"):
                ok = H[R.mul[idx, :]].all()
            if ok and side in ("left", "two-sided"):
                ok = H[R.mul[:, idx]].all()
            if ok:
                ideals.append(tuple(idx.tolist()))
        ideals.sort(key=lambda t: (len(t), t))
        return [IdealSet(R, frozenset(t), side) for t in ideals]

    return R.cached(("ideals", side, bound), compute)


def ideal_product(R: FiniteRing, I, K) -> IdealSet:
    """Additive span of all products ``a*b`` with ``a in I``, ``b in K``."""
    a = np.array(sorted(I), dtype=np.int64)
    b = np.array(sorted(K), dtype=np.int64)
    mask = np.zeros(R.order, dtype=bool)
    mask[R.mul[np.ix_(a, b)].ravel()] = True
    mask = additive_closure(R, mask)
    return IdealSet(R, frozenset(np.flatnonzero(mask).tolist()))


def ideal_power(R: FiniteRing, I, k: int) -> IdealSet:
    if k == 0:
        return IdealSet(R, frozenset(R.elements))
    P = IdealSet(R, frozenset(I))
    for _ in range(k - 1):
        P = ideal_product(R, P, I)
    return P


def nilpotency_index(R: FiniteRing, I) -> Optional[int]:
    """Least k with ``I^k = 0``; None if I is not nilpotent."""
    P = IdealSet(R, frozenset(I))
    k = 1
    seen = set()
    while P.members != {R.zero}:
        if P.members in seen:
            return None
        seen.add(P.members)
        P = ideal_product(R, P, I)
        k += 1
    return k


def _locality_by_complements(R: FiniteRing) -> bool:
    u = unit_mask(R)
    one_minus = R.sub(R.one, np.arange(R.order))
    return bool((u | u[one_minus]).all())


def jacobson_radical(R: FiniteRing) -> IdealSet:
    """J(R) = {x : 1 - a*x*b is a unit for all a, b}.

    Verified to be a nilpotent two-sided ideal.  For local rings it must equal
    both the non-units and the nilpotent elements, and for ``|R| <= 16`` it is
    cross-checked against the largest nilpotent two-sided ideal.  The returned
    ideal carries its nilpotency index.
    """

    def compute():
        m = R.order
        u = unit_mask(R)
        ar = np.arange(m)
        in_j = np.zeros(m, dtype=bool)
        step = max(1, _CHUNK // (m * m))
        for start in range(0, m, step):
            xs = ar[start:start + step]
            axb = R.mul[R.mul[:, xs][:, :, None], ar[None, None, :]]
            in_j[xs] = u[R.sub(R.one, axb)].all(axis=(0, 2))
        members = frozenset(np.flatnonzero(in_j).tolist())
        if not is_ideal(R, members, "two-sided"):
            raise InvariantViolation("Jacobson radical is not a two-sided ideal")
        nil = nilpotency_index(R, members)
        if nil is None:
            raise InvariantViolation("Jacobson radical of a finite ring is not nilpotent")
        if _locality_by_complements(R):
            if not (in_j == ~u).all():
                raise InvariantViolation("local ring: J differs from the non-units")
            if not (in_j == nilpotent_mask(R)).all():
                raise InvariantViolation("local ring: J differs from the nilpotents")
        if m <= IDEAL_ENUMERATION_BOUND:
            nilpotent_ideals = [
                I.members for I in all_ideals(R, "two-sided")
                if nilpotency_index(R, I.members) is not None
            ]
            largest = max(nilpotent_ideals, key=len)
            if largest != members:
                raise InvariantViolation("J differs from the largest nilpotent ideal")
        return IdealSet(R, members, "two-sided", nilpotency=nil)

    return R.cached("jacobson", compute)


# ---------------------------------------------------------------------------
# morphisms and derived rings


@dataclass(frozen=True, eq=False)
class RingMorphism:
    source: FiniteRing
    target: FiniteRing
    map: tuple

    def __call__(self, x):
        return self.map[x]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.map, dtype=np.int64)

    def is_homomorphism(self) -> bool:
        f = self.array
        S, T = self.source, self.target
        return (
            f[S.one] == T.one
            and (f[S.add] == T.add[f[:, None], f[None, :]]).all()
            and (f[S.mul] == T.mul[f[:, None], f[None, :]]).all()
        )

    def is_bijective(self) -> bool:
        return len(set(self.map)) == self.target.order == self.source.order

    def inverse(self) -> "RingMorphism":
        inv = [0] * self.target.order
        for x, y in enumerate(self.map):
            inv[y] = x
        return RingMorphism(self.target, self.source, tuple(inv))


def quotient(R: FiniteRing, I) -> tuple:
    """Coset ring ``R/I`` and the canonical surjection.

    Cosets are represented by their least element index and numbered in the
    order of those representatives.
    """
    members = I.members if isinstance(I, IdealSet) else frozenset(I)
    if R.one in members:
        raise ArgumentError("quotient by the whole ring")
    if not is_ideal(R, members, "two-sided"):
        raise ArgumentError("quotient needs a two-sided ideal")
    idx = np.array(sorted(members), dtype=np.int64)
    rep = R.add[:, idx].min(axis=1)
    reps = np.unique(rep)
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    proj = pos[rep]
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    name = f"({R.name})/I" if R.name else None
    Q = FiniteRing(add, mul, proj[R.zero], proj[R.one], name=name,
                   construction=_tag("quotient", base=R.name, ideal_order=len(members)))
    return Q, RingMorphism(R, Q, tuple(proj.tolist()))


def direct_sum(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Componentwise ring on pairs; pair ``(i, j)`` has index ``i*|S| + j``."""
    m, n = R.order, S.order
    i = np.repeat(np.arange(m), n)
    j = np.tile(np.arange(n), m)

    def table(A, B):
        return (A[i[:, None], i[None, :]] * n + B[j[:, None], j[None, :]])

    name = f"sum({R.name};{S.name})" if R.name and S.name else None
    return FiniteRing(table(R.add, S.add), table(R.mul, S.mul),
                      R.zero * n + S.zero, R.one * n + S.one, name=name,
                      construction=_tag("direct_sum", left=R.name, right=S.name))


def opposite(R: FiniteRing) -> FiniteRing:
    """Same addition, transposed multiplication."""
    name = f"op({R.name})" if R.name else None
    return FiniteRing(R.add, R.mul.T.copy(), R.zero, R.one, name=name,
                      construction=R.construction)


def corner_ring(R: FiniteRing, e: int) -> tuple:
    """The ring ``eRe`` with unit ``e``; returns it with the index embedding."""
    members = np.unique(R.mul[R.mul[e, :], e])
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    add = pos[R.add[np.ix_(members, members)]]
    mul = pos[R.mul[np.ix_(members, members)]]
    if (add < 0).any() or (mul < 0).any():
        raise ArgumentError(f"element {e} does not cut out a subring")
    C = FiniteRing(add, mul, pos[R.zero], pos[e],
                   name=f"corner({R.name},{e})" if R.name else None)
    return C, tuple(members.tolist())


# ---------------------------------------------------------------------------
# isomorphism search


def _element_fingerprints(R: FiniteRing) -> list:
    def compute():
        m = R.order
        ar = np.arange(m)
        add_order = np.zeros(m, dtype=np.int64)
        cur = ar.copy()
        for k in range(1, m + 1):
            hit = (cur == R.zero) & (add_order == 0)
            add_order[hit] = k
            cur = R.add[cur, ar]
        mul_order = np.zeros(m, dtype=np.int64)  # units: order; nilpotents: -index
        cur = ar.copy()
        for k in range(1, m + 1):
            mul_order[(cur == R.one) & (mul_order == 0)] = k
            mul_order[(cur == R.zero) & (mul_order == 0)] = -k
            cur = R.mul[cur, ar]
        idem = R.mul[ar, ar] == ar
        right = principal_ideal_mask(R, "right").sum(axis=1)
        left = principal_ideal_mask(R, "left").sum(axis=1)
        square = R.mul[ar, ar]
        return [
            (int(add_order[x]), int(mul_order[x]), bool(idem[x]), int(right[x]),
             int(left[x]), int(add_order[square[x]]))
            for x in range(m)
        ]

    return R.cached("fingerprints", compute)


def ring_invariants(R: FiniteRing) -> tuple:
    """Isomorphism invariants used to prune :func:`find_isomorphism`."""
    fps = _element_fingerprints(R)
    return (
        R.order,
        characteristic(R),
        len(units(R)),
        len(jacobson_radical(R)),
        R.is_commutative(),
        tuple(sorted(fps)),
    )


def _subring_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[R.zero] = mask[R.one] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add[np.ix_(idx, idx)].ravel()] = True
        new[R.mul[np.ix_(idx, idx)].ravel()] = True
        if (new == mask).all():
            return mask
        mask = new


def find_isomorphism(R: FiniteRing, S: FiniteRing, bound=ISOMORPHISM_BOUND):
    """A ring isomorphism ``R -> S`` or None.

    Backtracks over images of a small generating set of R, propagating the
    map through the generated subring and pruning with per-element invariants
    (additive order, multiplicative order or nilpotency index, idempotence,
    principal ideal sizes).
    """
    if R.order != S.order:
        return None
    if R.order > bound:
        raise CapacityError("isomorphism search", R.order, bound)
    if ring_invariants(R) != ring_invariants(S):
        return None
    m = R.order
    fr, fs = _element_fingerprints(R), _element_fingerprints(S)
    candidates = {x: [y for y in range(m) if fs[y] == fr[x]] for x in range(m)}

    gens = []
    sub = _subring_closure(R, np.zeros(m, dtype=bool))
    while not sub.all():
        free = np.flatnonzero(~sub).tolist()
        x = min(free, key=lambda e: (len(candidates[e]), e))
        gens.append(x)
        sub[x] = True
        sub = _subring_closure(R, sub)

    def extend(f, inv, mapped, x, y):
        if f[x] >= 0:
            return f[x] == y
        if inv[y] >= 0 or fr[x] != fs[y]:
            return False
        f[x], inv[y] = y, x
        mapped.append(x)
        queue = [x]
        while queue:
            a = queue.pop()
            for b in list(mapped):
                for A, B in ((R.add, S.add), (R.mul, S.mul)):
                    for c, d in ((A[a, b], B[f[a], f[b]]), (A[b, a], B[f[b], f[a]])):
                        if f[c] < 0:
                            if inv[d] >= 0 or fr[c] != fs[d]:
                                return False
                            f[c], inv[d] = d, c
                            mapped.append(c)
                            queue.append(c)
                        elif f[c] != d:
                            return False
        return True

    f0 = np.full(m, -1, dtype=np.int64)
    inv0 = np.full(m, -1, dtype=np.int64)
    mapped0 = []
    if not (extend(f0, inv0, mapped0, R.zero, S.zero) and extend(f0, inv0, mapped0, R.one, S.one)):
        return None

    def search(i, f, inv, mapped):
        if i == len(gens):
            return f
        x = gens[i]
        if f[x] >= 0:
            return search(i + 1, f, inv, mapped)
        for y in candidates[x]:
            if inv[y] >= 0:
                continue
            f2, inv2, mapped2 = f.copy(), inv.copy(), list(mapped)
            if extend(f2, inv2, mapped2, x, y):
                found = search(i + 1, f2, inv2, mapped2)
                if found is not None:
                    return found
        return None

    f = search(0, f0, inv0, mapped0)
    if f is None:
        return None
    phi = RingMorphism(R, S, tuple(int(v) for v in f))
    if not (phi.is_bijective() and phi.is_homomorphism()):
        raise InvariantViolation("isomorphism search produced a non-isomorphism")
    return phi


def is_isomorphic(R: FiniteRing, S: FiniteRing, bound=ISOMORPHISM_BOUND) -> bool:
    return find_isomorphism(R, S, bound) is not None


# ---------------------------------------------------------------------------
# JSON import / export


def _tag(family, **params):
    from .constructions import ConstructionTag

    return ConstructionTag(family, tuple(params.items()))


def ring_to_dict(R: FiniteRing) -> dict:
    construction = None
    if R.construction is not None:
        construction = {"family": R.construction.family,
                        "params": [[k, v] for k, v in R.construction.params]}
    return {
        "order": R.order,
        "zero": R.zero,
        "one": R.one,
        "add": R.add.tolist(),
        "mul": R.mul.tolist(),
        "meta": {"name": R.name, "construction": construction},
    }


def ring_to_json(R: FiniteRing) -> str:
    """Byte-deterministic JSON document for ``R``."""
    return json.dumps(ring_to_dict(R), separators=(",", ":")) + "\n"


def ring_from_dict(doc: dict, check=True) -> FiniteRing:
    try:
        order = int(doc["order"])
        add, mul = doc["add"], doc["mul"]
        zero, one = int(doc["zero"]), int(doc["one"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed ring document: {exc}") from None
    try:
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"malformed ring tables: {exc}") from None
    if add.shape != (order, order):
        raise StructuralError(f"table shape {add.shape} does not match order {order}")
    meta = doc.get("meta") or {}
    cons = meta.get("construction")
    tag = _tag("import")
    if cons:
        from .constructions import ConstructionTag

        tag = ConstructionTag(cons["family"], tuple((k, v) for k, v in cons["params"]))
    return FiniteRing(add, mul, zero, one, name=meta.get("name"), construction=tag, check=check)


def ring_from_json(text: str, check=True) -> FiniteRing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"ring document is not JSON: {exc}") from None
    return ring_from_dict(doc, check=check)
