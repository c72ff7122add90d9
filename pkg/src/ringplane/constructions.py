"""Constructors for the named finite ring families.

Every constructor returns a :class:`~ringplane.ring.FiniteRing` whose name is
the canonical ring-spec string (see :mod:`ringplane.ringspec`) and whose
``construction`` records a :class:`ConstructionTag`.

Element numbering is part of each constructor's contract:

* polynomial residues ``c0 + c1 x + ... `` over a base ring of order ``b`` get
  index ``sum(c_i * b**i)`` where ``c_i`` are base-ring indices;
* ``witt2``: ``(x0, x1) -> x0 + q*x1``;  ``double``: ``a + b t -> a + q*b``;
* ``matrix_ring``: entry ``(i, j)`` is digit ``i*k + j`` in base ``|R0|``;
* ``ixy``: coefficients of ``1, x, ..., x^(n-1), y, ..., y^(n-1)`` as digits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, InvariantViolation
from .ring import (
    FiniteRing,
    RingMorphism,
    check_axioms,
    characteristic,
    direct_sum,
    generated_ideal,
    primitive_idempotents,
    quotient,
    unit_mask,
)

DEFAULT_CAPACITY = 4096

FAMILIES = (
    "zmod", "gf", "galois", "trunc_skew", "witt2", "double", "matrix",
    "ixy", "eisenstein", "direct_sum", "quotient", "import",
)


@dataclass(frozen=True)
class ConstructionTag:
    family: str
    params: tuple = ()

    def get(self, key, default=None):
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class PolySpec:
    """``base[x; twist] / (modulus)`` with optional extra two-sided relations.

    ``modulus`` lists base-ring indices lowest degree first and must be monic.
    ``twist`` is a base-ring automorphism as an index permutation;
    multiplication obeys ``x * a = twist(a) * x``.
    """

    base: FiniteRing
    modulus: tuple
    twist: Optional[tuple] = None
    relations: tuple = field(default=())

    def __post_init__(self):
        if len(self.modulus) < 2 or self.modulus[-1] != self.base.one:
            raise ArgumentError("modulus must be monic of degree >= 1")
        if self.twist is not None:
            phi = RingMorphism(self.base, self.base, tuple(self.twist))
            if not (phi.is_bijective() and phi.is_homomorphism()):
                raise ArgumentError("twist is not an automorphism of the base ring")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple:
    """``(p, r)`` with ``q = p**r``; ArgumentError if q is not a prime power."""
    if q < 2:
        raise ArgumentError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, x = 0, q
    while x % p == 0:
        x //= p
        r += 1
    if x != 1:
        raise ArgumentError(f"{q} is not a prime power")
    return p, r


def _capacity(order, capacity, what):
    bound = DEFAULT_CAPACITY if capacity is None else capacity
    if order > bound:
        raise CapacityError(what, order, bound)


def _sigma_label(e: int) -> str:
    return "id" if e == 0 else f"frob^{e}"


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists lowest degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of ``a`` by monic-or-unit-leading ``b`` over GF(p)."""
    a = _trim(x % p for x in a)
    b = _trim(x % p for x in b)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def irreducible_factor(f, p):
    """A monic proper factor of ``f`` over GF(p), or None if f is irreducible."""
    f = _trim(x % p for x in f)
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not poly_mod(f, g, p):
                return g
    return None


def default_irreducible(p: int, r: int) -> list:
    """Least monic irreducible of degree r over GF(p).

    Candidates are ordered by the index ``sum(c_i * p**i)`` of their lower
    coefficients.
    """
    for idx in range(p ** r):
        low = [(idx // p ** i) % p for i in range(r)]
        f = low + [1]
        if irreducible_factor(f, p) is None:
            return f
    raise InvariantViolation(f"no irreducible polynomial of degree {r} over GF({p})")


# ---------------------------------------------------------------------------
# generic skew polynomial quotient


def _digits(m, b, s):
    ar = np.arange(m)
    return np.stack([(ar // b ** i) % b for i in range(s)], axis=1)


def skew_poly_ring(spec: PolySpec, capacity=None, name=None, construction=None) -> FiniteRing:
    """Realize ``base[x; twist]/(modulus)`` as a table ring.

    Residues are the polynomials of degree < deg(modulus); products are
    reduced with ``x^s -> -(c_0 + ... + c_{s-1} x^{s-1})``.  Relations in
    ``spec.relations`` (coefficient lists of any degree) are then factored out
    as a two-sided ideal.
    """
    S = spec.base
    b, s = S.order, spec.degree
    m = b ** s
    _capacity(m, capacity, "skew polynomial ring")
    sigma = np.arange(b) if spec.twist is None else np.asarray(spec.twist)
    sig_pow = [np.arange(b)]
    for _ in range(2 * s):
        sig_pow.append(sigma[sig_pow[-1]])
    rewrite = [int(S.neg[c]) for c in spec.modulus[:-1]]

    D = _digits(m, b, s)
    add_idx = np.zeros((m, m), dtype=np.int64)
    for i in range(s):
        add_idx += S.add[D[:, i][:, None], D[:, i][None, :]] * b ** i

    coef = [np.full((m, m), S.zero, dtype=np.int64) for _ in range(2 * s - 1)]
    for i in range(s):
        for j in range(s):
            term = S.mul[D[:, i][:, None], sig_pow[i][D[:, j]][None, :]]
            coef[i + j] = S.add[coef[i + j], term]
    for d in range(2 * s - 2, s - 1, -1):
        c = coef[d]
        for i, h in enumerate(rewrite):
            coef[i + d - s] = S.add[coef[i + d - s], S.mul[c, sig_pow[d - s][h]]]
    mul_idx = np.zeros((m, m), dtype=np.int64)
    for i in range(s):
        mul_idx += coef[i] * b ** i

    def index_of(coeffs):
        return int(sum(int(c) * b ** i for i, c in enumerate(coeffs)))

    zero = index_of([S.zero] * s)
    one = index_of([S.one] + [S.zero] * (s - 1))
    T = FiniteRing(add_idx, mul_idx, zero, one, name=name, construction=construction)
    if not spec.relations:
        return T
    x = index_of([S.zero, S.one] + [S.zero] * (s - 2)) if s >= 2 else int(rewrite[0])
    gens = []
    for rel in spec.relations:
        acc = T.zero
        for i, c in enumerate(rel):
            term = T.mul[index_of([c] + [S.zero] * (s - 1)), T.power(x, i)]
            acc = int(T.add[acc, term])
        gens.append(acc)
    Q, _ = quotient(T, generated_ideal(T, gens, "two-sided"))
    Q.name, Q.construction = name, construction
    return Q


def frobenius(S: FiniteRing, p: int, r: int, e: int) -> tuple:
    """The automorphism of ``S = GR(p^(kr), p^k)`` lifting ``a -> a^(p^e)``.

    S must come from :func:`galois_ring` (so ``x`` is element ``base``, with
    base ``p^k``).  The image of the generator is the unique root of its
    minimal polynomial congruent to ``x^(p^e)`` modulo p.
    """
    if not 0 <= e < max(r, 1):
        raise ArgumentError(f"automorphism exponent {e} outside 0..{r - 1}")
    if e == 0 or r == 1:
        return tuple(range(S.order))
    pk = p ** (S.construction.get("n") or 1)
    f = S.construction.get("modulus")
    xi = pk  # coefficient vector (0, 1, 0, ...)
    target = S.power(xi, p ** e)
    digits = _digits(S.order, pk, r)
    residue = digits % p

    # evaluate f at every element by Horner
    ar = np.arange(S.order)
    val = np.full(S.order, S.zero, dtype=np.int64)
    for c in reversed(f):
        val = S.add[S.mul[val, ar], int(c)]
    roots = [int(y) for y in np.flatnonzero(val == S.zero)
             if (residue[y] == residue[target]).all()]
    if len(roots) != 1:
        raise InvariantViolation(f"expected one Hensel root, found {roots}")
    rho = roots[0]
    powers = [S.one]
    for _ in range(r - 1):
        powers.append(int(S.mul[powers[-1], rho]))
    image = np.full(S.order, S.zero, dtype=np.int64)
    for i in range(r):
        image = S.add[image, S.mul[digits[:, i], powers[i]]]
    sigma = tuple(int(v) for v in image)
    phi = RingMorphism(S, S, sigma)
    if not (phi.is_bijective() and phi.is_homomorphism()):
        raise InvariantViolation("Frobenius lift is not an automorphism")
    return sigma


# ---------------------------------------------------------------------------
# families


def zmod(n: int, capacity=None) -> FiniteRing:
    """Integers modulo n."""
    if n < 2:
        raise ArgumentError(f"zmod needs n >= 2, got {n}")
    _capacity(n, capacity, "zmod")
    ar = np.arange(n)
    return FiniteRing((ar[:, None] + ar[None, :]) % n, (ar[:, None] * ar[None, :]) % n,
                      0, 1, name=f"zmod:{n}", construction=ConstructionTag("zmod", (("n", n),)))


def galois_ring(p: int, n: int, r: int, capacity=None, f=None) -> FiniteRing:
    """GR(p^(nr), p^n) as ``Z/p^n [x] / (f)`` with f the least irreducible mod p."""
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    if n < 1 or r < 1:
        raise ArgumentError("galois_ring needs n >= 1 and r >= 1")
    _capacity(p ** (n * r), capacity, "galois_ring")
    if f is None:
        f = default_irreducible(p, r)
    pn = p ** n
    base = zmod(pn)
    tag = ConstructionTag("galois", (("p", p), ("n", n), ("r", r), ("modulus", tuple(f))))
    R = skew_poly_ring(PolySpec(base, tuple(int(c) % pn for c in f)), capacity,
                       name=f"gr:{p},{n},{r}", construction=tag)
    return R


def gf(p: int, r: int = 1, f: Optional[Sequence[int]] = None, capacity=None) -> FiniteRing:
    """GF(p^r) as polynomial residues modulo an irreducible f.

    ``f`` lists coefficients lowest degree first (monic, degree r).  Without
    f the least irreducible is used.
    """
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    if r < 1:
        raise ArgumentError("gf needs r >= 1")
    if f is not None:
        f = [int(c) % p for c in f]
        if len(f) == r:
            f = f + [1]
        if len(f) != r + 1 or f[-1] != 1:
            raise ArgumentError(f"modulus must be monic of degree {r}")
        factor = irreducible_factor(f, p)
        if factor is not None:
            raise ArgumentError(f"modulus {f} is reducible mod {p}; factor {factor}")
    R = galois_ring(p, 1, r, capacity=capacity, f=f)
    R.name = f"gf:{p}" if r == 1 else f"gf:{p},{r}"
    R.construction = ConstructionTag(
        "gf", (("p", p), ("r", r), ("modulus", R.construction.get("modulus"))))
    return R


def _field_of(q, capacity=None):
    p, r = prime_power(q)
    return p, r, gf(p, r, capacity=capacity)


def trunc_skew(q: int, n: int, sigma: int = 0, capacity=None) -> FiniteRing:
    """GF(q)[x; sigma]/(x^n) with ``sigma = Frobenius^sigma``.

    ``n = 2`` gives the (twisted) dual numbers.
    """
    if n < 2:
        raise ArgumentError(f"trunc_skew needs n >= 2, got {n}")
    p, r = prime_power(q)
    _capacity(q ** n, capacity, "trunc_skew")
    F = gf(p, r)
    twist = frobenius(F, p, r, sigma)
    tag = ConstructionTag("trunc_skew", (("q", q), ("n", n), ("sigma", sigma)))
    return skew_poly_ring(PolySpec(F, (F.zero,) * n + (F.one,), twist), capacity,
                          name=f"ts:{q},{n},{_sigma_label(sigma)}", construction=tag)


def witt_carry_coefficients(p: int) -> list:
    """Integer coefficients ``c_i`` of ``(X^p + Y^p - (X+Y)^p)/p = sum c_i X^i Y^(p-i)``."""
    return [-(comb(p, i) // p) for i in range(1, p)]


def witt2(q: int, capacity=None) -> FiniteRing:
    """Truncated Witt vectors of length 2 over GF(q)."""
    p, r = prime_power(q)
    _capacity(q * q, capacity, "witt2")
    F = gf(p, r)
    ar = np.arange(q)
    pw = np.zeros((q, p + 1), dtype=np.int64)
    pw[:, 0] = F.one
    for e in range(1, p + 1):
        pw[:, e] = F.mul[pw[:, e - 1], ar]
    carry = np.full((q, q), F.zero, dtype=np.int64)
    for i, c in enumerate(witt_carry_coefficients(p), start=1):
        mono = F.mul[pw[:, i][:, None], pw[:, p - i][None, :]]
        carry = F.add[carry, F.mul[F.scalar(c % p), mono]]
    frob = pw[:, p]

    elems = np.arange(q * q)
    x0, x1 = elems % q, elems // q
    a0, a1 = x0[:, None], x1[:, None]
    b0, b1 = x0[None, :], x1[None, :]
    s0 = F.add[a0, b0]
    s1 = F.add[F.add[a1, b1], carry[a0, b0]]
    p0 = F.mul[a0, b0]
    p1 = F.add[F.mul[frob[a0], b1], F.mul[a1, frob[b0]]]
    return FiniteRing(s0 + q * s1, p0 + q * p1, 0, F.one,
                      name=f"witt:{q}", construction=ConstructionTag("witt2", (("q", q),)))


def double(q: int, capacity=None) -> FiniteRing:
    """Double numbers GF(q) + GF(q) t with ``t^2 = t``."""
    p, r = prime_power(q)
    _capacity(q * q, capacity, "double")
    F = gf(p, r)
    ar = np.arange(q * q)
    a, b = ar % q, ar // q
    A, B = a[:, None], b[:, None]
    C, Dd = a[None, :], b[None, :]
    s0, s1 = F.add[A, C], F.add[B, Dd]
    m0 = F.mul[A, C]
    m1 = F.add[F.add[F.mul[A, Dd], F.mul[B, C]], F.mul[B, Dd]]
    R = FiniteRing(s0 + q * s1, m0 + q * m1, 0, F.one,
                   name=f"double:{q}", construction=ConstructionTag("double", (("q", q),)))
    if len(primitive_idempotents(R)) != 2:
        raise InvariantViolation("double numbers must have exactly two maximal ideals")
    return R


def matrix_ring(R0: FiniteRing, k: int, capacity=None) -> FiniteRing:
    """k x k matrices over R0."""
    if k < 1:
        raise ArgumentError("matrix size must be >= 1")
    b = R0.order
    _capacity(b ** (k * k), capacity, "matrix_ring")
    name = f"mat:{k}({R0.name})" if R0.name else None
    tag = ConstructionTag("matrix", (("k", k), ("base", R0.name)))
    if k == 1:
        return FiniteRing(R0.add, R0.mul, R0.zero, R0.one, name=name, construction=tag)
    m = b ** (k * k)
    D = _digits(m, b, k * k)
    add = np.zeros((m, m), dtype=np.int64)
    mul = np.zeros((m, m), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            pos = i * k + j
            add += R0.add[D[:, pos][:, None], D[:, pos][None, :]] * b ** pos
            acc = np.full((m, m), R0.zero, dtype=np.int64)
            for l in range(k):
                acc = R0.add[acc, R0.mul[D[:, i * k + l][:, None], D[:, l * k + j][None, :]]]
            mul += acc * b ** pos
    zero = sum(R0.zero * b ** p for p in range(k * k))
    one = sum((R0.one if p % (k + 1) == 0 else R0.zero) * b ** p for p in range(k * k))
    return FiniteRing(add, mul, zero, one, name=name, construction=tag)


def ixy(q: int, n: int, capacity=None) -> FiniteRing:
    """GF(q)[x, y] / <x^n, xy, y^n>, local but not a chain ring."""
    if n < 2:
        raise ArgumentError(f"ixy needs n >= 2, got {n}")
    p, r = prime_power(q)
    dim = 2 * n - 1
    _capacity(q ** dim, capacity, "ixy")
    F = gf(p, r)
    m = q ** dim
    D = _digits(m, q, dim)

    def xpart(i):  # coefficient of x^i (i = 0 is the constant)
        return D[:, i]

    def ypart(i):
        return D[:, 0] if i == 0 else D[:, n - 1 + i]

    add = np.zeros((m, m), dtype=np.int64)
    for d in range(dim):
        add += F.add[D[:, d][:, None], D[:, d][None, :]] * q ** d
    mul = np.zeros((m, m), dtype=np.int64)
    for part, offset in ((xpart, 0), (ypart, n - 1)):
        for k in range(0 if offset == 0 else 1, n):
            acc = np.full((m, m), F.zero, dtype=np.int64)
            for i in range(k + 1):
                acc = F.add[acc, F.mul[part(i)[:, None], part(k - i)[None, :]]]
            digit = k if offset == 0 else offset + k
            mul += acc * q ** digit
    R = FiniteRing(add, mul, 0, F.one, name=f"ixy:{q},{n}",
                   construction=ConstructionTag("ixy", (("q", q), ("n", n))))
    from .classify import is_chain, is_local

    if not is_local(R).verdict or is_chain(R).verdict:
        raise InvariantViolation("ixy ring must be local and not a chain ring")
    return R


def eisenstein_chain(p: int, n: int, r: int, k: int, s: int, t: int, sigma: int = 0,
                     coeffs: Sequence[int] = (1,), capacity=None) -> FiniteRing:
    """Chain ring ``S[x; sigma] / (g(x), p^(k-1) x^t)`` with ``S = GR(q^k, p^k)``.

    ``g(x) = x^s - p (a_0 + a_1 x + ... + a_(s-1) x^(s-1))`` where ``coeffs``
    gives ``a_0, a_1, ...`` as element indices of S (integers when r = 1);
    missing trailing coefficients are zero.
    """
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    for label, v in (("n", n), ("r", r), ("k", k)):
        if v < 1:
            raise ArgumentError(f"{label} must be >= 1")
    if not 1 <= t:
        raise ArgumentError(f"constraint 1 <= t violated (t={t})")
    if not t <= s:
        raise ArgumentError(f"constraint t <= s violated (t={t}, s={s})")
    if not s <= n:
        raise ArgumentError(f"constraint s <= n violated (s={s}, n={n})")
    if n != (k - 1) * s + t:
        raise ArgumentError(f"constraint n = (k-1)s + t violated ({n} != {(k - 1) * s + t})")
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) > s:
        raise ArgumentError(f"g has degree {s}; got {len(coeffs)} coefficients")
    _capacity(p ** (n * r), capacity, "eisenstein_chain")
    S = galois_ring(p, k, r)
    if any(not 0 <= c < S.order for c in coeffs):
        raise ArgumentError(f"coefficients must be element indices of GR below {S.order}")
    coeffs = coeffs + [0] * (s - len(coeffs))
    if not unit_mask(S)[coeffs[0]]:
        raise ArgumentError(f"a_0 = {coeffs[0]} is not a unit of the Galois ring")
    _capacity(S.order ** s, capacity, "eisenstein_chain (before relations)")
    twist = frobenius(S, p, r, sigma)
    pe = S.scalar(p)
    h = [int(S.mul[pe, a]) for a in coeffs]
    modulus = tuple(int(S.neg[c]) for c in h) + (S.one,)
    relation = (S.zero,) * t + (S.scalar(p ** (k - 1)),)
    label = ",".join(str(c) for c in coeffs)
    name = f"eis:{p},{n},{r},{k},{s},{t},{_sigma_label(sigma)}[{label}]"
    tag = ConstructionTag("eisenstein", (("p", p), ("n", n), ("r", r), ("k", k), ("s", s),
                                         ("t", t), ("sigma", sigma), ("coeffs", tuple(coeffs))))
    T = skew_poly_ring(PolySpec(S, modulus, twist), capacity)
    if T.order <= 256:
        report = check_axioms(T)
        if not report.ok:
            raise ArgumentError(f"g does not define a ring: {report.axiom} at {report.witness}")
    R = skew_poly_ring(PolySpec(S, modulus, twist, (relation,)), capacity,
                       name=name, construction=tag)
    if R.order != p ** (n * r):
        raise InvariantViolation(f"expected order {p ** (n * r)}, built {R.order}")
    if characteristic(R) != p ** k:
        raise InvariantViolation(f"expected characteristic {p ** k}")
    from .classify import is_chain

    if not is_chain(R).verdict:
        raise InvariantViolation("Eisenstein construction did not yield a chain ring")
    return R


__all__ = [
    "ConstructionTag", "PolySpec", "DEFAULT_CAPACITY", "zmod", "gf", "galois_ring",
    "trunc_skew", "witt2", "double", "matrix_ring", "ixy", "eisenstein_chain",
    "direct_sum", "skew_poly_ring", "frobenius", "default_irreducible",
    "irreducible_factor", "witt_carry_coefficients", "prime_power", "is_prime",
]
