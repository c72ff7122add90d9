"""Built-in ring corpus and the exhaustive verification suite run over it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .classify import (
    classify_case,
    is_chain,
    is_local,
    is_pir,
    zero_divisor_local_test,
)
from .constructions import is_prime, prime_power
from .errors import ArgumentError, RingPlaneError
from .plane import build_plane, epimorphism_check, verify_theorems
from .ring import FiniteRing, check_axioms
from .ringspec import parse_spec

# explicit Eisenstein examples: (spec, order)
_EISENSTEIN = (
    ("eis:2,3,1,2,2,1,id[1]", 8),
    ("eis:2,4,1,2,2,2,id[1]", 16),
    ("eis:2,4,1,2,3,1,id[1]", 16),
)
_SUMS = (
    ("sum(zmod:2;zmod:4)", 8),
    ("sum(zmod:2;ts:2,2,id)", 8),
    ("sum(zmod:2;gf:2,2)", 8),
    ("sum(zmod:4;ts:2,2,id)", 16),
)


def _prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        try:
            out.append((q,) + prime_power(q))
        except ArgumentError:
            pass
    return out


def suite_corpus(max_order: int) -> list:
    """Deterministic list of ring specs of order at most ``max_order``.

    The only order-4 entries are gf:2,2, zmod:4, ts:2,2,id and double:2, one
    per isomorphism class.
    """
    if max_order < 4:
        raise ArgumentError("max_order must be at least 4")
    specs = []

    def add(spec, order):
        if order <= max_order and spec not in specs:
            specs.append(spec)

    for n in range(2, max_order + 1):
        add(f"zmod:{n}", n)
    pps = _prime_powers(max_order)
    for q, p, r in pps:
        if r >= 2:
            add(f"gf:{p},{r}", q)
    for q, p, r in pps:
        # galois rings with n >= 2; gr:p,n,1 of order 4 would duplicate zmod:4
        for n in range(2, 8):
            if q ** n <= max_order and q ** n > 4:
                add(f"gr:{p},{n},{r}", q ** n)
    for q, p, r in pps:
        for n in range(2, 8):
            for e in range(r):
                add(f"ts:{q},{n},{'id' if e == 0 else f'frob^{e}'}", q ** n)
    for q, p, r in pps:
        if q >= 3:
            add(f"witt:{q}", q * q)
    for q, _, _ in pps:
        add(f"double:{q}", q * q)
    for q, p, r in pps:
        for n in range(2, 4):
            add(f"ixy:{q},{n}", q ** (n + 1))
    for q, _, _ in pps:
        if is_prime(q):
            add(f"mat:2(gf:{q})", q ** 4)
    for spec, order in _EISENSTEIN + _SUMS:
        add(spec, order)
    return specs


@dataclass
class RingOutcome:
    spec: str
    order: int
    case: Optional[str]
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"ring": self.spec, "order": self.order, "case": self.case,
                "ok": self.ok, "checks": self.checks, "failures": self.failures}


@dataclass
class SuiteOutcome:
    max_order: int
    rings: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rings)

    def as_dict(self) -> dict:
        return {"max_order": self.max_order, "ok": self.ok,
                "rings": [r.as_dict() for r in self.rings]}


def mutate_ring(R: FiniteRing, seed: int) -> FiniteRing:
    """Copy of R with one multiplication entry changed, chosen from ``seed``.

    Any single changed product breaks the ring axioms, so a mutated corpus
    must fail verification.
    """
    m = R.order
    cell = seed % (m * m)
    a, b = divmod(cell, m)
    mul = R.mul.copy()
    mul[a, b] = (mul[a, b] + 1 + (seed // (m * m)) % (m - 1)) % m
    return FiniteRing(R.add.copy(), mul, R.zero, R.one, name=R.name)


def check_ring(spec: str, R: FiniteRing, budget=None) -> RingOutcome:
    """Run every ring-side and plane-side check on one ring."""
    out = RingOutcome(spec, R.order, None)

    def record(name, ok, detail=None):
        out.checks[name] = bool(ok)
        if not ok:
            out.failures.append({"check": name, "witness": detail})

    axioms = check_axioms(R)
    record("axioms", axioms.ok, None if axioms.ok else
           {"axiom": axioms.axiom, "elements": list(axioms.witness or ())})
    if not axioms.ok:
        return out
    try:
        report = classify_case(R)
        out.case = report.case
        chain = is_chain(R)
        record("chain_iff_local_pir", bool(chain) == (bool(is_local(R)) and bool(is_pir(R))))
        record("left_chain_iff_right_chain", chain.left == chain.right, chain.witness)
        zd = zero_divisor_local_test(R)
        record("zero_divisor_local_test",
               report.case == "field" or bool(zd) == bool(report.is_local),
               {"m": zd.m, "n": zd.n})
        plane = build_plane(R, budget=budget, spec=spec)
        inc, fn = plane.incidence, plane.flag_neighbors
        record("incidence_implies_flag_neighbor", not (inc & ~fn).any())
        theorems = verify_theorems(plane)
        for c in theorems.checks:
            if not c.skipped:
                record(c.name, c.agree, [list(w) for w in c.witness])
        if report.is_local:
            epi = epimorphism_check(plane)
            record("epimorphism", epi.ok)
    except RingPlaneError as exc:
        record("exception", False, f"{type(exc).__name__}: {exc}")
    return out


def run_suite(max_order: int = 16, mutate: Optional[int] = None, budget=None) -> SuiteOutcome:
    """Verify every corpus ring; ``mutate`` corrupts one ring as a harness check."""
    specs = suite_corpus(max_order)
    results = []
    target = None if mutate is None else mutate % len(specs)
    for i, spec in enumerate(specs):
        R = parse_spec(spec)
        if i == target:
            R = mutate_ring(R, mutate)
            spec = f"{spec} (mutated)"
        results.append(check_ring(spec, R, budget))
    return SuiteOutcome(max_order, results)
