"""Slow, independent reference computations used to cross-check the library.

Everything here is plain Python over the raw tables (or plain integers) and
shares no code with ``ringplane`` beyond reading ``R.add`` / ``R.mul``.
"""
from itertools import product


def tables(R):
    return R.add.tolist(), R.mul.tolist(), R.zero, R.one


def brute_units(R):
    _, mul, _, one = tables(R)
    m = len(mul)
    return {a for a in range(m) if any(mul[a][b] == one and mul[b][a] == one for b in range(m))}


def brute_negation(R):
    add, _, zero, _ = tables(R)
    m = len(add)
    return [next(b for b in range(m) if add[a][b] == zero) for a in range(m)]


def brute_radical(R):
    """{x : 1 - a x b is a unit for all a, b}."""
    add, mul, _, one = tables(R)
    neg = brute_negation(R)
    u = brute_units(R)
    m = len(add)
    return {x for x in range(m)
            if all(add[one][neg[mul[mul[a][x]][b]]] in u for a in range(m) for b in range(m))}


def brute_zero_divisors(R):
    _, mul, zero, _ = tables(R)
    m = len(mul)
    return {a for a in range(m) if any(mul[a][b] == zero for b in range(1, m) if b != zero)
            or a == zero}


def brute_characteristic(R):
    add, _, zero, one = tables(R)
    k, x = 1, one
    while x != zero:
        x = add[x][one]
        k += 1
    return k


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _left_ideal_contains_one(R, triple):
    add, mul, zero, one = tables(R)
    m = len(add)
    span = {zero}
    gens = {mul[a][c] for a in range(m) for c in triple}
    frontier = list(gens)
    span |= gens
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                v = add[s][g]
                if v not in span:
                    span.add(v)
                    nxt.append(v)
        frontier = nxt
    return one in span


def brute_points(R):
    """Point classes as frozensets of triples, by explicit unit scaling."""
    _, mul, _, _ = tables(R)
    m = len(mul)
    u = sorted(brute_units(R))
    seen, classes = set(), []
    for t in product(range(m), repeat=3):
        if t in seen or not _left_ideal_contains_one(R, t):
            continue
        orbit = frozenset(tuple(mul[c][w] for c in t) for w in u)
        seen |= orbit
        classes.append(orbit)
    return classes


def brute_lines(R):
    _, mul, _, _ = tables(R)
    m = len(mul)
    u = sorted(brute_units(R))
    seen, classes = set(), []
    for t in product(range(m), repeat=3):
        if t in seen:
            continue
        # right unimodular: 1 in xR + yR + zR, i.e. left unimodular in the opposite ring
        gens = {mul[c][a] for a in range(m) for c in t}
        if not _closure_has_one(R, gens):
            continue
        orbit = frozenset(tuple(mul[w][c] for c in t) for w in u)
        seen |= orbit
        classes.append(orbit)
    return classes


def _closure_has_one(R, gens):
    add, _, zero, one = tables(R)
    span, frontier = {zero} | set(gens), list(gens)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                v = add[s][g]
                if v not in span:
                    span.add(v)
                    nxt.append(v)
        frontier = nxt
    return one in span


def brute_incidence(R, points, lines):
    add, mul, zero, _ = tables(R)
    out = []
    for P in points:
        x = min(P)
        row = []
        for L in lines:
            u = min(L)
            v = add[add[mul[u[0]][x[0]]][mul[u[1]][x[1]]]][mul[u[2]][x[2]]]
            row.append(v == zero)
        out.append(row)
    return out


def local_neighbors_mod_radical(R, a, b):
    """Points a, b of a local ring are neighbors iff a = b u mod J for a unit u."""
    add, mul, _, _ = tables(R)
    J = brute_radical(R)
    neg = brute_negation(R)
    return any(all(add[a[i]][neg[mul[b[i]][u]]] in J for i in range(3)) for u in brute_units(R))
