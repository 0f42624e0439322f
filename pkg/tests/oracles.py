"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's enumeration or search code; each
function works straight from the definitions over explicit sets.
"""
from __future__ import annotations

from itertools import combinations, permutations, product


def relations(n):
    """Every reflexive relation on ``range(n)`` as a frozenset of pairs."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = {(i, i) for i in range(n)}
    for choice in product((False, True), repeat=len(off)):
        yield frozenset(diag | {p for p, c in zip(off, choice) if c})


def is_transitive(r):
    return all((a, d) in r for a, b in r for c, d in r if b == c)


def is_antisymmetric(r):
    return all(a == b or (b, a) not in r for a, b in r)


def preorders_by_relation(n):
    return [r for r in relations(n) if is_transitive(r)]


def posets_by_relation(n):
    """Posets on ``range(n)``: extend each poset on ``n - 1`` points by every choice of new pairs."""
    if n == 0:
        return [frozenset()]
    new = n - 1
    extra = [(i, new) for i in range(new)] + [(new, i) for i in range(new)]
    out = []
    for r in posets_by_relation(n - 1):
        for choice in product((False, True), repeat=len(extra)):
            s = r | {(new, new)} | {p for p, c in zip(extra, choice) if c}
            if is_antisymmetric(s) and is_transitive(s):
                out.append(frozenset(s))
    return out


def topologies_by_subsets(n):
    """Families of subsets of ``range(n)`` containing both bounds and closed under union and intersection."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []

    def closed(fam):
        return all(u | v in fam and u & v in fam for u in fam for v in fam)

    for choice in product((False, True), repeat=len(middle)):
        fam = {0, full} | {m for m, c in zip(middle, choice) if c}
        if closed(fam):
            out.append(frozenset(fam))
    return out


def subsets(mask_bits):
    """All sub-bitmasks of a list of positions."""
    for k in range(len(mask_bits) + 1):
        for c in combinations(mask_bits, k):
            m = 0
            for i in c:
                m |= 1 << i
            yield m


def lattice_prime_ideals(elements, le):
    """Prime ideals from the order relation alone (meets and joins found by search)."""
    n = len(elements)

    def glb(a, b):
        lower = [c for c in range(n) if le(c, a) and le(c, b)]
        return next(c for c in lower if all(le(d, c) for d in lower))

    def lub(a, b):
        upper = [c for c in range(n) if le(a, c) and le(b, c)]
        return next(c for c in upper if all(le(c, d) for d in upper))

    out = []
    for m in range(1, (1 << n) - 1):
        inside = [i for i in range(n) if m >> i & 1]
        if any(not m >> j & 1 for i in inside for j in range(n) if le(j, i)):
            continue
        if any(not m >> lub(a, b) & 1 for a in inside for b in inside):
            continue
        if any(m >> glb(a, b) & 1 and not (m >> a & 1 or m >> b & 1) for a in range(n) for b in range(n)):
            continue
        out.append(m)
    return out


def ring_ideals_by_scan(n, add, mul):
    """Ideals of a ring on ``range(n)`` by scanning all subsets containing zero."""
    zero = next(z for z in range(n) if all(add[z][x] == x for x in range(n)))
    out = []
    for m in range(1 << n):
        if not m >> zero & 1:
            continue
        inside = [i for i in range(n) if m >> i & 1]
        if all(m >> add[a][b] & 1 for a in inside for b in inside) and all(
            m >> mul[r][a] & 1 for r in range(n) for a in inside
        ):
            # finite: closure under + gives a subgroup
            out.append(m)
    return out


def ring_prime_ideals_by_scan(n, add, mul):
    full = (1 << n) - 1
    out = []
    for m in ring_ideals_by_scan(n, add, mul):
        if m == full:
            continue
        if all(not m >> mul[a][b] & 1 or m >> a & 1 or m >> b & 1 for a in range(n) for b in range(n)):
            out.append(m)
    return out


def homeomorphisms(points_a, opens_a, points_b, opens_b):
    """Bijections that carry the open family of A exactly onto that of B."""
    n = len(points_a)
    if n != len(points_b) or len(opens_a) != len(opens_b):
        return []
    target = set(opens_b)
    found = []
    for perm in permutations(range(n)):
        image = {sum(1 << perm[i] for i in range(n) if U >> i & 1) for U in opens_a}
        if image == target:
            found.append(perm)
    return found


def down_set_count(n, r):
    """Number of down-sets of a relation on ``range(n)``."""
    count = 0
    for m in range(1 << n):
        if all(not m >> b & 1 or m >> a & 1 for a, b in r):
            count += 1
    return count


def canonical_relation(n, r):
    return min(tuple(sorted((p[a], p[b]) for a, b in r)) for p in permutations(range(n)))


def distributive_counts_birkhoff(max_size):
    """Distributive lattices with ``k`` elements correspond to posets with ``k`` down-sets.

    Returns the number of isomorphism classes for each ``k <= max_size``.
    """
    counts = {k: 0 for k in range(1, max_size + 1)}
    for n in range(0, max_size):
        seen = set()
        for r in posets_by_relation(n):
            key = canonical_relation(n, r)
            if key in seen:
                continue
            seen.add(key)
            k = down_set_count(n, r)
            if k <= max_size:
                counts[k] += 1
    return counts
