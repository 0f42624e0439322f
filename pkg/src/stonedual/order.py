"""Finite preorders, posets and lattices.

Subsets of a structure are encoded as integer bitmasks over element
positions, so ``1 << i`` is the singleton of the ``i``-th element.  All
structures are immutable; derived tables are computed once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import BoundExceeded, InvalidOrder, NotAHomomorphism, NotALattice

MAX_IDEAL_SCAN = 20
MAX_ENUMERATED_LATTICE = 7
MAX_ENUMERATED_ORDER = 6


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def format_set(labels: Iterable) -> str:
    return "{" + ",".join(str(x) for x in labels) + "}"


def _transitive_closure(rows: list[int]) -> list[int]:
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        kbit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rk
    return rows


@dataclass(frozen=True)
class FinitePreorder:
    """A reflexive, transitive relation on labelled elements.

    ``up[i]`` is the bitmask of every ``j`` with ``elements[i] <= elements[j]``.
    """

    elements: tuple
    up: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise InvalidOrder("element labels must be pairwise distinct")
        if len(self.up) != len(self.elements):
            raise InvalidOrder("relation matrix does not match element count")
        full = (1 << len(self.elements)) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise InvalidOrder(f"row {i} refers to unknown elements")
            if not row >> i & 1:
                raise InvalidOrder(f"relation is not reflexive at {self.elements[i]!r}")
            for j in bits(row):
                if self.up[j] & ~row:
                    raise InvalidOrder(
                        f"relation is not transitive through {self.elements[j]!r}"
                    )

    @classmethod
    def from_pairs(cls, elements: Sequence[Hashable], pairs: Iterable[tuple]):
        """Build the reflexive-transitive closure of ``a <= b`` generators."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise InvalidOrder("element labels must be pairwise distinct")
        rows = [1 << i for i in range(len(elements))]
        for a, b in pairs:
            try:
                rows[index[a]] |= 1 << index[b]
            except KeyError as exc:
                raise InvalidOrder(f"unknown element {exc.args[0]!r}") from None
        return cls(elements, tuple(_transitive_closure(rows)))

    @classmethod
    def from_matrix(cls, elements: Sequence[Hashable], le: Sequence[Sequence[bool]]):
        rows = tuple(mask_of(j for j, v in enumerate(row) if v) for row in le)
        return cls(tuple(elements), rows)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.size
        for i, row in enumerate(self.up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, label) -> int:
        return self._index[label]

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.le(i, j) for j in range(self.size)] for i in range(self.size)]

    def is_antisymmetric(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(self.size))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_sets(self) -> list[int]:
        """All up-closed subsets, sorted by bitmask."""
        return _union_closure(self.up)

    def down_sets(self) -> list[int]:
        return _union_closure(self.down)

    def labels(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in bits(mask))

    def pairs(self) -> list[tuple]:
        """Strict and equivalence pairs ``(a, b)`` with ``a <= b``, ``a != b``."""
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.size)
            for j in bits(self.up[i])
            if i != j
        ]


class FinitePoset(FinitePreorder):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_antisymmetric():
            raise InvalidOrder("relation is not antisymmetric")


def _union_closure(generators: Iterable[int]) -> list[int]:
    family = {0}
    for g in generators:
        family |= {m | g for m in family}
    return sorted(family)


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice; meet and join tables are derived from the order.

    Finite lattices always have a least and greatest element, exposed as
    ``bottom``/``top`` (``has_min``/``has_max`` are kept for a uniform
    vocabulary with statements about lattices with minimum or maximum).
    """

    poset: FinitePoset
    meet: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    join: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    bottom: int = field(compare=False)
    top: int = field(compare=False)
    distributive: bool = field(compare=False)

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def full(self) -> int:
        return self.poset.full

    @property
    def has_min(self) -> bool:
        return True

    @property
    def has_max(self) -> bool:
        return True

    def index(self, label) -> int:
        return self.poset.index(label)

    def le(self, i: int, j: int) -> bool:
        return self.poset.le(i, j)

    def __repr__(self):
        return f"FiniteLattice(elements={self.elements!r}, distributive={self.distributive})"


def _bound(rows: Sequence[int], a: int, b: int) -> int | None:
    common = rows[a] & rows[b]
    for g in bits(common):
        if rows[g] == common:
            return g
    return None


def lattice_from_poset(p: FinitePreorder) -> FiniteLattice:
    """Compute meet and join tables; raise NotALattice if some pair lacks one."""
    if not isinstance(p, FinitePoset):
        p = FinitePoset(p.elements, p.up)
    n = p.size
    if n == 0:
        raise NotALattice(None, None, "elements (a lattice is non-empty)")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = _bound(p.down, a, b)
            if m is None:
                raise NotALattice(p.elements[a], p.elements[b], "meet")
            j = _bound(p.up, a, b)
            if j is None:
                raise NotALattice(p.elements[a], p.elements[b], "join")
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j
    bottom = next(i for i in range(n) if p.up[i] == p.full)
    top = next(i for i in range(n) if p.down[i] == p.full)
    distributive = all(
        meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )
    return FiniteLattice(
        p,
        tuple(map(tuple, meet)),
        tuple(map(tuple, join)),
        bottom,
        top,
        distributive,
    )


def lattice_from_pairs(elements: Sequence[Hashable], pairs: Iterable[tuple]) -> FiniteLattice:
    return lattice_from_poset(FinitePoset.from_pairs(elements, pairs))


def chain(n: int, labels: Sequence | None = None) -> FiniteLattice:
    labels = tuple(range(n)) if labels is None else tuple(labels)
    return lattice_from_pairs(labels, zip(labels, labels[1:]))


def boolean_lattice(k: int) -> FiniteLattice:
    """The power set of a k-element set, elements labelled by bitmask."""
    elements = tuple(range(1 << k))
    rows = tuple(mask_of(j for j in elements if i & j == i) for i in elements)
    return lattice_from_poset(FinitePoset(elements, rows))


def diamond_m3() -> FiniteLattice:
    return lattice_from_pairs(
        ("0", "a", "b", "c", "1"),
        [("0", x) for x in "abc"] + [(x, "1") for x in "abc"],
    )


def pentagon_n5() -> FiniteLattice:
    return lattice_from_pairs(
        ("0", "a", "b", "c", "1"),
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


THETA = chain(1)


# --- ideals -----------------------------------------------------------------

def is_ideal(L: FiniteLattice, mask: int) -> bool:
    """Non-empty, down-closed and closed under binary joins."""
    if not mask:
        return False
    down = L.poset.down
    for i in bits(mask):
        if down[i] & ~mask:
            return False
        for j in bits(mask):
            if not mask >> L.join[i][j] & 1:
                return False
    return True


def is_prime_ideal(L: FiniteLattice, mask: int) -> bool:
    if mask == L.full or not is_ideal(L, mask):
        return False
    meet = L.meet
    outside = [i for i in range(L.size) if not mask >> i & 1]
    return not any(mask >> meet[a][b] & 1 for a in outside for b in outside)


@dataclass(frozen=True)
class IdealSet:
    carrier: int
    lattice: FiniteLattice = field(compare=False, repr=False)
    is_prime: bool = False

    @property
    def labels(self) -> tuple:
        return self.lattice.poset.labels(self.carrier)

    @property
    def label(self) -> str:
        return format_set(self.labels)

    def __contains__(self, element_index: int) -> bool:
        return bool(self.carrier >> element_index & 1)


def all_ideals(L: FiniteLattice) -> list[IdealSet]:
    """Every ideal of a finite lattice is principal: ideals are the ``down[a]``."""
    return [IdealSet(m, L, is_prime_ideal(L, m)) for m in sorted(set(L.poset.down))]


def enumerate_prime_ideals(L: FiniteLattice) -> list[IdealSet]:
    """Prime ideals of ``L`` sorted by carrier bitmask."""
    return [I for I in all_ideals(L) if I.is_prime]


def prime_ideals_by_scan(L: FiniteLattice) -> list[IdealSet]:
    """Exhaustive subset scan; independent of the principal-ideal shortcut."""
    if L.size > MAX_IDEAL_SCAN:
        raise BoundExceeded(f"subset scan limited to {MAX_IDEAL_SCAN} elements")
    return [IdealSet(m, L, True) for m in range(1 << L.size) if is_prime_ideal(L, m)]


@lru_cache(maxsize=None)
def prime_masks(L: FiniteLattice) -> tuple[int, ...]:
    return tuple(I.carrier for I in enumerate_prime_ideals(L))


# --- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class LatticeHom:
    """A meet- and join-preserving map given by its table of indices."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.size:
            raise ValueError("map table does not cover the source lattice")
        S, T, f = self.source, self.target, self.table
        for a in range(S.size):
            for b in range(a, S.size):
                if f[S.meet[a][b]] != T.meet[f[a]][f[b]]:
                    raise NotAHomomorphism(S.elements[a], S.elements[b], "meet")
                if f[S.join[a][b]] != T.join[f[a]][f[b]]:
                    raise NotAHomomorphism(S.elements[a], S.elements[b], "join")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def preimage(self, mask: int) -> int:
        return mask_of(i for i, v in enumerate(self.table) if mask >> v & 1)

    @cached_property
    def proper(self) -> bool:
        return all(is_prime_ideal(self.source, self.preimage(J)) for J in prime_masks(self.target))

    def then(self, other: "LatticeHom") -> "LatticeHom":
        """The composite ``other . self``."""
        return LatticeHom(self.source, other.target, tuple(other.table[v] for v in self.table))

    @classmethod
    def from_labels(cls, source, target, mapping: dict):
        return cls(source, target, tuple(target.index(mapping[x]) for x in source.elements))


def identity_hom(L: FiniteLattice) -> LatticeHom:
    return LatticeHom(L, L, tuple(range(L.size)))


def is_proper_hom(h: LatticeHom) -> bool:
    return h.proper


def lattice_homs(L: FiniteLattice, M: FiniteLattice) -> list[LatticeHom]:
    """All homomorphisms ``L -> M`` by backtracking with meet/join pruning."""
    n = L.size
    table = [-1] * n
    out = []

    def consistent(i):
        # every triple (a, b, a*b) is checked once all three images are known
        for a in range(i + 1):
            for b in range(a, i + 1):
                for res, op in ((L.meet[a][b], M.meet), (L.join[a][b], M.join)):
                    if res > i or i not in (a, b, res):
                        continue
                    if table[res] != op[table[a]][table[b]]:
                        return False
        return True

    def extend(i):
        if i == n:
            out.append(LatticeHom(L, M, tuple(table)))
            return
        for v in range(M.size):
            table[i] = v
            if consistent(i):
                extend(i + 1)
        table[i] = -1

    extend(0)
    return out


def proper_homs(L: FiniteLattice, M: FiniteLattice) -> list[LatticeHom]:
    return [h for h in lattice_homs(L, M) if h.proper]


# --- constructions ----------------------------------------------------------

def ordinal_sum(L: FiniteLattice, M: FiniteLattice) -> FiniteLattice:
    """Stack ``M`` on top of ``L``; elements are tagged ``(x, 0)`` and ``(y, 1)``."""
    n, k = L.size, M.size
    elements = tuple((x, 0) for x in L.elements) + tuple((y, 1) for y in M.elements)
    upper = ((1 << k) - 1) << n
    rows = [L.poset.up[i] | upper for i in range(n)]
    rows += [M.poset.up[j] << n for j in range(k)]
    return lattice_from_poset(FinitePoset(elements, tuple(rows)))


def add_top(L: FiniteLattice) -> FiniteLattice:
    return ordinal_sum(L, THETA)


# --- isomorphism ------------------------------------------------------------

def order_isomorphism(P: FinitePreorder, Q: FinitePreorder) -> tuple[int, ...] | None:
    """First order isomorphism ``P -> Q`` in canonical backtracking order.

    Candidates are restricted to elements with the same (in-degree,
    out-degree) signature.
    """
    n = P.size
    if n != Q.size:
        return None

    def signature(R, i):
        return (R.down[i].bit_count(), R.up[i].bit_count())

    sp = [signature(P, i) for i in range(n)]
    sq = [signature(Q, j) for j in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    f = [-1] * n
    used = 0

    def extend(i):
        nonlocal used
        if i == n:
            return True
        for j in range(n):
            if used >> j & 1 or sq[j] != sp[i]:
                continue
            if all(
                P.le(i, k) == Q.le(j, f[k]) and P.le(k, i) == Q.le(f[k], j)
                for k in range(i)
            ):
                f[i] = j
                used |= 1 << j
                if extend(i + 1):
                    return True
                used &= ~(1 << j)
        f[i] = -1
        return False

    return tuple(f) if extend(0) else None


def lattices_isomorphic(L: FiniteLattice, M: FiniteLattice) -> tuple[int, ...] | None:
    return order_isomorphism(L.poset, M.poset)


# --- enumeration ------------------------------------------------------------

def enumerate_preorders(n: int, antisymmetric: bool = False, natural: bool = False):
    """Yield every preorder (or partial order) on the labels ``0..n-1``.

    Orders are grown one element at a time: the new element ``x`` receives
    a down-set ``D`` and up-set ``U`` of the current order with ``d <= u``
    for all ``d in D``, ``u in U``.  With ``natural`` the new element is
    never placed below an old one, which yields one naturally labelled
    representative per poset (plus some duplicates up to isomorphism).
    """
    if n > MAX_ENUMERATED_ORDER:
        raise BoundExceeded(f"order enumeration limited to {MAX_ENUMERATED_ORDER} elements")
    level: list[tuple[int, ...]] = [()]
    for size in range(n):
        nxt = []
        bit = 1 << size
        for rows in level:
            p = FinitePreorder(tuple(range(size)), rows)
            downs = p.down_sets()
            ups = [0] if natural else p.up_sets()
            for D in downs:
                allowed = p.full
                for d in bits(D):
                    allowed &= rows[d]
                for U in ups:
                    if U & ~allowed:
                        continue
                    if antisymmetric and D & U:
                        continue
                    new_rows = [r | bit if D >> i & 1 else r for i, r in enumerate(rows)]
                    new_rows.append(U | bit)
                    nxt.append(tuple(new_rows))
        level = nxt
    cls = FinitePoset if antisymmetric else FinitePreorder
    for rows in level:
        yield cls(tuple(range(n)), rows)


def enumerate_posets(n: int):
    return enumerate_preorders(n, antisymmetric=True)


def enumerate_lattices(n: int, distributive_only: bool = False) -> list[FiniteLattice]:
    """Pairwise non-isomorphic lattices with at most ``n`` elements.

    Sorted by size, then by discovery order.  A lattice with ``k >= 2``
    elements is a poset on ``k - 2`` inner elements with a new bottom and
    top attached.
    """
    if n > MAX_ENUMERATED_LATTICE:
        raise BoundExceeded(f"lattice enumeration limited to {MAX_ENUMERATED_LATTICE} elements")
    found: list[FiniteLattice] = []
    if n >= 1:
        found.append(THETA)
    for k in range(2, n + 1):
        of_size: list[FiniteLattice] = []
        for inner in enumerate_preorders(k - 2, antisymmetric=True, natural=True):
            m = k - 2
            top_bit = 1 << (m + 1)
            rows = [(1 << (m + 2)) - 1]
            rows += [(r << 1) | top_bit for r in inner.up]
            rows.append(top_bit)
            try:
                L = lattice_from_poset(FinitePoset(tuple(range(k)), tuple(rows)))
            except NotALattice:
                continue
            if distributive_only and not L.distributive:
                continue
            if any(lattices_isomorphic(L, M) is not None for M in of_size):
                continue
            of_size.append(L)
        found.extend(of_size)
    return found


def enumerate_distributive_lattices(n: int) -> list[FiniteLattice]:
    """Pairwise non-isomorphic distributive lattices with at most ``n`` elements."""
    return enumerate_lattices(n, distributive_only=True)
