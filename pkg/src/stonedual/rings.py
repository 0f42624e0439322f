"""Finite commutative rings, not necessarily unital, and their prime spectra."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Hashable, Sequence

from .duality import SpectrumSpace, _spectrum
from .errors import AxiomViolation, BoundExceeded, NotAnIdeal, NotAnIdealOf
from .order import bits, format_set, mask_of
from .topology import FiniteSpace, SpaceMap, is_homeomorphism, subspace

MAX_RING = 256


@dataclass(frozen=True)
class FiniteCommRing:
    """A finite commutative ring given by addition and multiplication tables.

    ``modulus`` is set when the ring is known to be ``Z/n`` with element
    ``i`` standing for the residue ``i``; it enables the prime fast path.
    """

    elements: tuple
    add: tuple[tuple[int, ...], ...] = field(repr=False)
    mul: tuple[tuple[int, ...], ...] = field(repr=False)
    zero: int = 0
    modulus: int | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def identity(self) -> int | None:
        n = self.size
        for e in range(n):
            if all(self.mul[e][x] == x for x in range(n)):
                return e
        return None

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(next(y for y in range(self.size) if self.add[x][y] == self.zero) for x in range(self.size))

    @cached_property
    def characteristic(self) -> int:
        """Least ``m >= 1`` with ``m * x = 0`` for every ``x``."""
        m = 1
        for x in range(self.size):
            k, acc = 1, x
            while acc != self.zero:
                acc = self.add[acc][x]
                k += 1
            m = m * k // gcd(m, k)
        return m

    def multiple(self, k: int, x: int) -> int:
        acc = self.zero
        for _ in range(k % self.characteristic):
            acc = self.add[acc][x]
        return acc

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, label) -> int:
        return self._index[label]

    def format(self, mask: int) -> str:
        return format_set(self.elements[i] for i in bits(mask))

    def __repr__(self):
        kind = f"Z/{self.modulus}" if self.modulus else f"{self.size} elements"
        return f"FiniteCommRing({kind}, identity={self.identity is not None})"


def check_ring_axioms(A: FiniteCommRing) -> None:
    """Raise AxiomViolation naming the first failing element triple."""
    n, add, mul, z = A.size, A.add, A.mul, A.zero
    el = A.elements
    if len(add) != n or len(mul) != n or any(len(r) != n for r in add + mul):
        raise AxiomViolation("tables are square", (n,))
    for x in range(n):
        for y in range(n):
            if not (0 <= add[x][y] < n and 0 <= mul[x][y] < n):
                raise AxiomViolation("closure", (el[x], el[y]))
            if add[x][y] != add[y][x]:
                raise AxiomViolation("addition is commutative", (el[x], el[y]))
            if mul[x][y] != mul[y][x]:
                raise AxiomViolation("multiplication is commutative", (el[x], el[y]))
    for x in range(n):
        if add[z][x] != x:
            raise AxiomViolation("zero is additive identity", (el[x],))
        if not any(add[x][y] == z for y in range(n)):
            raise AxiomViolation("additive inverse exists", (el[x],))
    for x in range(n):
        for y in range(n):
            axy, mxy = add[x], mul[x]
            for w in range(n):
                if add[axy[y]][w] != add[x][add[y][w]]:
                    raise AxiomViolation("addition is associative", (el[x], el[y], el[w]))
                if mul[mxy[y]][w] != mul[x][mul[y][w]]:
                    raise AxiomViolation("multiplication is associative", (el[x], el[y], el[w]))
                if mul[x][add[y][w]] != add[mxy[y]][mxy[w]]:
                    raise AxiomViolation("distributivity", (el[x], el[y], el[w]))


def from_tables(elements: Sequence[Hashable], add, mul, validate: bool = True) -> FiniteCommRing:
    elements = tuple(elements)
    add = tuple(tuple(r) for r in add)
    mul = tuple(tuple(r) for r in mul)
    n = len(elements)
    zero = next((z for z in range(n) if all(add[z][x] == x for x in range(n))), None)
    if zero is None:
        raise AxiomViolation("zero exists", ())
    A = FiniteCommRing(elements, add, mul, zero)
    if validate:
        check_ring_axioms(A)
    return A


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteCommRing:
    """``Z/n`` with residues ``0..n-1``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    r = range(n)
    return FiniteCommRing(
        tuple(r),
        tuple(tuple((x + y) % n for y in r) for x in r),
        tuple(tuple((x * y) % n for y in r) for x in r),
        0,
        modulus=n,
    )


def product(A: FiniteCommRing, B: FiniteCommRing) -> FiniteCommRing:
    """Componentwise ring on pairs; element ``(a, b)`` sits at ``a * |B| + b``."""
    m = B.size
    pairs = [(a, b) for a in range(A.size) for b in range(m)]
    return FiniteCommRing(
        tuple((A.elements[a], B.elements[b]) for a, b in pairs),
        tuple(tuple(A.add[a][c] * m + B.add[b][d] for c, d in pairs) for a, b in pairs),
        tuple(tuple(A.mul[a][c] * m + B.mul[b][d] for c, d in pairs) for a, b in pairs),
        A.zero * m + B.zero,
    )


# --- ideals ------------------------------------------------------------------

def ideal_closure(A: FiniteCommRing, generators: int) -> int:
    """The smallest ideal containing the elements of ``generators``."""
    mask = 1 << A.zero
    todo = [x for x in bits(generators) if x != A.zero]
    for x in todo:
        mask |= 1 << x
    while todo:
        x = todo.pop()
        new = []
        for y in bits(mask):
            new.append(A.add[x][y])
        for r in range(A.size):
            new.append(A.mul[r][x])
        for v in new:
            if not mask >> v & 1:
                mask |= 1 << v
                todo.append(v)
    return mask


def is_ideal(A: FiniteCommRing, mask: int) -> bool:
    if not mask >> A.zero & 1:
        return False
    members = list(bits(mask))
    for x in members:
        if not mask >> A.neg[x] & 1:
            return False
        for y in members:
            if not mask >> A.add[x][y] & 1:
                return False
        for r in range(A.size):
            if not mask >> A.mul[r][x] & 1:
                return False
    return True


def is_prime_ideal(A: FiniteCommRing, mask: int) -> bool:
    """Proper, and ``ab in P`` forces ``a in P`` or ``b in P``."""
    if mask == A.full or not is_ideal(A, mask):
        return False
    outside = [x for x in range(A.size) if not mask >> x & 1]
    return not any(mask >> A.mul[a][b] & 1 for a in outside for b in outside)


def ideal_product(A: FiniteCommRing, I: int, J: int) -> int:
    return ideal_closure(A, mask_of(A.mul[a][b] for a in bits(I) for b in bits(J)))


@dataclass(frozen=True)
class RingIdeal:
    carrier: int
    ring: FiniteCommRing = field(compare=False, repr=False)
    is_prime: bool = False

    @property
    def label(self) -> str:
        return ideal_label(self.ring, self.carrier)

    def __contains__(self, x: int) -> bool:
        return bool(self.carrier >> x & 1)


def ideal_label(A: FiniteCommRing, mask: int) -> str:
    """``(g)`` for the first element generating the ideal, else the set."""
    for g in bits(mask):
        if ideal_closure(A, 1 << g) == mask:
            return f"({A.elements[g]})"
    return A.format(mask)


@lru_cache(maxsize=None)
def all_ideal_masks(A: FiniteCommRing) -> tuple[int, ...]:
    """Every ideal, grown from ``{0}`` by adjoining one generator at a time."""
    if A.size > MAX_RING:
        raise BoundExceeded(f"ideal enumeration limited to {MAX_RING} elements")
    seen = {1 << A.zero}
    frontier = [1 << A.zero]
    while frontier:
        nxt = []
        for I in frontier:
            for x in range(A.size):
                if I >> x & 1:
                    continue
                J = ideal_closure(A, I | 1 << x)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return tuple(sorted(seen))


def enumerate_ideals(A: FiniteCommRing) -> list[RingIdeal]:
    return [RingIdeal(m, A, is_prime_ideal(A, m)) for m in all_ideal_masks(A)]


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _prime_masks(A: FiniteCommRing) -> tuple[int, ...]:
    if A.modulus:
        n = A.modulus
        return tuple(sorted(mask_of(range(0, n, p)) for p in _prime_divisors(n)))
    return tuple(m for m in all_ideal_masks(A) if is_prime_ideal(A, m))


def enumerate_prime_ideals(A: FiniteCommRing) -> list[RingIdeal]:
    """Prime ideals sorted by carrier bitmask.

    ``Z/n`` uses the ideals ``(p)`` for primes ``p | n``; other rings use
    the elementwise test on every ideal (for commutative rings this agrees
    with the test on products of ideals, see ``prime_ideals_idealwise``).
    """
    return [RingIdeal(m, A, True) for m in _prime_masks(A)]


def prime_ideals_idealwise(A: FiniteCommRing) -> list[RingIdeal]:
    """Primes by the ideal-product definition: ``IJ <= P`` forces ``I <= P`` or ``J <= P``."""
    ideals = all_ideal_masks(A)
    out = []
    for P in ideals:
        if P == A.full:
            continue
        if all(
            I & ~P == 0 or J & ~P == 0
            for I in ideals
            for J in ideals
            if ideal_product(A, I, J) & ~P == 0
        ):
            out.append(RingIdeal(P, A, True))
    return out


def ideal_as_ring(A: FiniteCommRing, carrier: int) -> FiniteCommRing:
    """Restrict both tables of ``A`` to the ideal ``carrier``."""
    if not is_ideal(A, carrier):
        raise NotAnIdeal(f"{A.format(carrier)} is not an ideal")
    keep = list(bits(carrier))
    pos = {x: i for i, x in enumerate(keep)}
    return FiniteCommRing(
        tuple(A.elements[x] for x in keep),
        tuple(tuple(pos[A.add[x][y]] for y in keep) for x in keep),
        tuple(tuple(pos[A.mul[x][y]] for y in keep) for x in keep),
        pos[A.zero],
    )


# --- spectra -----------------------------------------------------------------

@lru_cache(maxsize=None)
def spec_ring(A: FiniteCommRing) -> SpectrumSpace:
    """Prime ideals with the Zariski topology generated by the sets ``D(a)``."""
    primes = enumerate_prime_ideals(A)
    basis = tuple(mask_of(p for p, P in enumerate(primes) if a not in P) for a in range(A.size))
    return _spectrum([P.label for P in primes], [P.carrier for P in primes], basis)


def V(A: FiniteCommRing, ideal: int) -> int:
    """Points of ``Spec(A)`` containing ``ideal``."""
    S = spec_ring(A)
    return mask_of(p for p, P in enumerate(S.ideals) if ideal & ~P == 0)


def d_identity_violations(A: FiniteCommRing) -> list[str]:
    """Element pairs breaking ``D(ab) = D(a) & D(b)`` or ``D(a+b) <= D(a) | D(b)``."""
    D = spec_ring(A).basis
    out = []
    for a in range(A.size):
        for b in range(A.size):
            if D[A.mul[a][b]] != D[a] & D[b]:
                out.append(f"D({A.elements[a]}*{A.elements[b]}) != D(a) & D(b)")
            if D[A.add[a][b]] & ~(D[a] | D[b]):
                out.append(f"D({A.elements[a]}+{A.elements[b]}) not inside D(a) | D(b)")
    return out


# --- quotients ---------------------------------------------------------------

def projection(A: FiniteCommRing, ideal: int) -> tuple[int, ...]:
    """Coset index of each element; cosets ordered by least representative."""
    if not is_ideal(A, ideal):
        raise NotAnIdeal(f"{A.format(ideal)} is not an ideal")
    coset_of = [-1] * A.size
    k = 0
    for x in range(A.size):
        if coset_of[x] >= 0:
            continue
        for i in bits(ideal):
            coset_of[A.add[x][i]] = k
        k += 1
    return tuple(coset_of)


def quotient(A: FiniteCommRing, ideal: int) -> FiniteCommRing:
    """``A/I`` labelled by least coset representatives."""
    pi = projection(A, ideal)
    reps = []
    for x, c in enumerate(pi):
        if c == len(reps):
            reps.append(x)
    modulus = A.modulus // ideal.bit_count() if A.modulus else None
    return FiniteCommRing(
        tuple(A.elements[r] for r in reps),
        tuple(tuple(pi[A.add[r][s]] for s in reps) for r in reps),
        tuple(tuple(pi[A.mul[r][s]] for s in reps) for r in reps),
        pi[A.zero],
        modulus=modulus,
    )


@dataclass
class ThetaReport:
    closed_set: int
    mapping: tuple[int, ...]
    bijective: bool
    homeomorphism: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.homeomorphism


def theta_audit(A: FiniteCommRing, ideal: int) -> ThetaReport:
    """``P -> P/I`` from ``V(I)`` to ``Spec(A/I)``."""
    pi = projection(A, ideal)
    Q = quotient(A, ideal)
    SA, SQ = spec_ring(A), spec_ring(Q)
    closed = V(A, ideal)
    index = {m: i for i, m in enumerate(SQ.ideals)}
    mapping = []
    for p in bits(closed):
        image = mask_of(pi[x] for x in bits(SA.ideals[p]))
        mapping.append(index.get(image, -1))
    bijective = -1 not in mapping and sorted(mapping) == list(range(SQ.space.size))
    homeo = False
    if bijective:
        sub = subspace(SA.space, closed)
        homeo = is_homeomorphism(SpaceMap(sub, SQ.space, tuple(mapping)))
    return ThetaReport(closed, tuple(mapping), bijective, homeo)


# --- unitalization -----------------------------------------------------------

def dorroh(S: FiniteCommRing) -> FiniteCommRing:
    """Pairs ``(k, s)`` with ``k`` in ``Z/char(S)``; ``(k,s)(l,t) = (kl, kt + ls + st)``.

    Identity ``(1, 0)``; ``S`` sits inside as the ideal ``{(0, s)}``.
    Element ``(k, s)`` is at position ``k * |S| + s``.
    """
    m, n = S.characteristic, S.size
    mult = [[S.multiple(k, t) for t in range(n)] for k in range(m)]
    pairs = [(k, s) for k in range(m) for s in range(n)]

    def add(p, q):
        (k, s), (l, t) = p, q
        return ((k + l) % m) * n + S.add[s][t]

    def mul(p, q):
        (k, s), (l, t) = p, q
        v = S.add[S.add[mult[k][t]][mult[l][s]]][S.mul[s][t]]
        return ((k * l) % m) * n + v

    return FiniteCommRing(
        tuple((k, S.elements[s]) for k, s in pairs),
        tuple(tuple(add(p, q) for q in pairs) for p in pairs),
        tuple(tuple(mul(p, q) for q in pairs) for p in pairs),
        S.zero,
    )


def dorroh_ideal(S: FiniteCommRing) -> int:
    """Carrier of the copy ``{(0, s)}`` of ``S`` inside ``dorroh(S)``."""
    return (1 << S.size) - 1


@dataclass
class EmbeddingReport:
    open_set: int
    mapping: tuple[int, ...]
    bijective: bool
    homeomorphism: bool
    dense: bool
    spec_s_size: int

    @property
    def ok(self) -> bool:
        return self.bijective and self.homeomorphism


def ideal_embedding_audit(R: FiniteCommRing, carrier: int) -> EmbeddingReport:
    """``P -> P & S`` from the open set ``V(S)^c`` of ``Spec(R)`` to ``Spec(S)``.

    ``dense`` reports whether that open set is dense; it is informational
    only and holds for some extensions but not others.
    """
    if not is_ideal(R, carrier):
        raise NotAnIdealOf(f"{R.format(carrier)} is not an ideal of the given ring")
    S = ideal_as_ring(R, carrier)
    keep = list(bits(carrier))
    pos = {x: i for i, x in enumerate(keep)}
    SR, SS = spec_ring(R), spec_ring(S)
    open_set = SR.space.full ^ V(R, carrier)
    index = {m: i for i, m in enumerate(SS.ideals)}
    mapping = []
    for p in bits(open_set):
        trace = mask_of(pos[x] for x in bits(SR.ideals[p] & carrier))
        mapping.append(index.get(trace, -1))
    bijective = -1 not in mapping and sorted(mapping) == list(range(SS.space.size))
    homeo = False
    if bijective:
        sub = subspace(SR.space, open_set)
        homeo = SR.space.is_open(open_set) and is_homeomorphism(SpaceMap(sub, SS.space, tuple(mapping)))
    dense = SR.space.closure(open_set) == SR.space.full
    return EmbeddingReport(open_set, tuple(mapping), bijective, homeo, dense, SS.space.size)


def multiples_ideal(n: int, d: int) -> int:
    """Carrier of ``dZ/nZ`` inside ``cyclic(n)``."""
    return mask_of(range(0, n, gcd(d, n) or n))
