"""Spectra of lattices, fundamental-set lattices and the adjunction between them.

``spec`` sends a distributive lattice to its prime spectrum and a proper
homomorphism to pulling back prime ideals; ``fundamental_lattice`` (F)
sends a space to its fundamental sets and a strongly continuous map to
taking preimages.  ``h_map`` and ``d_map`` compare an object with its
double dual, and ``lam`` is the bijection

    proper homs M -> F(X)   <->   strongly continuous maps X -> spec(M)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BoundExceeded, NotProper, NotStronglyContinuous
from .order import (
    FiniteLattice,
    LatticeHom,
    add_top,
    bits,
    enumerate_prime_ideals,
    format_set,
    lattices_isomorphic,
    mask_of,
    proper_homs,
)
from .topology import (
    FiniteSpace,
    SpaceMap,
    are_homeomorphic,
    classify,
    fundamental_lattice,
    is_homeomorphism,
    is_strongly_continuous,
    strongly_continuous_maps,
    subspace,
)

MAX_ADJUNCTION_LATTICE = 5
MAX_ADJUNCTION_POINTS = 4
MAX_SPEC_LATTICE = 128


@dataclass(frozen=True)
class SpectrumSpace:
    """A prime spectrum whose point ``i`` is the prime ideal ``ideals[i]``.

    ``basis[a]`` is the basic open set of primes not containing element
    ``a``, as a bitmask over the points.
    """

    space: FiniteSpace
    ideals: tuple[int, ...]
    basis: tuple[int, ...]

    @property
    def points(self) -> tuple:
        return self.space.points

    def point_of(self, ideal_mask: int) -> int:
        return self.ideals.index(ideal_mask)


def _spectrum(labels, ideals, basis) -> SpectrumSpace:
    n = len(ideals)
    full = (1 << n) - 1
    opens = {0, full}
    for b in basis:
        opens |= {U | b for U in opens}
    # the basis is closed under intersection, so unions of it form a topology
    return SpectrumSpace(FiniteSpace(tuple(labels), tuple(sorted(opens))), tuple(ideals), tuple(basis))


@lru_cache(maxsize=4096)
def spec_lattice(L: FiniteLattice) -> SpectrumSpace:
    """Prime ideals of ``L`` with the topology generated by the sets ``d(a)``."""
    if L.size > MAX_SPEC_LATTICE:
        raise BoundExceeded(f"spectra limited to lattices with {MAX_SPEC_LATTICE} elements")
    primes = enumerate_prime_ideals(L)
    basis = tuple(mask_of(p for p, I in enumerate(primes) if a not in I) for a in range(L.size))
    return _spectrum([I.label for I in primes], [I.carrier for I in primes], basis)


def d_of(L: FiniteLattice, a: int) -> int:
    return spec_lattice(L).basis[a]


# --- unit and counit ---------------------------------------------------------

def h_map(X: FiniteSpace) -> SpaceMap:
    """``x -> {F fundamental : x not in F}`` as a map ``X -> spec(F(X))``."""
    FX = fundamental_lattice(X)
    S = spec_lattice(FX)
    index = {m: i for i, m in enumerate(S.ideals)}
    table = []
    for x in range(X.size):
        ideal = mask_of(i for i, U in enumerate(X.opens) if not U >> x & 1)
        if ideal not in index:
            raise AssertionError(f"h({X.points[x]}) is not a prime ideal of F(X)")
        table.append(index[ideal])
    return SpaceMap(X, S.space, tuple(table))


@dataclass(frozen=True)
class HReport:
    h: SpaceMap = field(repr=False)
    injective: bool
    surjective: bool
    strongly_continuous: bool
    pulls_back_basis: bool
    homeomorphism: bool


def h_report(X: FiniteSpace) -> HReport:
    """Evaluate ``h_X`` and the facts established about it.

    ``pulls_back_basis`` records ``h*(d(F)) = F`` for every non-empty
    fundamental set ``F``.
    """
    h = h_map(X)
    S = spec_lattice(fundamental_lattice(X))
    pulls = all(h.preimage(S.basis[i]) == U for i, U in enumerate(X.opens) if U)
    return HReport(h, h.injective, h.surjective, is_strongly_continuous(h), pulls, is_homeomorphism(h))


def d_map(L: FiniteLattice) -> LatticeHom:
    """``a -> d(a)`` as a homomorphism ``L -> F(spec(L))``."""
    S = spec_lattice(L)
    FS = fundamental_lattice(S.space)
    index = S.space.open_index
    return LatticeHom(L, FS, tuple(index[b] for b in S.basis))


# --- functors on morphisms ---------------------------------------------------

def spec_hom(alpha: LatticeHom) -> SpaceMap:
    """``spec(alpha)``: pull a prime ideal of the target back along ``alpha``."""
    if not alpha.proper:
        raise NotProper("spec is only defined on proper homomorphisms")
    SM = spec_lattice(alpha.target)
    SL = spec_lattice(alpha.source)
    index = {m: i for i, m in enumerate(SL.ideals)}
    f = SpaceMap(SM.space, SL.space, tuple(index[alpha.preimage(J)] for J in SM.ideals))
    if not is_strongly_continuous(f):
        raise AssertionError("spec of a proper homomorphism is not strongly continuous")
    return f


def F_of_map(f: SpaceMap) -> LatticeHom:
    """``F(f)``: pull a fundamental set of the target back along ``f``."""
    if not is_strongly_continuous(f):
        raise NotStronglyContinuous("F is only defined on strongly continuous maps")
    FY = fundamental_lattice(f.target)
    FX = fundamental_lattice(f.source)
    index = f.source.open_index
    g = LatticeHom(FY, FX, tuple(index[f.preimage(V)] for V in f.target.opens))
    if not g.proper:
        raise AssertionError("F of a strongly continuous map is not proper")
    return g


# --- the adjunction ----------------------------------------------------------

def lam(M: FiniteLattice, X: FiniteSpace, alpha: LatticeHom) -> SpaceMap:
    """``spec(alpha) . h_X : X -> spec(M)``."""
    if alpha.source != M or alpha.target != fundamental_lattice(X):
        raise ValueError("alpha must be a homomorphism M -> F(X)")
    return h_map(X).then(spec_hom(alpha))


def lam_inverse(M: FiniteLattice, X: FiniteSpace, eps: SpaceMap) -> LatticeHom:
    """``F(eps) . d_M : M -> F(X)``."""
    if eps.source != X or eps.target != spec_lattice(M).space:
        raise ValueError("eps must be a map X -> spec(M)")
    return d_map(M).then(F_of_map(eps))


@dataclass(frozen=True)
class NaturalityFamily:
    """Test morphisms for the naturality squares.

    Every strongly continuous ``g: Y -> X`` with ``Y`` in ``spaces`` and
    every proper ``f: L -> M`` with ``L`` in ``lattices`` is used.
    """

    spaces: tuple[FiniteSpace, ...] = ()
    lattices: tuple[FiniteLattice, ...] = ()


@dataclass
class AdjunctionReport:
    hom_side: list[LatticeHom] = field(repr=False)
    map_side: list[SpaceMap] = field(repr=False)
    lambda_table: list[int]
    bijective: bool
    inverse_ok: bool
    naturality_ok: bool
    squares_checked: int = 0
    counterexample: str | None = None


def adjunction_audit(M: FiniteLattice, X: FiniteSpace, family: NaturalityFamily | None = None) -> AdjunctionReport:
    """Enumerate both hom-sets, check ``lam`` is a bijection and natural."""
    if M.size > MAX_ADJUNCTION_LATTICE or X.size > MAX_ADJUNCTION_POINTS:
        raise BoundExceeded(
            f"adjunction audit limited to |M| <= {MAX_ADJUNCTION_LATTICE}, |X| <= {MAX_ADJUNCTION_POINTS}"
        )
    family = family or NaturalityFamily()
    FX = fundamental_lattice(X)
    SM = spec_lattice(M)
    homs = proper_homs(M, FX)
    maps = strongly_continuous_maps(X, SM.space)
    map_index = {f.table: i for i, f in enumerate(maps)}
    images = [lam(M, X, a) for a in homs]
    table = [map_index.get(g.table, -1) for g in images]
    bijective = -1 not in table and sorted(table) == list(range(len(maps)))
    counter = None
    if not bijective:
        counter = f"lambda table {table} against {len(maps)} maps"

    inverse_ok = all(lam_inverse(M, X, lam(M, X, a)) == a for a in homs) and all(
        lam(M, X, lam_inverse(M, X, e)) == e for e in maps
    )
    if not inverse_ok and counter is None:
        counter = "lambda and its inverse do not compose to identities"

    checked = 0
    natural = True
    for Y in family.spaces:
        for g in strongly_continuous_maps(Y, X):
            Fg = F_of_map(g)
            for a, la in zip(homs, images):
                checked += 1
                if lam(M, Y, a.then(Fg)) != g.then(la):
                    natural = False
                    counter = counter or f"space square fails for g={g.table}, alpha={a.table}"
    for L in family.lattices:
        for f in proper_homs(L, M):
            sf = spec_hom(f)
            for a, la in zip(homs, images):
                checked += 1
                if lam(L, X, f.then(a)) != la.then(sf):
                    natural = False
                    counter = counter or f"lattice square fails for f={f.table}, alpha={a.table}"
    return AdjunctionReport(homs, maps, table, bijective, inverse_ok, natural, checked, counter)


# --- round trips -------------------------------------------------------------

@dataclass
class SpaceRoundtrip:
    expected_homeomorphic: bool
    h_is_homeomorphism: bool
    h_injective: bool
    h_surjective: bool
    homeomorphic: bool
    witness: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return (
            self.h_is_homeomorphism == self.expected_homeomorphic
            and self.homeomorphic == self.expected_homeomorphic
        )


def roundtrip_space_audit(X: FiniteSpace) -> SpaceRoundtrip:
    """``spec(F(X))`` against ``X``, with ``h_X`` as the candidate witness."""
    p = classify(X)
    rep = h_report(X)
    S = spec_lattice(fundamental_lattice(X))
    witness = are_homeomorphic(X, S.space)
    return SpaceRoundtrip(
        expected_homeomorphic=p.t0 and p.almost_sober,
        h_is_homeomorphism=rep.homeomorphism,
        h_injective=rep.injective,
        h_surjective=rep.surjective,
        homeomorphic=witness is not None,
        witness=rep.h.table if rep.homeomorphism else witness,
    )


@dataclass
class LatticeRoundtrip:
    d_injective: bool
    d_surjective: bool
    d_is_isomorphism: bool
    isomorphic: bool
    witness: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.d_is_isomorphism and self.isomorphic


def roundtrip_lattice_audit(L: FiniteLattice) -> LatticeRoundtrip:
    """``F(spec(L))`` against ``L``, with ``d`` as the candidate witness."""
    d = d_map(L)
    inj = len(set(d.table)) == L.size
    surj = len(set(d.table)) == d.target.size
    # a bijective lattice homomorphism is an order isomorphism
    iso = inj and surj
    witness = lattices_isomorphic(L, d.target)
    return LatticeRoundtrip(inj, surj, iso, witness is not None, d.table if iso else witness)


@dataclass
class OpenEmbedding:
    open_set: int
    open_labels: tuple
    embedding: tuple[int, ...]
    is_open: bool
    is_embedding: bool

    @property
    def ok(self) -> bool:
        return self.is_open and self.is_embedding


def open_embedding_audit(L: FiniteLattice) -> OpenEmbedding:
    """``spec(L)`` sits as an open subspace of ``spec(L + new top)``.

    A prime ideal of ``L`` is still a prime ideal after a new top is added;
    the image is the basic open set of the old top.
    """
    Lh = add_top(L)
    S, Sh = spec_lattice(L), spec_lattice(Lh)
    index = {m: i for i, m in enumerate(Sh.ideals)}
    # L occupies positions 0..|L|-1 of the ordinal sum, so carriers coincide
    emb = tuple(index[I] for I in S.ideals)
    image = mask_of(emb)
    sub = subspace(Sh.space, image)
    order = sorted(range(len(emb)), key=lambda i: emb[i])
    pos = {emb[i]: k for k, i in enumerate(order)}
    f = SpaceMap(S.space, sub, tuple(pos[e] for e in emb))
    return OpenEmbedding(
        open_set=image,
        open_labels=Sh.space.labels(image),
        embedding=emb,
        is_open=Sh.space.is_open(image),
        is_embedding=is_homeomorphism(f),
    )


def describe_spectrum(S: SpectrumSpace) -> str:
    X = S.space
    if not X.size:
        return "Spec is empty"
    lines = [f"points ({X.size}):"]
    lines += [f"  {p}" for p in X.points]
    lines.append(f"opens ({len(X.opens)}):")
    lines += [f"  {format_set(X.labels(U))}" for U in X.opens]
    return "\n".join(lines)
