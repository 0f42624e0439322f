"""Finite topological spaces given by explicit open families.

Every finite space is Alexandroff: its opens are exactly the up-sets of
the specialization preorder (``x <= y`` iff ``x`` lies in the closure of
``y``).  Most structural questions are answered through that preorder.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Hashable, Iterable, Sequence

from .errors import (
    BoundExceeded,
    MissingEmpty,
    MissingFull,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    TopologyError,
)
from .order import (
    FiniteLattice,
    FinitePoset,
    FinitePreorder,
    bits,
    enumerate_preorders,
    format_set,
    lattice_from_poset,
    mask_of,
    order_isomorphism,
)

MAX_ENUMERATED_POINTS = 5


@dataclass(frozen=True)
class FiniteSpace:
    """Points plus the family of open sets as sorted, deduplicated bitmasks."""

    points: tuple
    opens: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise TopologyError("point labels must be pairwise distinct")
        if list(self.opens) != sorted(set(self.opens)):
            object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))
        _check_topology(self.opens, self.full)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.opens)

    @cached_property
    def open_index(self) -> dict:
        return {U: i for i, U in enumerate(self.opens)}

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full ^ U for U in self.opens))

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    def is_closed(self, mask: int) -> bool:
        return (self.full ^ mask) in self.open_set

    def index(self, label) -> int:
        return self.points.index(label)

    def labels(self, mask: int) -> tuple:
        return tuple(self.points[i] for i in bits(mask))

    def format(self, mask: int) -> str:
        return format_set(self.labels(mask))

    @cached_property
    def minimal_open(self) -> tuple[int, ...]:
        """Smallest open neighbourhood of each point."""
        out = []
        for x in range(self.size):
            m = self.full
            for U in self.opens:
                if U >> x & 1:
                    m &= U
            out.append(m)
        return tuple(out)

    def closure(self, mask: int) -> int:
        """Smallest closed superset: complement of the opens missing ``mask``."""
        out = 0
        for U in self.opens:
            if not U & mask:
                out |= U
        return self.full ^ out

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        return tuple(self.closure(1 << x) for x in range(self.size))

    def interior(self, mask: int) -> int:
        out = 0
        for U in self.opens:
            if U & ~mask == 0:
                out |= U
        return out

    @classmethod
    def from_labels(cls, points: Sequence[Hashable], opens: Iterable[Iterable]):
        return validate_topology(points, opens)


def _check_topology(opens: Sequence[int], full: int) -> None:
    present = set(opens)
    if 0 not in present:
        raise MissingEmpty()
    if full not in present:
        raise MissingFull()
    for i, u in enumerate(opens):
        for v in opens[i + 1:]:
            if u | v not in present:
                raise NotClosedUnderUnion(u, v)
            if u & v not in present:
                raise NotClosedUnderIntersection(u, v)


def validate_topology(points: Sequence[Hashable], opens: Iterable[Iterable]) -> FiniteSpace:
    """Check the open-set axioms for a family given by point labels."""
    points = tuple(points)
    index = {p: i for i, p in enumerate(points)}
    masks = []
    for U in opens:
        try:
            masks.append(mask_of(index[p] for p in U))
        except KeyError as exc:
            raise TopologyError(f"open set mentions unknown point {exc.args[0]!r}") from None
    masks = sorted(set(masks))
    full = (1 << len(points)) - 1
    try:
        _check_topology(masks, full)
    except (NotClosedUnderUnion, NotClosedUnderIntersection) as exc:
        u, v = (format_set(points[i] for i in bits(m)) for m in exc.pair)
        raise type(exc)(u, v) from None
    return FiniteSpace(points, tuple(masks))


# --- Alexandroff correspondence ----------------------------------------------

def alexandroff(p: FinitePreorder) -> FiniteSpace:
    """The space whose opens are all up-sets of ``p``."""
    return FiniteSpace(p.elements, tuple(p.up_sets()))


def specialization(X: FiniteSpace) -> FinitePreorder:
    """``x <= y`` iff ``x`` is in the closure of ``{y}``."""
    return FinitePreorder(X.points, X.minimal_open)


def subspace(X: FiniteSpace, mask: int) -> FiniteSpace:
    keep = list(bits(mask))
    pos = {x: i for i, x in enumerate(keep)}

    def reindex(U):
        return mask_of(pos[x] for x in bits(U & mask))

    return FiniteSpace(tuple(X.points[x] for x in keep), tuple(sorted({reindex(U) for U in X.opens})))


def trivial_compactification(X: FiniteSpace, label="ω") -> FiniteSpace:
    """Add one point whose only neighbourhood is the whole new space."""
    while label in X.points:
        label = f"{label}'"
    full = (1 << (X.size + 1)) - 1
    return FiniteSpace(X.points + (label,), X.opens + (full,))


def discrete(points: Sequence[Hashable]) -> FiniteSpace:
    n = len(points)
    return FiniteSpace(tuple(points), tuple(range(1 << n)))


def sierpinski(points=(1, 2)) -> FiniteSpace:
    """Two points; the first is open and generic."""
    return FiniteSpace(tuple(points), (0, 1, 3))


def enumerate_topologies(n: int, t0_only: bool = False) -> list[FiniteSpace]:
    """All topologies on the labelled points ``0..n-1``."""
    if n > MAX_ENUMERATED_POINTS:
        raise BoundExceeded(f"topology enumeration limited to {MAX_ENUMERATED_POINTS} points")
    return [alexandroff(p) for p in enumerate_preorders(n, antisymmetric=t0_only)]


# --- irreducible closed sets -------------------------------------------------

def irreducible_closed_sets(X: FiniteSpace) -> list[int]:
    """Non-empty closed sets that are not a union of two proper closed subsets."""
    closed = X.closed_sets
    out = []
    for F in closed:
        if not F:
            continue
        parts = [G for G in closed if G != F and G & ~F == 0]
        if not any(G | H == F for i, G in enumerate(parts) for H in parts[i:]):
            out.append(F)
    return out


def generic_points(X: FiniteSpace, F: int) -> list[int]:
    """Points whose closure is exactly ``F``."""
    return [x for x, c in enumerate(X.point_closures) if c == F]


# --- predicates --------------------------------------------------------------

@dataclass(frozen=True)
class PredicateProfile:
    t0: bool
    sober: bool
    almost_sober: bool
    coherent: bool
    compact: bool
    empty_fundamental: bool
    ra_space: bool
    balbes_dwinger: bool
    up_spectral: bool
    down_spectral: bool
    almost_spectral: bool
    spectral: bool

    @classmethod
    def derive(cls, *, t0, sober, almost_sober, coherent, compact, empty_fundamental, ra_space):
        up = coherent and sober
        return cls(
            t0=t0,
            sober=sober,
            almost_sober=almost_sober,
            coherent=coherent,
            compact=compact,
            empty_fundamental=empty_fundamental,
            ra_space=ra_space,
            balbes_dwinger=t0 and coherent and almost_sober,
            up_spectral=up,
            down_spectral=t0 and coherent and compact and almost_sober,
            almost_spectral=up,
            spectral=sober and coherent and compact,
        )

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)

    @classmethod
    def flag_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def violations(self) -> list[str]:
        """Implications between the classes that this profile breaks."""
        bad = []
        checks = [
            ("spectral => up_spectral and down_spectral", not self.spectral or (self.up_spectral and self.down_spectral)),
            ("up or down => balbes_dwinger", not (self.up_spectral or self.down_spectral) or self.balbes_dwinger),
            ("balbes_dwinger => ra_space and t0", not self.balbes_dwinger or (self.ra_space and self.t0)),
            ("sober => almost_sober and t0", not self.sober or (self.almost_sober and self.t0)),
            ("almost_spectral <=> up_spectral", self.almost_spectral == self.up_spectral),
        ]
        for name, ok in checks:
            if not ok:
                bad.append(name)
        return bad


def is_t0(X: FiniteSpace) -> bool:
    return len(set(X.point_closures)) == X.size


def t0_witness(X: FiniteSpace) -> tuple[int, int] | None:
    seen = {}
    for x, c in enumerate(X.point_closures):
        if c in seen:
            return seen[c], x
        seen[c] = x
    return None


def sober_witness(X: FiniteSpace) -> int | None:
    """An irreducible closed set without a unique generic point, if any."""
    for F in irreducible_closed_sets(X):
        if len(generic_points(X, F)) != 1:
            return F
    return None


def almost_sober_witness(X: FiniteSpace) -> int | None:
    for F in irreducible_closed_sets(X):
        if F != X.full and not generic_points(X, F):
            return F
    return None


def is_compact_open(X: FiniteSpace, U: int) -> bool:
    """Alexandroff form of compactness: ``U`` is the up-closure of its minimal points."""
    spec = X.minimal_open
    minimal = [x for x in bits(U) if not any(spec[y] >> x & 1 and not spec[x] >> y & 1 for y in bits(U))]
    cover = 0
    for x in minimal:
        cover |= spec[x]
    return cover == U


def compact_opens(X: FiniteSpace, audit: bool = False) -> list[int]:
    if not audit:
        # every open set of a finite space is compact
        return list(X.opens)
    return [U for U in X.opens if is_compact_open(X, U)]


def is_coherent(X: FiniteSpace, audit: bool = False) -> bool:
    """Compact opens form a basis closed under pairwise intersection."""
    if not audit:
        return True
    K = compact_opens(X, audit=True)
    Kset = set(K)
    for U in X.opens:
        cover = 0
        for V in K:
            if V & ~U == 0:
                cover |= V
        if cover != U:
            return False
    return all(U & V in Kset for U in K for V in K)


def is_compact(X: FiniteSpace, audit: bool = False) -> bool:
    if not audit:
        return True
    return is_compact_open(X, X.full)


def empty_is_fundamental(X: FiniteSpace, audit: bool = False) -> bool:
    """Every family of non-empty compact opens with the finite intersection
    property has non-empty intersection.

    The audit form checks that every non-empty compact open meets the finite
    set of maximal points, which makes any such family meet there.
    """
    if not audit:
        return True
    spec = X.minimal_open
    maximal = mask_of(x for x in range(X.size) if all(spec[y] >> x & 1 for y in bits(spec[x])))
    return all(U & maximal for U in compact_opens(X, audit=True) if U)


def fundamental_sets(X: FiniteSpace, audit: bool = False) -> list[int]:
    out = [U for U in compact_opens(X, audit) if U]
    if empty_is_fundamental(X, audit):
        out.append(0)
    return sorted(out)


def is_ra_space(X: FiniteSpace, audit: bool = False) -> bool:
    """Coherent, and the fundamental sets form a sub-lattice of the power set."""
    if not is_coherent(X, audit):
        return False
    F = set(fundamental_sets(X, audit))
    return all(U | V in F and U & V in F for U in F for V in F)


def classify(X: FiniteSpace, audit: bool = False) -> PredicateProfile:
    """Predicate profile of a finite space.

    Compactness, coherence and fundamentality of the empty set hold for
    every finite space, so by default they are constants; ``audit=True``
    recomputes them from their definitions.  T0, soberness and
    almost-soberness are always computed from the closed sets.
    """
    t0 = is_t0(X)
    return PredicateProfile.derive(
        t0=t0,
        sober=sober_witness(X) is None,
        almost_sober=almost_sober_witness(X) is None,
        coherent=is_coherent(X, audit),
        compact=is_compact(X, audit),
        empty_fundamental=empty_is_fundamental(X, audit),
        ra_space=is_ra_space(X, audit),
    )


def explain(X: FiniteSpace, profile: PredicateProfile | None = None) -> dict[str, str]:
    """Human-readable witnesses for every false flag of ``classify(X)``."""
    profile = profile or classify(X)
    out = {}
    if not profile.t0:
        i, j = t0_witness(X)
        out["t0"] = (
            f"points {X.points[i]} and {X.points[j]} have the same closure "
            f"{X.format(X.point_closures[i])}"
        )
    if not profile.sober:
        F = sober_witness(X)
        gens = generic_points(X, F)
        out["sober"] = (
            f"irreducible closed set {X.format(F)} is the closure of "
            + ("no point" if not gens else f"{len(gens)} points {format_set(X.points[g] for g in gens)}")
        )
    if not profile.almost_sober:
        out["almost_sober"] = f"proper irreducible closed set {X.format(almost_sober_witness(X))} has no generic point"
    for name in ("balbes_dwinger", "up_spectral", "down_spectral", "almost_spectral", "spectral"):
        if not getattr(profile, name):
            missing = [m for m in _REQUIRES[name] if not getattr(profile, m)]
            out[name] = "fails " + ", ".join(missing)
    return out


_REQUIRES = {
    "balbes_dwinger": ("t0", "coherent", "almost_sober"),
    "up_spectral": ("coherent", "sober"),
    "almost_spectral": ("coherent", "sober"),
    "down_spectral": ("t0", "coherent", "compact", "almost_sober"),
    "spectral": ("sober", "coherent", "compact"),
}


# --- fundamental lattice -----------------------------------------------------

@lru_cache(maxsize=4096)
def fundamental_lattice(X: FiniteSpace) -> FiniteLattice:
    """The lattice of fundamental sets ordered by inclusion.

    On a finite space these are all the opens, so element ``i`` of the
    result is the open set ``X.opens[i]``; labels are the formatted sets.
    """
    opens = X.opens
    rows = tuple(mask_of(j for j, V in enumerate(opens) if U & ~V == 0) for U in opens)
    return lattice_from_poset(FinitePoset(tuple(X.format(U) for U in opens), rows))


# --- maps --------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.size or any(
            not 0 <= v < self.target.size for v in self.table
        ):
            raise ValueError("map table must send every source point to a target point")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def image(self, mask: int) -> int:
        return mask_of(self.table[x] for x in bits(mask))

    def preimage(self, mask: int) -> int:
        return mask_of(x for x, y in enumerate(self.table) if mask >> y & 1)

    def then(self, other: "SpaceMap") -> "SpaceMap":
        """The composite ``other . self``."""
        return SpaceMap(self.source, other.target, tuple(other.table[y] for y in self.table))

    @property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def surjective(self) -> bool:
        return len(set(self.table)) == self.target.size

    @classmethod
    def from_labels(cls, source, target, mapping: dict):
        return cls(source, target, tuple(target.index(mapping[p]) for p in source.points))


def identity_map(X: FiniteSpace) -> SpaceMap:
    return SpaceMap(X, X, tuple(range(X.size)))


def is_continuous(f: SpaceMap) -> bool:
    return all(f.source.is_open(f.preimage(V)) for V in f.target.opens)


def is_strongly_continuous(f: SpaceMap) -> bool:
    """Continuous, and preimages of fundamental sets are fundamental.

    For finite spaces the second clause follows from the first (every open
    set is fundamental); it is still evaluated.
    """
    if not is_continuous(f):
        return False
    source_fund = set(fundamental_sets(f.source))
    return all(f.preimage(F) in source_fund for F in fundamental_sets(f.target))


def is_homeomorphism(f: SpaceMap) -> bool:
    if not (f.injective and f.surjective):
        return False
    return {f.preimage(V) for V in f.target.opens} == f.source.open_set


def continuous_maps(X: FiniteSpace, Y: FiniteSpace) -> list[SpaceMap]:
    """All continuous maps, i.e. maps monotone for the specialization orders."""
    n = X.size
    sx, sy = X.minimal_open, Y.minimal_open
    table = [-1] * n
    out = []

    def extend(i):
        if i == n:
            f = SpaceMap(X, Y, tuple(table))
            if is_continuous(f):
                out.append(f)
            return
        for v in range(Y.size):
            ok = True
            for j in range(i):
                if sx[j] >> i & 1 and not sy[table[j]] >> v & 1:
                    ok = False
                    break
                if sx[i] >> j & 1 and not sy[v] >> table[j] & 1:
                    ok = False
                    break
            if ok:
                table[i] = v
                extend(i + 1)
        table[i] = -1

    extend(0)
    return out


def strongly_continuous_maps(X: FiniteSpace, Y: FiniteSpace) -> list[SpaceMap]:
    return [f for f in continuous_maps(X, Y) if is_strongly_continuous(f)]


def are_homeomorphic(X: FiniteSpace, Y: FiniteSpace, audit: bool = False) -> tuple[int, ...] | None:
    """A homeomorphism ``X -> Y`` as a point table, or None.

    Uses an isomorphism of specialization preorders; with ``audit`` and at
    most three points the answer is cross-checked by direct search over
    bijections of the open families.
    """
    witness = order_isomorphism(specialization(X), specialization(Y))
    if witness is not None and not is_homeomorphism(SpaceMap(X, Y, witness)):
        raise AssertionError("specialization isomorphism is not a homeomorphism")
    if audit and X.size <= 3:
        direct = None
        if X.size == Y.size and len(X.opens) == len(Y.opens):
            for perm in permutations(range(Y.size)):
                if is_homeomorphism(SpaceMap(X, Y, perm)):
                    direct = perm
                    break
        if (direct is None) != (witness is None):
            raise AssertionError("homeomorphism shortcut disagrees with direct search")
    return witness


def closure_of_image(f: SpaceMap, F: int) -> int:
    return f.target.closure(f.image(F))
