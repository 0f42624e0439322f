"""Alexandroff spaces built from finitely many blocks.

A block is a finite preorder or one of the chain types omega (0<1<2<...),
omega_star (...<-2<-1), zeta (the integers) and eta (the rationals).
``below`` relates whole blocks: ``A below B`` puts every point of ``A``
under every point of ``B``.  Open sets are up-sets, closed sets down-sets.

The decision rules rest on four facts about an Alexandroff space:

* compact opens are the up-closures of finite sets;
* ``X`` is coherent iff ``up(x) & up(y)`` is compact for all ``x, y``;
* irreducible closed sets are the nonempty directed down-sets;
* the empty set is fundamental iff no maximal block lacks a top, because
  otherwise the cones above that block have the finite intersection
  property but meet in nothing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import HasInfiniteBlock, InvalidOrder, InvalidTemplate, UnknownPreset
from .order import FinitePreorder
from .topology import FiniteSpace, PredicateProfile, alexandroff


class BlockKind(str, Enum):
    FIN = "fin"
    OMEGA = "omega"
    OMEGA_STAR = "omega_star"
    ZETA = "zeta"
    ETA = "eta"

    @property
    def has_least(self) -> bool:
        return self in (BlockKind.FIN, BlockKind.OMEGA)

    @property
    def has_greatest(self) -> bool:
        # for Fin this depends on the payload; see Block.has_top
        return self is BlockKind.OMEGA_STAR


@dataclass(frozen=True)
class Block:
    name: str
    kind: BlockKind
    order: FinitePreorder | None = None

    def __post_init__(self):
        if (self.kind is BlockKind.FIN) != (self.order is not None):
            raise InvalidTemplate(f"block {self.name}: a finite payload goes with kind fin only")
        if self.order is not None and self.order.size == 0:
            raise InvalidTemplate(f"block {self.name}: finite block is empty")

    @property
    def finite(self) -> bool:
        return self.kind is BlockKind.FIN

    @property
    def has_top(self) -> bool:
        """A greatest point, or a greatest equivalence class."""
        if self.kind is BlockKind.FIN:
            o = self.order
            return any(o.down[i] == o.full for i in range(o.size))
        return self.kind is BlockKind.OMEGA_STAR


def fin(name: str, points: Sequence[Hashable], le: Iterable[tuple] = ()) -> Block:
    try:
        order = FinitePreorder.from_pairs(points, le)
    except InvalidOrder as e:
        raise InvalidTemplate(f"block {name}: {e}") from e
    return Block(name, BlockKind.FIN, order)


def chain_block(name: str, kind: BlockKind | str) -> Block:
    kind = BlockKind(kind)
    if kind is BlockKind.FIN:
        raise InvalidTemplate("use fin() for finite blocks")
    return Block(name, kind)


@dataclass(frozen=True)
class ChainTemplate:
    """Blocks plus a strict order between them; ``below`` is closed transitively."""

    blocks: tuple[Block, ...]
    below: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        names = [b.name for b in self.blocks]
        if len(set(names)) != len(names):
            raise InvalidTemplate("block names must be distinct")
        known = set(names)
        rel = set()
        for a, b in self.below:
            if a not in known or b not in known:
                raise InvalidTemplate(f"below mentions unknown block in ({a}, {b})")
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        for a, b in rel:
            if a == b:
                raise InvalidTemplate(f"below is not irreflexive: block {a} lies below itself")
        object.__setattr__(self, "below", frozenset(rel))

    @cached_property
    def by_name(self) -> dict[str, Block]:
        return {b.name: b for b in self.blocks}

    def is_below(self, a: str, b: str) -> bool:
        return (a, b) in self.below

    def blocks_below(self, name: str) -> list[Block]:
        return [b for b in self.blocks if self.is_below(b.name, name)]

    def blocks_above(self, name: str) -> list[Block]:
        return [b for b in self.blocks if self.is_below(name, b.name)]

    def minimal_within(self, group: Sequence[Block]) -> list[Block]:
        names = {b.name for b in group}
        return [b for b in group if not any(self.is_below(c, b.name) for c in names)]

    def maximal_blocks(self) -> list[Block]:
        return [b for b in self.blocks if not self.blocks_above(b.name)]

    @property
    def is_finite(self) -> bool:
        return all(b.finite for b in self.blocks)


# --- rules -------------------------------------------------------------------

def _t0(t: ChainTemplate) -> str | None:
    for b in t.blocks:
        if b.finite and not b.order.is_antisymmetric():
            o = b.order
            for i in range(o.size):
                for j in range(i + 1, o.size):
                    if o.le(i, j) and o.le(j, i):
                        return f"points {o.elements[i]} and {o.elements[j]} of block {b.name} have the same closure"
    return None


def _compact(t: ChainTemplate) -> str | None:
    for b in t.blocks:
        if not b.kind.has_least and not t.blocks_below(b.name):
            return f"block {b.name} ({b.kind.value}) has no least point and nothing below it"
    return None


def _cone_defect(t: ChainTemplate, cone: list[Block]) -> Block | None:
    for m in t.minimal_within(cone):
        if not m.kind.has_least:
            return m
    return None


def _coherent(t: ChainTemplate) -> str | None:
    bl = t.blocks
    for i, b in enumerate(bl):
        for c in bl[i + 1:]:
            if t.is_below(b.name, c.name) or t.is_below(c.name, b.name):
                continue
            cone = [w for w in bl if t.is_below(b.name, w.name) and t.is_below(c.name, w.name)]
            m = _cone_defect(t, cone)
            if m is not None:
                return (
                    f"the common upper set of blocks {b.name} and {c.name} starts at block "
                    f"{m.name} ({m.kind.value}), which has no least point, so it is not compact"
                )
    for b in bl:
        if not b.finite:
            continue
        o = b.order
        for x in range(o.size):
            for y in range(x + 1, o.size):
                if o.up[x] & o.up[y]:
                    continue
                m = _cone_defect(t, t.blocks_above(b.name))
                if m is not None:
                    return (
                        f"points {o.elements[x]} and {o.elements[y]} of block {b.name} share only the "
                        f"blocks above it, which start at {m.name} ({m.kind.value}) without a least point"
                    )
    return None


def _empty_fundamental(t: ChainTemplate) -> str | None:
    for b in t.maximal_blocks():
        if not b.finite and not b.kind.has_greatest:
            return f"maximal block {b.name} ({b.kind.value}) has no greatest point"
    return None


def _directed(t: ChainTemplate) -> str | None:
    tops = t.maximal_blocks()
    if len(tops) > 1:
        return f"blocks {tops[0].name} and {tops[1].name} are both maximal"
    if tops and tops[0].finite and not tops[0].has_top:
        return f"block {tops[0].name} is maximal and has no greatest class"
    return None


def _sober(t: ChainTemplate) -> str | None:
    w = _t0(t)
    if w:
        return w
    for b in t.blocks:
        if b.kind in (BlockKind.OMEGA, BlockKind.ZETA, BlockKind.ETA):
            return f"block {b.name} ({b.kind.value}) with everything below it is irreducible and has no generic point"
    return None


def _almost_sober(t: ChainTemplate) -> str | None:
    for b in t.blocks:
        if b.kind is BlockKind.ETA:
            return f"cut below <eta, r> in block {b.name} for irrational r is a proper irreducible closed set with no generic point"
    for b in t.blocks:
        if b.kind in (BlockKind.OMEGA, BlockKind.ZETA):
            for c in t.blocks:
                if c is not b and not t.is_below(c.name, b.name):
                    return (
                        f"block {b.name} ({b.kind.value}) with everything below it misses block {c.name}, "
                        "so it is a proper irreducible closed set with no generic point"
                    )
    return None


def _ra(t: ChainTemplate) -> str | None:
    w = _coherent(t)
    if w:
        return w
    if _empty_fundamental(t) is None:
        return None
    d = _directed(t)
    if d:
        return f"the empty set is not fundamental and two compact opens are disjoint: {d}"
    return None


_BASE_RULES = {
    "t0": _t0,
    "sober": _sober,
    "almost_sober": _almost_sober,
    "coherent": _coherent,
    "compact": _compact,
    "empty_fundamental": _empty_fundamental,
    "ra_space": _ra,
}


def classify_template(t: ChainTemplate) -> PredicateProfile:
    return PredicateProfile.derive(**{k: rule(t) is None for k, rule in _BASE_RULES.items()})


def explain_template(t: ChainTemplate) -> dict[str, str]:
    """A reason for each base flag that fails; derived flags name the failing base flag."""
    out = {}
    for k, rule in _BASE_RULES.items():
        w = rule(t)
        if w is not None:
            out[k] = w
    prof = classify_template(t)
    needs = {
        "balbes_dwinger": ("t0", "coherent", "almost_sober"),
        "up_spectral": ("sober", "coherent"),
        "almost_spectral": ("sober", "coherent"),
        "down_spectral": ("t0", "coherent", "compact", "almost_sober"),
        "spectral": ("sober", "coherent", "compact"),
    }
    for k, base in needs.items():
        if not getattr(prof, k):
            missing = [b for b in base if b in out]
            out[k] = "fails " + ", ".join(missing)
    return out


# --- finite bridges ----------------------------------------------------------

def _global_preorder(t: ChainTemplate, pieces: list[tuple[Block, FinitePreorder]]) -> FinitePreorder:
    plain = [x for _, o in pieces for x in o.elements]
    qualify = len(set(plain)) != len(plain)
    labels, offsets, n = [], [], 0
    for b, o in pieces:
        offsets.append(n)
        labels.extend(f"{b.name}.{x}" if qualify else x for x in o.elements)
        n += o.size
    up = [0] * n
    for (b, o), off in zip(pieces, offsets):
        above = 0
        for (c, q), coff in zip(pieces, offsets):
            if t.is_below(b.name, c.name):
                above |= ((1 << q.size) - 1) << coff
        for i in range(o.size):
            up[off + i] = (o.up[i] << off) | above
    return FinitePreorder(tuple(labels), tuple(up))


def embed_finite(t: ChainTemplate) -> FiniteSpace:
    """The finite Alexandroff space of a template whose blocks are all finite."""
    for b in t.blocks:
        if not b.finite:
            raise HasInfiniteBlock(f"block {b.name} is {b.kind.value}")
    return alexandroff(_global_preorder(t, [(b, b.order) for b in t.blocks]))


def _k_chain(name: str, k: int) -> FinitePreorder:
    pts = tuple(f"{name}{i}" for i in range(k))
    return FinitePreorder.from_pairs(pts, [(pts[i], pts[i + 1]) for i in range(k - 1)])


def truncate(t: ChainTemplate, k: int) -> FiniteSpace:
    """Replace every infinite block by a ``k``-element chain.

    Only a picture of the template: compactness and soberness are not
    preserved (the integers become compact, for instance).
    """
    if k < 1:
        raise ValueError("depth must be at least 1")
    pieces = [(b, b.order if b.finite else _k_chain(b.name, k)) for b in t.blocks]
    return alexandroff(_global_preorder(t, pieces))


def add_generic_bottom(t: ChainTemplate, name: str = "bottom") -> ChainTemplate:
    """Put a one-point block under everything."""
    while name in t.by_name:
        name += "'"
    b = fin(name, ["⊥"])
    below = set(t.below) | {(name, c.name) for c in t.blocks}
    return ChainTemplate((b,) + t.blocks, frozenset(below))


def random_preorder(rng: random.Random, points: Sequence[Hashable], density: float = 0.3) -> FinitePreorder:
    pairs = [(a, b) for a in points for b in points if a != b and rng.random() < density]
    return FinitePreorder.from_pairs(points, pairs)


def random_fin_template(rng: random.Random, max_points: int = 6) -> ChainTemplate:
    """A template of finite blocks with at most ``max_points`` points in total."""
    total = rng.randint(1, max_points)
    sizes = []
    while total:
        s = rng.randint(1, total)
        sizes.append(s)
        total -= s
    blocks, counter = [], 0
    for i, s in enumerate(sizes):
        pts = list(range(counter, counter + s))
        counter += s
        blocks.append(Block(f"B{i}", BlockKind.FIN, random_preorder(rng, pts, rng.choice((0.0, 0.2, 0.4, 0.7)))))
    below = {(f"B{i}", f"B{j}") for i in range(len(sizes)) for j in range(i + 1, len(sizes)) if rng.random() < 0.4}
    return ChainTemplate(tuple(blocks), frozenset(below))


# --- presets -----------------------------------------------------------------

def _presets() -> dict[str, ChainTemplate]:
    return {
        "X1": ChainTemplate((chain_block("Z", "zeta"),)),
        "X2": ChainTemplate((chain_block("Zneg", "omega_star"),)),
        "X3": ChainTemplate((chain_block("N", "omega"),)),
        "X4": ChainTemplate((fin("C", [1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)]),)),
        "X5": ChainTemplate((chain_block("R", "eta"),)),
        "X6": ChainTemplate((fin("F", ["a", "b", "c"], [("c", "a"), ("c", "b"), ("a", "b"), ("b", "a")]),)),
        # two copies of the reals under a two-point indiscrete top
        "X7": ChainTemplate(
            (
                chain_block("R0", "eta"),
                chain_block("R1", "eta"),
                fin("W", ["ω0", "ω1"], [("ω0", "ω1"), ("ω1", "ω0")]),
            ),
            frozenset({("R0", "W"), ("R1", "W")}),
        ),
    }


PRESET_NAMES = ("X1", "X2", "X3", "X4", "X5", "X6", "X7")


def preset(name: str) -> ChainTemplate:
    try:
        return _presets()[name]
    except KeyError:
        raise UnknownPreset(name) from None


# --- the diagram -------------------------------------------------------------

REGIONS = (
    "spectral",
    "up_spectral",
    "down_spectral",
    "balbes_dwinger",
    "ra_t0",
    "ra_almost_sober",
    "ra",
    "outside",
)


def diagram_region(p: PredicateProfile) -> str:
    """Innermost region of the inclusion diagram of space classes."""
    if not p.ra_space:
        return "outside"
    if p.spectral:
        return "spectral"
    if p.up_spectral:
        return "up_spectral"
    if p.down_spectral:
        return "down_spectral"
    if p.balbes_dwinger:
        return "balbes_dwinger"
    if p.t0:
        return "ra_t0"
    if p.almost_sober:
        return "ra_almost_sober"
    return "ra"


EXPECTED_REGIONS = {
    "X1": "balbes_dwinger",
    "X2": "up_spectral",
    "X3": "down_spectral",
    "X4": "spectral",
    "X5": "ra_t0",
    "X6": "ra_almost_sober",
    "X7": "ra",
}

_F, _T = False, True
# t0, sober, almost_sober, coherent, compact, empty_fundamental, ra_space
EXPECTED_BASE = {
    "X1": (_T, _F, _T, _T, _F, _F, _T),
    "X2": (_T, _T, _T, _T, _F, _T, _T),
    "X3": (_T, _F, _T, _T, _T, _F, _T),
    "X4": (_T, _T, _T, _T, _T, _T, _T),
    "X5": (_T, _F, _F, _T, _F, _F, _T),
    "X6": (_F, _F, _T, _T, _T, _T, _T),
    "X7": (_F, _F, _F, _T, _F, _T, _T),
}


def expected_profile(name: str) -> PredicateProfile:
    keys = ("t0", "sober", "almost_sober", "coherent", "compact", "empty_fundamental", "ra_space")
    return PredicateProfile.derive(**dict(zip(keys, EXPECTED_BASE[name])))


def describe_template(t: ChainTemplate) -> str:
    lines = []
    for b in t.blocks:
        if b.finite:
            rel = ", ".join(f"{x}<={y}" for x, y in b.order.pairs() if x != y)
            lines.append(f"block {b.name}: fin {{{','.join(map(str, b.order.elements))}}}" + (f" with {rel}" if rel else ""))
        else:
            lines.append(f"block {b.name}: {b.kind.value}")
    for a, c in sorted(t.below):
        lines.append(f"{a} below {c}")
    return "\n".join(lines)


__all__ = [
    "BlockKind", "Block", "ChainTemplate", "fin", "chain_block", "classify_template", "explain_template",
    "embed_finite", "truncate", "add_generic_bottom", "random_fin_template", "preset", "PRESET_NAMES",
    "diagram_region", "REGIONS", "EXPECTED_REGIONS", "expected_profile", "describe_template",
]
