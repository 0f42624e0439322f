"""Exhaustive and seeded audit suites.

Each suite yields ``(case, ok, detail)`` triples in a fixed order; ``run``
counts them and keeps the first failure.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .duality import (
    NaturalityFamily,
    adjunction_audit,
    h_report,
    roundtrip_lattice_audit,
    roundtrip_space_audit,
)
from .errors import UnknownSuite
from .order import enumerate_distributive_lattices
from .rings import (
    FiniteCommRing,
    all_ideal_masks,
    cyclic,
    d_identity_violations,
    dorroh,
    dorroh_ideal,
    ideal_as_ring,
    ideal_embedding_audit,
    multiples_ideal,
    product,
    spec_ring,
    theta_audit,
)
from .symbolic import (
    EXPECTED_REGIONS,
    PRESET_NAMES,
    classify_template,
    describe_template,
    diagram_region,
    embed_finite,
    expected_profile,
    preset,
    random_fin_template,
)
from .topology import (
    FiniteSpace,
    almost_sober_witness,
    classify,
    closure_of_image,
    continuous_maps,
    enumerate_topologies,
    irreducible_closed_sets,
    is_t0,
)

Case = tuple[str, bool, str]


@dataclass
class SuiteResult:
    name: str
    total: int
    passed: int
    first_failure: str | None
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def report(self) -> str:
        """Summary without timings, so equal runs print equal bytes."""
        line = f"{self.name}: {self.passed}/{self.total} passed"
        if self.first_failure:
            line += f"\nfirst failure: {self.first_failure}"
        return line


def _spaces_upto(n: int) -> list[FiniteSpace]:
    return [X for k in range(n + 1) for X in enumerate_topologies(k)]


def _fmt_space(X: FiniteSpace) -> str:
    return f"points {list(X.points)} opens {[X.format(U) for U in X.opens]}"


# --- duality -----------------------------------------------------------------

def roundtrip_spaces(max_points: int = 4, **_) -> Iterator[Case]:
    """T0 spaces on exactly ``max_points`` points: ``h`` is a homeomorphism onto ``spec(F(X))``."""
    for X in enumerate_topologies(max_points, t0_only=True):
        r = roundtrip_space_audit(X)
        ok = r.ok and r.h_is_homeomorphism
        yield _fmt_space(X), ok, "" if ok else f"h table {r.witness}, injective={r.h_injective}, surjective={r.h_surjective}"


def roundtrip_lattices(max_lattice: int = 6, **_) -> Iterator[Case]:
    for L in enumerate_distributive_lattices(max_lattice):
        r = roundtrip_lattice_audit(L)
        yield f"lattice {list(L.elements)} with {L.poset.pairs()}", r.ok, "" if r.ok else f"d table {r.witness}"


def default_family() -> NaturalityFamily:
    """Spaces with at most two points and distributive lattices with at most three elements."""
    return NaturalityFamily(
        spaces=tuple(_spaces_upto(2)),
        lattices=tuple(enumerate_distributive_lattices(3)),
    )


def adjunction(max_lattice: int = 4, max_points: int = 3, **_) -> Iterator[Case]:
    family = default_family()
    for L in enumerate_distributive_lattices(max_lattice):
        for X in _spaces_upto(max_points):
            r = adjunction_audit(L, X, family)
            ok = r.bijective and r.inverse_ok and r.naturality_ok
            yield f"M={list(L.elements)} X={_fmt_space(X)}", ok, r.counterexample or ""


def h_characterization(max_points: int = 4, **_) -> Iterator[Case]:
    """``h`` injective iff T0; ``h`` surjective iff almost sober by the definition-level check."""
    for X in _spaces_upto(max_points):
        r = h_report(X)
        t0 = is_t0(X)
        almost = almost_sober_witness(X) is None
        ok = r.injective == t0 and r.surjective == almost and r.pulls_back_basis
        yield _fmt_space(X), ok, f"injective={r.injective} t0={t0} surjective={r.surjective} almost_sober={almost}"


def closure_lemma(max_points: int = 3, **_) -> Iterator[Case]:
    """The closure of the image of an irreducible closed set is irreducible."""
    spaces = _spaces_upto(max_points)
    irr = {X: set(irreducible_closed_sets(X)) for X in spaces}
    for X in spaces:
        for Y in spaces:
            for f in continuous_maps(X, Y):
                bad = [F for F in sorted(irr[X]) if closure_of_image(f, F) not in irr[Y]]
                detail = ""
                if bad:
                    detail = f"f={f.table} F={X.format(bad[0])}"
                yield f"{_fmt_space(X)} -> {_fmt_space(Y)} f={f.table}", not bad, detail


# --- rings -------------------------------------------------------------------

def ring_corpus(max_modulus: int = 24, max_product: int = 36) -> list[tuple[str, FiniteCommRing]]:
    """``Z/n``, their ideals as rings, and products ``Z/a x Z/b`` with ``ab <= max_product``."""
    out = []
    for n in range(1, max_modulus + 1):
        A = cyclic(n)
        out.append((f"Z/{n}", A))
        for I in all_ideal_masks(A):
            if I not in (1, A.full):
                out.append((f"{A.format(I)} in Z/{n}", ideal_as_ring(A, I)))
    for a in range(2, max_product // 2 + 1):
        for b in range(a, max_product // a + 1):
            out.append((f"Z/{a} x Z/{b}", product(cyclic(a), cyclic(b))))
    return out


def ring_identities(max_modulus: int = 24, **_) -> Iterator[Case]:
    for name, A in ring_corpus(max_modulus):
        bad = d_identity_violations(A)
        yield name, not bad, bad[0] if bad else ""


def theta(max_modulus: int = 24, **_) -> Iterator[Case]:
    for n in range(1, max_modulus + 1):
        A = cyclic(n)
        for I in all_ideal_masks(A):
            r = theta_audit(A, I)
            yield f"Z/{n} / {A.format(I)}", r.ok, "" if r.ok else f"mapping {r.mapping}"


NON_UNITAL = ((8, 2), (9, 3), (4, 2))


def ideal_embedding(max_modulus: int = 24, **_) -> Iterator[Case]:
    """``Spec(S)`` against the open set ``V(S)^c`` of ``Spec(R)`` for each ideal ``S`` of ``R``.

    ``R`` runs over the ring corpus and the unitalizations of three rings
    without identity.
    """
    rings = ring_corpus(max_modulus)
    for n, d in NON_UNITAL:
        S = ideal_as_ring(cyclic(n), multiples_ideal(n, d))
        rings.append((f"dorroh({d}Z/{n}Z)", dorroh(S)))
        if (n, d) == (8, 2):
            empty = spec_ring(S).space.size == 0
            yield "Spec(2Z/8Z) is empty", empty, "" if empty else f"{spec_ring(S).space.size} primes"
    for name, R in rings:
        for I in all_ideal_masks(R):
            r = ideal_embedding_audit(R, I)
            yield f"{R.format(I)} in {name}", r.ok, "" if r.ok else f"mapping {r.mapping}"
    for n, d in NON_UNITAL:
        S = ideal_as_ring(cyclic(n), multiples_ideal(n, d))
        r = ideal_embedding_audit(dorroh(S), dorroh_ideal(S))
        yield f"{d}Z/{n}Z inside its unitalization", r.ok, "" if r.ok else f"mapping {r.mapping}"


# --- symbolic ----------------------------------------------------------------

def symbolic_oracle(seed: int = 0, trials: int = 200, **_) -> Iterator[Case]:
    rng = random.Random(seed)
    for i in range(trials):
        t = random_fin_template(rng)
        sym = classify_template(t)
        fin = classify(embed_finite(t), audit=True)
        diff = [k for k, v in sym.as_dict().items() if fin.as_dict()[k] != v]
        yield f"trial {i}: {describe_template(t)!r}", not diff, f"flags differ: {diff}" if diff else ""


def diagram(**_) -> Iterator[Case]:
    for name in PRESET_NAMES:
        p = classify_template(preset(name))
        region = diagram_region(p)
        ok = p == expected_profile(name) and region == EXPECTED_REGIONS[name]
        yield name, ok, f"region {region}, expected {EXPECTED_REGIONS[name]}"


SUITES: dict[str, Callable[..., Iterator[Case]]] = {
    "roundtrip-spaces": roundtrip_spaces,
    "roundtrip-lattices": roundtrip_lattices,
    "adjunction": adjunction,
    "theta": theta,
    "ideal-embedding": ideal_embedding,
    "symbolic-oracle": symbolic_oracle,
    "diagram": diagram,
    "h-characterization": h_characterization,
    "ring-identities": ring_identities,
    "closure-lemma": closure_lemma,
}


def run(name: str, **bounds) -> SuiteResult:
    """Run a suite; ``bounds`` set to None fall back to the suite defaults."""
    if name not in SUITES:
        raise UnknownSuite(name)
    kwargs = {k: v for k, v in bounds.items() if v is not None}
    start = time.perf_counter()
    total = passed = 0
    first = None
    for case, ok, detail in SUITES[name](**kwargs):
        total += 1
        if ok:
            passed += 1
        elif first is None:
            first = f"{case}: {detail}" if detail else case
    return SuiteResult(name, total, passed, first, time.perf_counter() - start)
