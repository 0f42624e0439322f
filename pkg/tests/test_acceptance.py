"""Acceptance gate: ten criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time

import pytest

from stonedual.audits import NON_UNITAL, default_family, ring_corpus
from stonedual.duality import adjunction_audit, h_report, roundtrip_lattice_audit, roundtrip_space_audit
from stonedual.order import enumerate_distributive_lattices
from stonedual.rings import (
    all_ideal_masks,
    cyclic,
    d_identity_violations,
    dorroh,
    ideal_as_ring,
    ideal_embedding_audit,
    multiples_ideal,
    spec_ring,
    theta_audit,
)
from stonedual.symbolic import PRESET_NAMES, classify_template, diagram_region, embed_finite, preset, random_fin_template
from stonedual.topology import (
    almost_sober_witness,
    classify,
    closure_of_image,
    continuous_maps,
    enumerate_topologies,
    irreducible_closed_sets,
    is_t0,
)

RESULTS: dict[int, str] = {}


def spaces_upto(n):
    return [X for k in range(n + 1) for X in enumerate_topologies(k)]


def timed(fn):
    start = time.perf_counter()
    passed, total, first = fn()
    return passed, total, first, time.perf_counter() - start


def c1_roundtrip_spaces():
    spaces = enumerate_topologies(4, t0_only=True)
    reports = [roundtrip_space_audit(X) for X in spaces]
    bad = [X for X, r in zip(spaces, reports) if not (r.ok and r.h_is_homeomorphism)]
    return len(spaces) - len(bad), len(spaces), bad[:1]


def c2_roundtrip_lattices():
    lattices = enumerate_distributive_lattices(6)
    bad = [L for L in lattices if not roundtrip_lattice_audit(L).ok]
    return len(lattices) - len(bad), len(lattices), bad[:1]


def c3_h_characterizations():
    spaces = spaces_upto(4)
    bad = []
    for X in spaces:
        r = h_report(X)
        if r.injective != is_t0(X) or r.surjective != (almost_sober_witness(X) is None):
            bad.append(X)
    return len(spaces) - len(bad), len(spaces), bad[:1]


def c4_adjunction():
    family = default_family()
    pairs = [(M, X) for M in enumerate_distributive_lattices(4) for X in spaces_upto(3)]
    bad = []
    for M, X in pairs:
        r = adjunction_audit(M, X, family)
        if not (r.bijective and r.inverse_ok and r.naturality_ok):
            bad.append((M, X, r.counterexample))
    return len(pairs) - len(bad), len(pairs), bad[:1]


# Region and flags per preset, derived by hand from the block structure.
# Flags: t0, sober, almost_sober, coherent, compact, empty_fundamental, ra_space,
#        balbes_dwinger, up_spectral, down_spectral, almost_spectral, spectral
DIAGRAM = {
    "X1": ("balbes_dwinger", "TFTTFFTTFFFF"),
    "X2": ("up_spectral", "TTTTFTTTTFTF"),
    "X3": ("down_spectral", "TFTTTFTTFTFF"),
    "X4": ("spectral", "TTTTTTTTTTTT"),
    "X5": ("ra_t0", "TFFTFFTFFFFF"),
    "X6": ("ra_almost_sober", "FFTTTTTFFFFF"),
    "X7": ("ra", "FFFTFTTFFFFF"),
}


def c5_diagram():
    bad = []
    for name in PRESET_NAMES:
        p = classify_template(preset(name))
        region, flags = DIAGRAM[name]
        got = "".join("T" if v else "F" for v in p.as_dict().values())
        if got != flags or diagram_region(p) != region:
            bad.append((name, got, diagram_region(p)))
    return len(PRESET_NAMES) - len(bad), len(PRESET_NAMES), bad[:1]


def c6_symbolic_oracle():
    rng = random.Random(20240601)
    bad = []
    for i in range(200):
        t = random_fin_template(rng, max_points=6)
        if classify_template(t) != classify(embed_finite(t), audit=True):
            bad.append(i)
    return 200 - len(bad), 200, bad[:1]


def c7_ring_identities():
    corpus = ring_corpus(24, 36)
    bad = [name for name, A in corpus if d_identity_violations(A)]
    return len(corpus) - len(bad), len(corpus), bad[:1]


def c8_theta():
    cases = [(n, I) for n in range(1, 25) for I in all_ideal_masks(cyclic(n))]
    bad = [(n, I) for n, I in cases if not theta_audit(cyclic(n), I).ok]
    return len(cases) - len(bad), len(cases), bad[:1]


def c9_open_embedding():
    rings = list(ring_corpus(24, 36))
    for n, d in NON_UNITAL:
        rings.append((f"dorroh({d}Z/{n}Z)", dorroh(ideal_as_ring(cyclic(n), multiples_ideal(n, d)))))
    cases = [(name, R, I) for name, R in rings for I in all_ideal_masks(R)]
    bad = [(name, I) for name, R, I in cases if not ideal_embedding_audit(R, I).ok]
    empty = spec_ring(ideal_as_ring(cyclic(8), multiples_ideal(8, 2))).space.size == 0
    if not empty:
        bad.insert(0, "Spec(2Z/8Z) is not empty")
    return len(cases) + 1 - len(bad), len(cases) + 1, bad[:1]


def c10_closure_lemma():
    spaces = spaces_upto(3)
    irr = {X: irreducible_closed_sets(X) for X in spaces}
    total, bad = 0, []
    for X in spaces:
        for Y in spaces:
            targets = set(irr[Y])
            for f in continuous_maps(X, Y):
                for F in irr[X]:
                    total += 1
                    if closure_of_image(f, F) not in targets:
                        bad.append((f.table, F))
    return total - len(bad), total, bad[:1]


CRITERIA = [
    (1, "round trip of spaces, 219 T0 spaces on 4 points", c1_roundtrip_spaces, 60.0, 219),
    (2, "round trip of distributive lattices up to 6 elements", c2_roundtrip_lattices, 60.0, None),
    (3, "h injective iff T0, surjective iff almost sober", c3_h_characterizations, None, None),
    (4, "adjunction bijection and naturality, |M| <= 4, |X| <= 3", c4_adjunction, 300.0, None),
    (5, "diagram regions of the seven presets", c5_diagram, None, 7),
    (6, "symbolic classifier against finite classifier, 200 templates", c6_symbolic_oracle, None, 200),
    (7, "D(ab) and D(a+b) identities on the ring corpus", c7_ring_identities, None, None),
    (8, "theta homeomorphism for every ideal of Z/n, n <= 24", c8_theta, None, None),
    (9, "Spec(S) as the open set V(S)^c of Spec(R)", c9_open_embedding, None, None),
    (10, "closure of the image of an irreducible closed set", c10_closure_lemma, None, None),
]


def evaluate(number, title, fn, limit, expected_total):
    passed, total, first, elapsed = timed(fn)
    ok = passed == total and total > 0
    if expected_total is not None and total != expected_total:
        ok = False
    if limit is not None and elapsed >= limit:
        ok = False
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {passed}/{total}  {elapsed:.2f}s"
    if limit is not None:
        line += f" (limit {limit:.0f}s)"
    line += f"  {title}"
    if first:
        line += f"  first failure: {first[0]!r}"
    return ok, line


@pytest.mark.parametrize("number,title,fn,limit,expected_total", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, expected_total):
    ok, line = evaluate(number, title, fn, limit, expected_total)
    RESULTS[number] = line
    assert ok, line


def main() -> int:
    failures = 0
    for crit in CRITERIA:
        ok, line = evaluate(*crit)
        print(line, flush=True)
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
