import random

import pytest

from stonedual.errors import HasInfiniteBlock, InvalidTemplate, UnknownPreset
from stonedual.symbolic import (
    EXPECTED_REGIONS,
    PRESET_NAMES,
    Block,
    BlockKind,
    ChainTemplate,
    add_generic_bottom,
    chain_block,
    classify_template,
    diagram_region,
    embed_finite,
    expected_profile,
    explain_template,
    fin,
    preset,
    random_fin_template,
    truncate,
)
from stonedual.topology import are_homeomorphic, classify, discrete, validate_topology


def profile_dict(name):
    return classify_template(preset(name)).as_dict()


# Hand-derived table, one row per preset:
# t0, sober, almost_sober, coherent, compact, empty_fundamental, ra_space
TABLE = {
    "X1": "T F T T F F T",
    "X2": "T T T T F T T",
    "X3": "T F T T T F T",
    "X4": "T T T T T T T",
    "X5": "T F F T F F T",
    "X6": "F F T T T T T",
    "X7": "F F F T F T T",
}
BASE = ("t0", "sober", "almost_sober", "coherent", "compact", "empty_fundamental", "ra_space")


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_preset_base_flags(name):
    got = profile_dict(name)
    want = dict(zip(BASE, (c == "T" for c in TABLE[name].split())))
    assert {k: got[k] for k in BASE} == want


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_preset_regions(name):
    assert diagram_region(classify_template(preset(name))) == EXPECTED_REGIONS[name]


def test_documented_rows():
    x1 = classify_template(preset("X1"))
    assert x1.t0 and x1.coherent and x1.almost_sober and not x1.sober and not x1.compact
    assert not x1.empty_fundamental and x1.ra_space and x1.balbes_dwinger
    assert not x1.up_spectral and not x1.down_spectral and not x1.spectral
    x5 = classify_template(preset("X5"))
    assert x5.t0 and x5.coherent and not x5.almost_sober and x5.ra_space and not x5.balbes_dwinger
    x7 = classify_template(preset("X7"))
    assert not x7.t0 and not x7.almost_sober and not x7.compact and x7.empty_fundamental
    assert x7.ra_space and not x7.balbes_dwinger


def test_region_placement():
    regions = {n: diagram_region(classify_template(preset(n))) for n in PRESET_NAMES}
    assert regions["X4"] == "spectral"
    assert regions["X2"] == "up_spectral"
    assert regions["X3"] == "down_spectral"


def test_expected_profile_helper():
    for name in PRESET_NAMES:
        assert classify_template(preset(name)) == expected_profile(name)


def test_preset_shapes():
    x4 = preset("X4")
    assert len(x4.blocks) == 1 and x4.blocks[0].order.size == 4
    x7 = preset("X7")
    assert len(x7.blocks) == 3 and len(x7.below) == 2
    assert are_homeomorphic(embed_finite(preset("X6")), validate_topology("abc", [[], "ab", "abc"])) is not None


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        preset("X8")


def test_x5_witness_names_a_cut():
    assert "cut below <eta, r>" in explain_template(preset("X5"))["almost_sober"]


def test_explain_covers_false_flags():
    for name in PRESET_NAMES:
        t = preset(name)
        false = {k for k, v in classify_template(t).as_dict().items() if not v}
        assert set(explain_template(t)) == false


# --- validation --------------------------------------------------------------

def test_below_must_be_irreflexive():
    with pytest.raises(InvalidTemplate):
        ChainTemplate((chain_block("A", "zeta"), chain_block("B", "omega")), frozenset({("A", "B"), ("B", "A")}))


def test_below_is_closed_transitively():
    t = ChainTemplate(
        (chain_block("A", "zeta"), chain_block("B", "omega"), chain_block("C", "eta")),
        frozenset({("A", "B"), ("B", "C")}),
    )
    assert t.is_below("A", "C")


def test_unknown_block_in_below():
    with pytest.raises(InvalidTemplate):
        ChainTemplate((chain_block("A", "zeta"),), frozenset({("A", "Z")}))


def test_fin_payload_only_for_fin():
    with pytest.raises(InvalidTemplate):
        Block("A", BlockKind.FIN)


# --- finite bridge -----------------------------------------------------------

def test_embed_finite_examples():
    for name in ("X4", "X6"):
        t = preset(name)
        assert classify_template(t) == classify(embed_finite(t))
    two = ChainTemplate((fin("A", ["p"]), fin("B", ["q"])))
    assert are_homeomorphic(embed_finite(two), discrete(["p", "q"])) is not None
    assert classify_template(two) == classify(embed_finite(two))


def test_embed_finite_rejects_infinite():
    with pytest.raises(HasInfiniteBlock):
        embed_finite(preset("X1"))


def test_truncations():
    assert embed_finite(preset("X4")) == truncate(preset("X4"), 3)
    x1 = truncate(preset("X1"), 3)
    assert x1.size == 3 and classify(x1).spectral
    # truncation is only a picture: the integers are not compact
    assert not classify_template(preset("X1")).compact
    x7 = truncate(preset("X7"), 2)
    assert x7.size == 6
    assert not classify(x7).t0 and not classify_template(preset("X7")).t0
    x3 = truncate(preset("X3"), 5)
    assert classify(x3).compact and classify_template(preset("X3")).compact


def test_generic_bottom():
    assert classify_template(add_generic_bottom(preset("X2"))).spectral
    assert classify_template(add_generic_bottom(preset("X4"))).spectral
    assert not classify_template(add_generic_bottom(preset("X5"))).almost_sober


def test_generic_bottom_preserves_flags_on_random_templates():
    rng = random.Random(3)
    kinds = list(BlockKind)
    for _ in range(300):
        t = random_template(rng, kinds)
        before = classify_template(t)
        after = classify_template(add_generic_bottom(t))
        for flag in ("t0", "coherent", "almost_sober"):
            if getattr(before, flag):
                assert getattr(after, flag)
        if before.up_spectral:
            assert after.spectral


def random_template(rng, kinds):
    blocks = []
    for i in range(rng.randint(1, 4)):
        kind = rng.choice(kinds)
        if kind is BlockKind.FIN:
            pts = [f"{i}.{j}" for j in range(rng.randint(1, 3))]
            le = [(a, b) for a in pts for b in pts if a != b and rng.random() < 0.3]
            blocks.append(fin(f"B{i}", pts, le))
        else:
            blocks.append(chain_block(f"B{i}", kind))
    below = {(f"B{i}", f"B{j}") for i in range(len(blocks)) for j in range(i + 1, len(blocks)) if rng.random() < 0.4}
    return ChainTemplate(tuple(blocks), frozenset(below))


def test_implications_hold_on_random_templates():
    rng = random.Random(11)
    kinds = list(BlockKind)
    for _ in range(500):
        assert classify_template(random_template(rng, kinds)).violations() == []


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_oracle_agreement(seed):
    rng = random.Random(seed)
    for _ in range(200):
        t = random_fin_template(rng)
        assert classify_template(t) == classify(embed_finite(t), audit=True)


def test_random_templates_respect_point_bound():
    rng = random.Random(5)
    for _ in range(100):
        assert embed_finite(random_fin_template(rng, max_points=6)).size <= 6


# --- hand-derived cases with infinite blocks ---------------------------------

def two_points_under(kind):
    # a and b are incomparable; their only common upper bounds form the block T
    return ChainTemplate(
        (fin("A", ["a"]), fin("B", ["b"]), chain_block("T", kind)),
        frozenset({("A", "T"), ("B", "T")}),
    )


@pytest.mark.parametrize("kind,coherent", [("omega", True), ("omega_star", False), ("zeta", False), ("eta", False)])
def test_common_upper_set_must_have_a_least_part(kind, coherent):
    assert classify_template(two_points_under(kind)).coherent is coherent


def test_antichain_block_under_zeta():
    t = ChainTemplate((fin("A", ["a", "b"]), chain_block("Z", "zeta")), frozenset({("A", "Z")}))
    p = classify_template(t)
    assert not p.coherent and p.compact and not p.empty_fundamental
    assert not p.ra_space


def test_zeta_over_everything_is_almost_sober():
    t = ChainTemplate((fin("A", ["a"]), chain_block("Z", "zeta")), frozenset({("A", "Z")}))
    p = classify_template(t)
    assert p.almost_sober and not p.sober and p.compact and p.balbes_dwinger and p.down_spectral


def test_omega_beside_a_point_is_not_almost_sober():
    t = ChainTemplate((fin("A", ["a"]), chain_block("N", "omega")))
    p = classify_template(t)
    assert not p.almost_sober
    # two maximal blocks, one without a top: the empty set is not fundamental and the space is not directed
    assert not p.empty_fundamental and not p.ra_space


def test_omega_star_beside_a_point():
    t = ChainTemplate((fin("A", ["a"]), chain_block("M", "omega_star")))
    p = classify_template(t)
    assert p.sober and p.empty_fundamental and p.ra_space and not p.compact and p.up_spectral


def test_finite_antichain_top_keeps_empty_fundamental():
    t = ChainTemplate((chain_block("Z", "zeta"), fin("W", ["u", "v"])), frozenset({("Z", "W")}))
    p = classify_template(t)
    assert p.empty_fundamental and p.ra_space and not p.compact and not p.almost_sober
