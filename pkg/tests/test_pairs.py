from __future__ import annotations

import pytest

from randgen import random_snc_configuration
from dualcx.complexes import SimplexSubset, closure, validate_complex
from dualcx.errors import PairBroken
from dualcx.ops import vertex_induced_map
from dualcx.snc import (
    INSIDE,
    INTERSECTION,
    BlowUpCenter,
    EmbeddedPair,
    PairStep,
    SncConfiguration,
    Stratum,
    derive_cone_extension,
    track_embedded_pair,
)
from test_complexes import RAW_F, RAW_T
from test_snc import ORIGIN, three_axes, triangle_of_lines


def identity_pair(cfg: SncConfiguration, filtration=()) -> EmbeddedPair:
    inc = vertex_induced_map(
        cfg.dual, cfg.dual, {v: v for v in cfg.dual.vertices}
    )
    return EmbeddedPair(cfg, cfg, inc, filtration)


def sub_configuration(outer: SncConfiguration, seed_ids) -> SncConfiguration:
    """The configuration induced on the closure of some of outer's cells."""
    cx = outer.dual
    sub = closure(cx, seed_ids).members
    cells = sorted(
        (sid for sid in sub if cx.simplex(sid).dim > 0),
        key=lambda sid: (cx.simplex(sid).dim, sid),
    )
    raw = {
        "vertices": sorted(s for s in sub if cx.simplex(s).dim == 0),
        "simplices": [
            {"id": sid, "facets": list(cx.simplex(sid).facets)} for sid in cells
        ],
    }
    return SncConfiguration(
        validate_complex(raw),
        {sid: outer.component_meta[sid] for sid in sub},
        ambient_dim=outer.ambient_dim,
        divisor_regime=outer.divisor_regime,
    )


def embed(inner: SncConfiguration, outer: SncConfiguration) -> EmbeddedPair:
    inc = vertex_induced_map(
        inner.dual, outer.dual, {v: v for v in inner.dual.vertices}
    )
    return EmbeddedPair(inner, outer, inc)


def manual_incidence_checks(pair: EmbeddedPair, step: PairStep):
    """Recompute checks (a) and (b) of the tracker from first principles."""
    inner_d = derive_cone_extension(pair.inner, step.inner)
    outer_d = derive_cone_extension(pair.outer, step.outer)
    image_all = frozenset(pair.inclusion.simplex_map.values())
    a = (
        pair.inclusion.image(inner_d.instruction.region.members)
        == outer_d.instruction.region.members & image_all
    )
    b = pair.inclusion.preimage(outer_d.eliminated) <= inner_d.eliminated
    return a, b


# --- pair construction ------------------------------------------------------


def test_pair_rejects_non_injective_inclusions():
    cfg = triangle_of_lines()
    squash = vertex_induced_map(
        cfg.dual, cfg.dual, {"a": "a", "b": "a", "c": "c"}
    )
    with pytest.raises(PairBroken) as info:
        EmbeddedPair(cfg, cfg, squash)
    assert info.value.check == "inclusion"


def test_pair_rejects_unordered_filtrations():
    cfg = three_axes()
    with pytest.raises(PairBroken) as info:
        identity_pair(cfg, ({"a", "b"}, {"a"}))
    assert info.value.check == "filtration"


def test_inner_filtration_is_the_preimage():
    outer = three_axes()
    inner = sub_configuration(outer, {"ab"})
    pair = EmbeddedPair(
        inner, outer, embed(inner, outer).inclusion,
        ({"a", "bc"}, {"a", "b", "ab", "bc"}),
    )
    assert pair.inner_filtration() == (frozenset({"a"}), frozenset({"a", "b", "ab"}))


# --- the pinned scenarios ----------------------------------------------------


def test_identity_pair_passes_every_check():
    pair = identity_pair(three_axes())
    run = track_embedded_pair(pair, [PairStep(ORIGIN, ORIGIN)])
    v = run.verdicts[0]
    assert v.ok
    assert v.region_match and v.removed_covered and v.inclusion_extended
    assert v.betti_inner.b == v.betti_outer.b == (1, 0)
    assert v.filtration_preserved is None
    assert len(run.history) == 2


def test_circle_in_disc_flags_the_betti_gap():
    # the boundary triangle sits in the filled one; blowing up edge ab
    # on both sides keeps the inclusion but not the homology
    inner = triangle_of_lines()
    outer = three_axes()
    pair = embed(inner, outer)
    step = PairStep(
        inner=BlowUpCenter(kind=INTERSECTION, new_vertex="v", sigma_c="ab"),
        outer=BlowUpCenter(kind=INTERSECTION, new_vertex="v", sigma_c="ab"),
    )
    run = track_embedded_pair(pair, [step])
    v = run.verdicts[0]
    # the outer closed star is the whole disc, so the regions disagree
    assert not v.region_match
    assert v.removed_covered
    assert v.inclusion_extended
    assert v.betti_inner.b == (1, 1)
    assert v.betti_outer.b == (1, 0, 0)
    assert not v.betti_match
    assert not v.ok


def test_far_away_component_only_moves_b0():
    inner = three_axes()
    outer_raw = {
        "vertices": ["a", "b", "c", "w"],
        "simplices": RAW_F["simplices"],
    }
    meta = dict(three_axes().component_meta)
    meta["w"] = Stratum("far line w", 1)
    outer = SncConfiguration(validate_complex(outer_raw), meta, ambient_dim=3)
    pair = embed(inner, outer)
    run = track_embedded_pair(pair, [PairStep(ORIGIN, ORIGIN)])
    v = run.verdicts[0]
    assert v.region_match and v.removed_covered and v.inclusion_extended
    assert v.betti_inner.b == (1, 0)
    assert v.betti_outer.b == (2, 0)
    assert not v.betti_match
    assert not v.ok


def test_mismatched_kinds_break_the_inclusion():
    # the inner step keeps edge ab, the outer one eliminates it
    inner = triangle_of_lines()
    outer = three_axes()
    pair = embed(inner, outer)
    step = PairStep(
        inner=BlowUpCenter(kind=INSIDE, new_vertex="v", sigma_c="a",
                           delta=frozenset({"a"})),
        outer=BlowUpCenter(kind=INTERSECTION, new_vertex="v", sigma_c="ab"),
    )
    with pytest.raises(PairBroken) as info:
        track_embedded_pair(pair, [step])
    err = info.value
    assert err.step == 0
    assert err.check == "inclusion-extension"
    assert len(err.partial.history) == 1
    a, b = manual_incidence_checks(pair, step)
    assert not (a and b)


def test_failed_derivation_is_reported_as_a_step_error():
    pair = identity_pair(three_axes())
    bad = BlowUpCenter(kind=INTERSECTION, new_vertex="v", sigma_c="zz")
    with pytest.raises(PairBroken) as info:
        track_embedded_pair(pair, [PairStep(bad, bad)])
    assert info.value.check == "step"
    assert info.value.partial.history


def test_filtration_levels_follow_the_blow_up():
    levels = ({"a"}, {"a", "b", "ab"}, set(three_axes().dual.ids()))
    pair = identity_pair(three_axes(), levels)
    run = track_embedded_pair(pair, [PairStep(ORIGIN, ORIGIN)])
    v = run.verdicts[0]
    assert v.filtration_preserved is True
    assert v.ok
    after = run.history[1].filtration
    assert after[0].members == {"a", "v#a"}
    assert after[1].members == {"a", "b", "v#a", "v#b"}
    assert after[2].members == frozenset(run.history[1].outer.dual.ids())


def test_two_step_identity_run_stays_green():
    pair = identity_pair(three_axes())
    pendant = BlowUpCenter(kind=INSIDE, new_vertex="p", sigma_c="a",
                           delta=frozenset({"a"}))
    run = track_embedded_pair(
        pair, [PairStep(ORIGIN, ORIGIN), PairStep(pendant, pendant)]
    )
    assert [v.ok for v in run.verdicts] == [True, True]
    assert run.verdicts[1].betti_inner.b == (1, 0)
    assert len(run.history) == 3


# --- the inductive-step property ----------------------------------------------


def test_matching_incidence_always_extends(rng):
    # whenever checks (a) and (b) hold the inclusion must extend; a
    # tracker abort with both checks green would be a bug
    broken = extended = 0
    for _ in range(40):
        outer = random_snc_configuration(rng, max_vertices=6)
        ids = sorted(outer.dual.ids())
        inner = sub_configuration(outer, rng.sample(ids, rng.randint(1, len(ids))))
        pair = embed(inner, outer)
        sigma = rng.choice(sorted(inner.dual.ids()))
        outer_center = BlowUpCenter(
            kind=INTERSECTION, new_vertex="zz", sigma_c=sigma
        )
        if rng.random() < 0.5:
            inner_center = outer_center
        else:
            inner_center = BlowUpCenter(
                kind=INSIDE, new_vertex="zz", sigma_c=sigma
            )
        step = PairStep(inner_center, outer_center)
        try:
            run = track_embedded_pair(pair, [step])
        except PairBroken as err:
            assert err.check == "inclusion-extension"
            a, b = manual_incidence_checks(pair, step)
            assert not (a and b), (sigma, inner_center.kind)
            broken += 1
        else:
            assert run.verdicts[0].inclusion_extended
            extended += 1
    assert broken and extended
