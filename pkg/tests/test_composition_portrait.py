"""Face anchoring against the five portrait composition points."""

import numpy as np
import pytest

from alg.composition_portrait import (
    ANCHORS,
    FaceBox,
    classify_portrait_composition,
    face_center,
    move_instructions,
    portrait_composition_advice,
)


# === face boxes and centers ===

def test_face_center_box_midpoint():
    assert face_center(FaceBox(310, 203, 20, 20)) == (320, 213)


def test_face_center_half_up_rounding():
    # 1x1 box at origin: center (0.5, 0.5) rounds half-up to (1, 1).
    assert face_center(FaceBox(0, 0, 1, 1)) == (1, 1)


def test_face_box_validation():
    with pytest.raises(ValueError):
        FaceBox(0, 0, 0, 5)
    with pytest.raises(ValueError):
        FaceBox(630, 10, 20, 20)    # spills past the right border
    with pytest.raises(ValueError):
        FaceBox(-1, 0, 5, 5)


# === anchors ===

def test_anchor_positions():
    names = dict(ANCHORS)
    assert names["Center"] == (320, 213)
    assert names["ThirdTL"] == (213, 142)
    assert names["ThirdTR"] == (426, 142)
    assert names["ThirdBL"] == (213, 284)
    assert names["ThirdBR"] == (426, 284)


def test_classify_exact_anchor_hits():
    for name, (ax, ay) in ANCHORS:
        comp = classify_portrait_composition(face_center(FaceBox(ax - 10, ay - 10, 20, 20)))
        assert comp.anchor == name
        assert comp.distance == 0.0
        assert comp.offset == (0, 0)


def test_classify_nearest_anchor_oracle():
    rng = np.random.default_rng(601)
    for _ in range(60):
        x = int(rng.integers(0, 620))
        y = int(rng.integers(0, 406))
        cx, cy = face_center(FaceBox(x, y, 20, 20))
        comp = classify_portrait_composition((cx, cy))
        want = min(np.hypot(ax - cx, ay - cy) for _, (ax, ay) in ANCHORS)
        assert comp.distance == pytest.approx(float(want), abs=1e-12)
        ax, ay = dict(ANCHORS)[comp.anchor]
        assert comp.offset == (ax - cx, ay - cy)


def test_classify_tie_prefers_anchor_order():
    # (266.5, 177.5) is equidistant from Center and ThirdTL; center of a
    # 21x21 box needs integers, so construct the tie on the midpoint row:
    # centers (320,213) and (213,142): midpoint (266.5, 177.5) is not a
    # lattice point. Use Center vs ThirdTR instead: (320,213), (426,142)
    # midpoint (373, 177.5)... still fractional. ThirdTL vs ThirdBL share
    # x=213: midpoint (213, 213) is a lattice point and nearer to them than
    # to Center (offset 107 vs 0+71): tie resolves to the first listed.
    box = FaceBox(213 - 8, 213 - 8, 16, 16)
    assert face_center(box) == (213, 213)
    comp = classify_portrait_composition(face_center(box))
    d_tl = np.hypot(213 - 213, 142 - 213)
    d_bl = np.hypot(213 - 213, 284 - 213)
    assert d_tl == d_bl
    order = [name for name, _ in ANCHORS]
    assert order.index("ThirdTL") < order.index("ThirdBL")
    assert comp.anchor == "ThirdTL"


# === movement instructions ===

def test_move_instructions_both_axes():
    text = move_instructions((64, -21))
    assert "right by 64 px (10.0% of frame width)" in text
    assert "up by 21 px (4.9% of frame height)" in text
    assert " and " in text


def test_move_instructions_single_axis():
    assert "left by 32 px (5.0% of frame width)" == move_instructions((-32, 0))
    assert "down by 43 px (10.1% of frame height)" == move_instructions((0, 43))


def test_move_instructions_zero_offset():
    assert move_instructions((0, 0)) == ""


def test_advice_well_placed_within_threshold():
    comp = classify_portrait_composition((320, 213))
    advice = portrait_composition_advice(comp, threshold=32.0)
    assert advice.well_placed


def test_advice_move_beyond_threshold():
    comp = classify_portrait_composition((110, 110))    # far from all anchors
    advice = portrait_composition_advice(comp, threshold=32.0)
    assert not advice.well_placed
    assert "px" in advice.sentence
