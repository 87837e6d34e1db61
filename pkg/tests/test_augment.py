import numpy as np
import pytest

from linefill.augment import AugmentParams, augment_pair
from linefill.errors import InvalidInput
from linefill.frames import FrameBundle
from linefill.raster import extract_segments, line_mask


def make_bundle(h=40, w=40, seed=0):
    rng = np.random.default_rng(seed)
    line = np.full((h, w, 3), 255, dtype=np.uint8)
    # a few boxes with contours
    labels = np.zeros((h, w), dtype=np.int32)
    for i in range(3):
        y0, x0 = rng.integers(2, h - 12, 2)
        dy, dx = rng.integers(6, 10, 2)
        line[y0:y0 + dy, x0] = 0
        line[y0:y0 + dy, x0 + dx] = 0
        line[y0, x0:x0 + dx + 1] = 0
        line[y0 + dy - 1, x0:x0 + dx + 1] = 0
        labels[y0 + 1:y0 + dy - 1, x0 + 1:x0 + dx] = i + 1
    shading = (labels == 2).astype(np.uint8)
    return FrameBundle(line_art=line, index_labels=labels, shading=shading)


def test_identity_when_ranges_zero():
    b = make_bundle()
    params = AugmentParams(translation=0.0, rotation=0.0, scale=(1.0, 1.0), crop=40)
    r, t = augment_pair(b, b, params, seed=5)
    for out in (r, t):
        assert (out.line_art == b.line_art).all()
        assert (out.index_labels == b.index_labels).all()
        assert (out.shading == b.shading).all()


def test_deterministic_per_seed():
    b = make_bundle()
    params = AugmentParams(crop=12)
    r1, t1 = augment_pair(b, b, params, seed=99)
    r2, t2 = augment_pair(b, b, params, seed=99)
    assert (r1.line_art == r2.line_art).all()
    assert (t1.index_labels == t2.index_labels).all()
    r3, _ = augment_pair(b, b, params, seed=100)
    assert not (r1.line_art == r3.line_art).all()


def test_sides_transformed_independently():
    b = make_bundle()
    params = AugmentParams(crop=12)
    r, t = augment_pair(b, b, params, seed=1)
    assert not (r.line_art == t.line_art).all()


def test_segment_invariant_preserved():
    b = make_bundle(seed=3)
    params = AugmentParams(crop=12)
    for seed in range(5):
        r, _ = augment_pair(b, b, params, seed=seed)
        seg = extract_segments(r.line_art)
        n_line = int(line_mask(r.line_art).sum())
        assert sum(s.area for s in seg.stats) + n_line == 12 * 12


def test_crop_too_large():
    b = make_bundle()
    params = AugmentParams(crop=30)  # 40 * [1/3, 1/2] < 30
    with pytest.raises(InvalidInput):
        augment_pair(b, b, params, seed=0)


def test_invalid_scale_range():
    with pytest.raises(InvalidInput):
        AugmentParams(scale=(0.0, 0.5)).validate()
    with pytest.raises(InvalidInput):
        AugmentParams(scale=(0.5, 1.5)).validate()


def test_translation_moves_content():
    b = make_bundle()
    params = AugmentParams(translation=0.25, rotation=0.0, scale=(1.0, 1.0), crop=40)
    moved = False
    for seed in range(4):
        r, _ = augment_pair(b, b, params, seed=seed)
        if not (r.line_art == b.line_art).all():
            moved = True
    assert moved
