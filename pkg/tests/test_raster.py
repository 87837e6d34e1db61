import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linefill import raster
from linefill.errors import InvalidInput
from linefill.raster import (
    LineClass,
    adjacency,
    classify_pixel,
    extract_segments,
    min_pool_resize,
    synthesize_contours,
)

from .oracles import (
    adjacency_naive,
    erode_cross_naive,
    flood_fill_segments,
    min_pool_naive,
    same_partition,
)


def blank_canvas(h, w, color=(255, 255, 255)):
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[:] = color
    return img


class TestClassifyPixel:
    def test_structural(self):
        assert classify_pixel((0, 0, 0)) is LineClass.STRUCTURAL

    def test_highlight(self):
        assert classify_pixel((255, 0, 0)) is LineClass.HIGHLIGHT_LINE

    def test_shadow(self):
        assert classify_pixel((0, 0, 255)) is LineClass.SHADOW_LINE

    def test_instruction(self):
        assert classify_pixel((0, 255, 0)) is LineClass.INSTRUCTION_LINE

    def test_near_miss_is_blank(self):
        assert classify_pixel((254, 1, 0)) is LineClass.BLANK

    @given(st.tuples(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255)))
    def test_total(self, rgb):
        assert isinstance(classify_pixel(rgb), LineClass)


class TestExtractSegments:
    def test_all_white(self):
        seg = extract_segments(blank_canvas(4, 4))
        assert seg.n_segments == 1
        assert seg.area(1) == 16

    def test_black_column_splits(self):
        img = blank_canvas(5, 5)
        img[:, 2] = 0
        seg = extract_segments(img)
        assert seg.n_segments == 2
        assert sorted(s.area for s in seg.stats) == [10, 10]

    def test_closed_ring(self):
        img = blank_canvas(7, 7)
        img[1, 1:6] = 0
        img[5, 1:6] = 0
        img[1:6, 1] = 0
        img[1:6, 5] = 0
        seg = extract_segments(img)
        assert seg.n_segments == 2
        areas = sorted(s.area for s in seg.stats)
        assert areas == [9, 24]

    def test_zero_sized(self):
        with pytest.raises(InvalidInput):
            extract_segments(np.zeros((0, 5, 3), dtype=np.uint8))

    def test_diagonal_line_seals(self):
        # 4-connectivity: a diagonal line of single pixels must seal the split
        img = blank_canvas(5, 5)
        for i in range(5):
            img[i, i] = 0
        seg = extract_segments(img)
        assert seg.n_segments == 2

    def test_stats_consistent(self):
        img = blank_canvas(6, 9)
        img[:, 4] = 0
        seg = extract_segments(img)
        s = seg.stats[0]
        assert s.bbox == (0, 0, 3, 5)
        assert s.area == 24
        assert s.centroid == (1.5, 2.5)

    def test_matches_flood_fill_oracle_random(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            img = blank_canvas(12, 12)
            # random line pixels of the four palette colors
            n = rng.integers(5, 40)
            ys = rng.integers(0, 12, n)
            xs = rng.integers(0, 12, n)
            colors = np.array([(0, 0, 0), (255, 0, 0), (0, 0, 255), (0, 255, 0)])
            img[ys, xs] = colors[rng.integers(0, 4, n)]
            seg = extract_segments(img)
            assert same_partition(seg.label, flood_fill_segments(img))

    def test_partition_invariant(self):
        rng = np.random.default_rng(3)
        img = blank_canvas(20, 20)
        ys, xs = rng.integers(0, 20, 60), rng.integers(0, 20, 60)
        img[ys, xs] = 0
        seg = extract_segments(img)
        n_line = int(raster.line_mask(img).sum())
        assert sum(s.area for s in seg.stats) + n_line == 400

    def test_label_ids_raster_scan_order(self):
        img = blank_canvas(5, 5)
        img[:, 2] = 0
        seg = extract_segments(img)
        # first segment is the one containing pixel (0, 0)
        assert seg.label[0, 0] == 1
        assert seg.label[0, 3] == 2


class TestSynthesizeContours:
    def test_solid_block_ring(self):
        img = blank_canvas(7, 7)
        img[1:6, 1:6] = (200, 30, 30)
        out = synthesize_contours(img)
        black = np.all(out == 0, axis=-1)
        assert int(black.sum()) == 16
        # ring location: region minus erosion, per the naive oracle
        region = np.all(img == (200, 30, 30), axis=-1)
        expected = region & ~erode_cross_naive(region)
        assert (black == expected).all()

    def test_single_pixel_region(self):
        img = blank_canvas(3, 3)
        img[1, 1] = (10, 200, 10)
        out = synthesize_contours(img)
        assert tuple(out[1, 1]) == (0, 0, 0)
        assert np.all(out == 0, axis=-1).sum() == 1

    def test_adjacent_regions_double_wall(self):
        img = blank_canvas(6, 8)
        img[1:5, 1:4] = (200, 0, 200)
        img[1:5, 4:7] = (0, 200, 200)
        out = synthesize_contours(img)
        black = np.all(out == 0, axis=-1)
        ra = np.all(img == (200, 0, 200), axis=-1)
        rb = np.all(img == (0, 200, 200), axis=-1)
        expected = (ra & ~erode_cross_naive(ra)) | (rb & ~erode_cross_naive(rb))
        assert (black == expected).all()
        # both boundary columns are drawn
        assert black[2, 3] and black[2, 4]

    def test_round_trip_recovers_regions(self):
        img = blank_canvas(24, 24)
        img[2:12, 2:12] = (200, 40, 40)
        img[14:22, 6:20] = (40, 40, 200)
        out = synthesize_contours(img)
        seg = extract_segments(out)
        # every original region yields exactly one segment inside it
        for color in ((200, 40, 40), (40, 40, 200)):
            region = np.all(img == color, axis=-1)
            ids = np.unique(seg.label[region])
            ids = ids[ids > 0]
            assert len(ids) == 1
            assert not (seg.label == ids[0])[~region].any()


class TestMinPoolResize:
    def test_window_with_black_wins(self):
        img = blank_canvas(2, 2)
        img[1, 1] = 0
        out = min_pool_resize(img, 0.5)
        assert out.shape == (1, 1, 3)
        assert tuple(out[0, 0]) == (0, 0, 0)

    def test_identity(self):
        rng = np.random.default_rng(0)
        img = rng.integers(0, 256, (5, 7, 3)).astype(np.uint8)
        assert (min_pool_resize(img, 1.0) == img).all()

    def test_red_line_pixels_survive(self):
        img = blank_canvas(4, 4)
        img[0, 1] = (255, 0, 0)
        img[1, 2] = (255, 0, 0)
        img[2, 0] = (255, 0, 0)
        img[3, 3] = (255, 0, 0)
        out = min_pool_resize(img, 0.5)
        assert out.shape == (2, 2, 3)
        assert (out == (255, 0, 0)).all(axis=-1).all()

    def test_invalid_scale(self):
        with pytest.raises(InvalidInput):
            min_pool_resize(blank_canvas(4, 4), 0.0)
        with pytest.raises(InvalidInput):
            min_pool_resize(blank_canvas(4, 4), -1.0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 12), st.integers(2, 12), st.floats(0.2, 1.0), st.integers(0, 2**31 - 1))
    def test_matches_naive_oracle(self, h, w, scale, seed):
        rng = np.random.default_rng(seed)
        img = rng.integers(0, 256, (h, w, 3)).astype(np.uint8)
        assert (min_pool_resize(img, scale) == min_pool_naive(img, scale)).all()

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 10), st.integers(2, 10), st.integers(0, 2**31 - 1))
    def test_no_invented_colors(self, h, w, seed):
        rng = np.random.default_rng(seed)
        img = rng.integers(0, 4, (h, w, 3)).astype(np.uint8) * 85
        out = min_pool_resize(img, 0.5)
        src = {tuple(p) for p in img.reshape(-1, 3)}
        assert all(tuple(p) in src for p in out.reshape(-1, 3))


class TestAdjacency:
    def test_single_segment_empty(self):
        assert adjacency(extract_segments(blank_canvas(4, 4))) == set()

    def test_one_pixel_wall(self):
        img = blank_canvas(5, 5)
        img[:, 2] = 0
        seg = extract_segments(img)
        assert adjacency(seg) == {(1, 2)}

    def test_wide_band_not_adjacent(self):
        img = blank_canvas(5, 10)
        img[:, 3:7] = 0
        seg = extract_segments(img)
        assert adjacency(seg) == set()

    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            img = blank_canvas(14, 14)
            n = rng.integers(10, 60)
            img[rng.integers(0, 14, n), rng.integers(0, 14, n)] = 0
            seg = extract_segments(img)
            assert adjacency(seg) == adjacency_naive(seg.label)
