"""Exact-palette raster representation and segment geometry.

A Raster is an (H, W, 3) uint8 array of flat RGB values; line art carries
no anti-aliasing, so every pixel classification is an exact RGB match.
Segments are the 4-connected components of non-line pixels, the atomic
unit everything downstream (matching, painting, metrics) operates on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidInput

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
RED = (255, 0, 0)
BLUE = (0, 0, 255)
GREEN = (0, 255, 0)

# pre-fill colors used in the painter-input variant
HIGHLIGHT_FILL = (255, 255, 128)
SHADOW_FILL = (160, 200, 255)


class LineClass(Enum):
    STRUCTURAL = 0      # black: ordinary contour
    HIGHLIGHT_LINE = 1  # red: encloses a highlight region
    SHADOW_LINE = 2     # blue: encloses a shadow region
    INSTRUCTION_LINE = 3  # green: other instructions
    BLANK = 4


_LINE_PALETTE = {
    BLACK: LineClass.STRUCTURAL,
    RED: LineClass.HIGHLIGHT_LINE,
    BLUE: LineClass.SHADOW_LINE,
    GREEN: LineClass.INSTRUCTION_LINE,
}

LINE_COLORS = tuple(_LINE_PALETTE)


def classify_pixel(rgb) -> LineClass:
    """Classify one RGB triple. Exact match only; anything else is blank."""
    return _LINE_PALETTE.get(tuple(int(c) for c in rgb), LineClass.BLANK)


def as_raster(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=np.uint8)
    if a.ndim != 3 or a.shape[2] != 3:
        raise InvalidInput(f"raster must be (H, W, 3) uint8, got {a.shape}")
    return a


def line_mask(img: np.ndarray) -> np.ndarray:
    """Boolean (H, W) mask of pixels belonging to any line class."""
    img = as_raster(img)
    mask = np.zeros(img.shape[:2], dtype=bool)
    for color in _LINE_PALETTE:
        mask |= np.all(img == np.array(color, dtype=np.uint8), axis=-1)
    return mask


def color_line_mask(img: np.ndarray, color) -> np.ndarray:
    return np.all(as_raster(img) == np.array(color, dtype=np.uint8), axis=-1)


@dataclass(frozen=True)
class SegmentStats:
    area: int
    bbox: tuple[int, int, int, int]  # (x0, y0, x1, y1) inclusive
    centroid: tuple[float, float]    # (x, y)


@dataclass
class SegmentMap:
    """Partition of non-line pixels into line-enclosed segments.

    label: (H, W) int32, 0 for line pixels, 1..n for segments.
    Segment ids are assigned in raster-scan order of each
    segment's first pixel.
    """

    label: np.ndarray
    stats: list[SegmentStats]

    @property
    def height(self) -> int:
        return self.label.shape[0]

    @property
    def width(self) -> int:
        return self.label.shape[1]

    @property
    def n_segments(self) -> int:
        return len(self.stats)

    def area(self, seg_id: int) -> int:
        return self.stats[seg_id - 1].area

    def bbox(self, seg_id: int) -> tuple[int, int, int, int]:
        return self.stats[seg_id - 1].bbox

    def mask(self, seg_id: int) -> np.ndarray:
        return self.label == seg_id


def _segment_stats(label: np.ndarray, n: int) -> list[SegmentStats]:
    stats = []
    ys, xs = np.nonzero(label)
    ids = label[ys, xs]
    order = np.argsort(ids, kind="stable")
    ys, xs, ids = ys[order], xs[order], ids[order]
    bounds = np.searchsorted(ids, np.arange(1, n + 2))
    for k in range(n):
        sy = ys[bounds[k]:bounds[k + 1]]
        sx = xs[bounds[k]:bounds[k + 1]]
        stats.append(SegmentStats(
            area=int(sy.size),
            bbox=(int(sx.min()), int(sy.min()), int(sx.max()), int(sy.max())),
            centroid=(float(sx.mean()), float(sy.mean())),
        ))
    return stats


def label_components(blank: np.ndarray) -> tuple[np.ndarray, int]:
    """4-connected component labeling of a boolean mask.

    Ids are assigned in raster-scan order of each component's first pixel.
    Two-pass union-find over rows, vectorized with numpy.
    """
    h, w = blank.shape
    label = np.zeros((h, w), dtype=np.int32)
    if h == 0 or w == 0:
        return label, 0

    # provisional ids: one per maximal horizontal run of blank pixels
    flat = blank.ravel()
    padded = np.concatenate(([False], flat, [False]))
    starts = np.flatnonzero(padded[1:-1] & ~padded[:-2])
    ends = np.flatnonzero(padded[1:-1] & ~padded[2:]) + 1
    # runs crossing a row boundary must be split
    row_breaks = np.arange(1, h) * w
    extra_starts = row_breaks[flat[row_breaks] & flat[row_breaks - 1]]
    starts = np.sort(np.concatenate([starts, extra_starts]))
    ends = np.sort(np.concatenate([ends, extra_starts]))
    n_runs = starts.size
    if n_runs == 0:
        return label, 0

    run_id = np.zeros(flat.size, dtype=np.int64)
    run_id[starts] = 1
    run_id = np.cumsum(run_id) - 1  # valid only where blank

    parent = np.arange(n_runs, dtype=np.int64)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    # vertical adjacencies: pixel blank and pixel-above blank
    below = np.flatnonzero(flat[w:] & flat[:-w]) + w
    ra = run_id[below]
    rb = run_id[below - w]
    for pair in np.unique(ra * n_runs + rb):
        roota, rootb = find(int(pair // n_runs)), find(int(pair % n_runs))
        if roota != rootb:
            parent[max(roota, rootb)] = min(roota, rootb)

    roots = np.array([find(i) for i in range(n_runs)], dtype=np.int64)
    # final ids in raster-scan order of first pixel: runs are already ordered
    # by start offset, so the first run of each root fixes the order
    first = np.full(n_runs, -1, dtype=np.int64)
    order = []
    for i in range(n_runs):
        r = roots[i]
        if first[r] < 0:
            first[r] = len(order)
            order.append(r)
    final = first[roots] + 1

    lab_flat = np.zeros(flat.size, dtype=np.int32)
    for i in range(n_runs):
        lab_flat[starts[i]:ends[i]] = final[i]
    return lab_flat.reshape(h, w), len(order)


def extract_segments(line_art: np.ndarray) -> SegmentMap:
    """Split a line-art raster into line-enclosed segments.

    Line pixels (exact palette) get label 0; every other pixel joins a
    4-connected segment. Raises InvalidInput on a zero-sized raster.
    """
    img = as_raster(line_art)
    if img.shape[0] == 0 or img.shape[1] == 0:
        raise InvalidInput("zero-sized raster")
    blank = ~line_mask(img)
    label, n = label_components(blank)
    return SegmentMap(label=label, stats=_segment_stats(label, n))


def segments_from_labels(label: np.ndarray) -> SegmentMap:
    """Build a SegmentMap directly from a precomputed label plane."""
    label = np.asarray(label, dtype=np.int32)
    n = int(label.max()) if label.size else 0
    return SegmentMap(label=label, stats=_segment_stats(label, n))


def erode_cross(region: np.ndarray) -> np.ndarray:
    """Binary erosion with the 3x3 cross element; outside counts as background."""
    h, w = region.shape
    padded = np.zeros((h + 2, w + 2), dtype=bool)
    padded[1:-1, 1:-1] = region
    return (
        padded[1:-1, 1:-1]
        & padded[:-2, 1:-1]
        & padded[2:, 1:-1]
        & padded[1:-1, :-2]
        & padded[1:-1, 2:]
    )


def region_contour(region: np.ndarray) -> np.ndarray:
    """Pixels of a region lost under one cross erosion (its inner outline)."""
    return region & ~erode_cross(region)


def synthesize_contours(color_label: np.ndarray) -> np.ndarray:
    """Turn a flat color-label raster into black-on-white line art.

    Each maximal same-color 4-connected non-white region is outlined by
    the difference between the region and its eroded version. White is
    the background convention and is never contoured (it remains a
    segment, sealed by its neighbours' outlines).
    """
    img = as_raster(color_label)
    h, w = img.shape[:2]
    white = np.all(img == 255, axis=-1)
    # components of equal-color pixels: key colors to ints, label per color,
    # then split by color id via a combined key plane
    key = (
        img[:, :, 0].astype(np.int64) << 16
    ) | (img[:, :, 1].astype(np.int64) << 8) | img[:, :, 2].astype(np.int64)
    out = np.full((h, w, 3), 255, dtype=np.uint8)
    contour = np.zeros((h, w), dtype=bool)
    for color in np.unique(key[~white]):
        mask = key == color
        comp, n = label_components(mask)
        for cid in range(1, n + 1):
            region = comp == cid
            contour |= region_contour(region)
    out[contour] = 0
    return out


def _luminance_key(img: np.ndarray) -> np.ndarray:
    """Sortable integer: darkest-first, ties broken lexicographically on RGB."""
    r = img[:, :, 0].astype(np.int64)
    g = img[:, :, 1].astype(np.int64)
    b = img[:, :, 2].astype(np.int64)
    lum = 299 * r + 587 * g + 114 * b  # x1000 integer luminance
    return (lum << 24) | (r << 16) | (g << 8) | b


def _pool_edges(n_in: int, n_out: int) -> np.ndarray:
    """Window boundaries partitioning n_in source cells into n_out windows."""
    return (np.arange(n_out + 1, dtype=np.int64) * n_in) // n_out


def min_pool_resize(img: np.ndarray, scale: float) -> np.ndarray:
    """Shrink a raster by keeping the darkest source pixel of each window.

    Darkness is integer luminance 299R+587G+114B with lexicographic RGB
    tie-break, so thin dark lines survive and no new colors appear.
    """
    img = as_raster(img)
    if scale <= 0:
        raise InvalidInput(f"scale must be positive, got {scale}")
    if scale > 1:
        raise InvalidInput(f"min pooling only shrinks, got scale {scale}")
    h, w = img.shape[:2]
    out_h = max(1, round(h * scale))
    out_w = max(1, round(w * scale))
    if out_h == h and out_w == w:
        return img.copy()
    key = _luminance_key(img)
    ye = _pool_edges(h, out_h)
    xe = _pool_edges(w, out_w)
    rows = np.minimum.reduceat(key, ye[:-1], axis=0)
    pooled = np.minimum.reduceat(rows, xe[:-1], axis=1)
    out = np.empty((out_h, out_w, 3), dtype=np.uint8)
    out[:, :, 0] = (pooled >> 16) & 0xFF
    out[:, :, 1] = (pooled >> 8) & 0xFF
    out[:, :, 2] = pooled & 0xFF
    return out


def nearest_resize(plane: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Nearest-neighbor resize of a label/annotation plane or raster."""
    h, w = plane.shape[:2]
    ys = np.minimum(((np.arange(out_h) + 0.5) * h / out_h).astype(np.int64), h - 1)
    xs = np.minimum(((np.arange(out_w) + 0.5) * w / out_w).astype(np.int64), w - 1)
    return plane[np.ix_(ys, xs)]


def adjacency(seg: SegmentMap) -> set[tuple[int, int]]:
    """Unordered segment-id pairs with pixels within Chebyshev distance 2.

    Distance 2 means the pair is separated only by a line of width <= 2,
    which is what contour synthesis draws between touching regions.
    """
    label = seg.label
    h, w = label.shape
    pairs: set[tuple[int, int]] = set()
    for dy in range(-2, 3):
        for dx in range(-2, 3):
            if dy == 0 and dx == 0:
                continue
            y0a, y1a = max(0, dy), min(h, h + dy)
            y0b, y1b = max(0, -dy), min(h, h - dy)
            x0a, x1a = max(0, dx), min(w, w + dx)
            x0b, x1b = max(0, -dx), min(w, w - dx)
            a = label[y0a:y1a, x0a:x1a]
            b = label[y0b:y1b, x0b:x1b]
            both = (a > 0) & (b > 0) & (a != b)
            if not both.any():
                continue
            av, bv = a[both], b[both]
            lo = np.minimum(av, bv).astype(np.int64)
            hi = np.maximum(av, bv).astype(np.int64)
            for p in np.unique(lo * (seg.n_segments + 1) + hi):
                pairs.add((int(p // (seg.n_segments + 1)), int(p % (seg.n_segments + 1))))
    return pairs
