"""Independent brute-force oracles used by the test suite.

These stay deliberately naive (python loops, recursion-free flood fill)
so they share no code path with the implementations they check.
"""

from __future__ import annotations

import numpy as np

LINE_COLORS = {(0, 0, 0), (255, 0, 0), (0, 0, 255), (0, 255, 0)}


def flood_fill_segments(img: np.ndarray) -> np.ndarray:
    """Label 4-connected non-line regions by scanning + explicit stack."""
    h, w = img.shape[:2]
    blank = np.zeros((h, w), dtype=bool)
    for y in range(h):
        for x in range(w):
            blank[y, x] = tuple(int(v) for v in img[y, x]) not in LINE_COLORS
    labels = np.zeros((h, w), dtype=np.int32)
    next_id = 0
    for y in range(h):
        for x in range(w):
            if blank[y, x] and labels[y, x] == 0:
                next_id += 1
                stack = [(y, x)]
                labels[y, x] = next_id
                while stack:
                    cy, cx = stack.pop()
                    for ny, nx in ((cy - 1, cx), (cy + 1, cx), (cy, cx - 1), (cy, cx + 1)):
                        if 0 <= ny < h and 0 <= nx < w and blank[ny, nx] and labels[ny, nx] == 0:
                            labels[ny, nx] = next_id
                            stack.append((ny, nx))
    return labels


def erode_cross_naive(region: np.ndarray) -> np.ndarray:
    h, w = region.shape
    out = np.zeros_like(region)
    for y in range(h):
        for x in range(w):
            if not region[y, x]:
                continue
            ok = True
            for ny, nx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                if not (0 <= ny < h and 0 <= nx < w and region[ny, nx]):
                    ok = False
                    break
            out[y, x] = ok
    return out


def min_pool_naive(img: np.ndarray, scale: float) -> np.ndarray:
    h, w = img.shape[:2]
    out_h = max(1, round(h * scale))
    out_w = max(1, round(w * scale))
    out = np.zeros((out_h, out_w, 3), dtype=np.uint8)
    for oy in range(out_h):
        for ox in range(out_w):
            y0, y1 = oy * h // out_h, (oy + 1) * h // out_h
            x0, x1 = ox * w // out_w, (ox + 1) * w // out_w
            best = None
            for y in range(y0, y1):
                for x in range(x0, x1):
                    r, g, b = (int(v) for v in img[y, x])
                    key = (299 * r + 587 * g + 114 * b, r, g, b)
                    if best is None or key < best:
                        best = key
                        out[oy, ox] = (r, g, b)
    return out


def adjacency_naive(labels: np.ndarray) -> set[tuple[int, int]]:
    """All label pairs with pixels within Chebyshev distance 2, by full scan."""
    h, w = labels.shape
    pairs = set()
    for y in range(h):
        for x in range(w):
            a = labels[y, x]
            if a == 0:
                continue
            for dy in range(-2, 3):
                for dx in range(-2, 3):
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w:
                        b = labels[ny, nx]
                        if b > 0 and b != a:
                            pairs.add((min(int(a), int(b)), max(int(a), int(b))))
    return pairs


def same_partition(a: np.ndarray, b: np.ndarray) -> bool:
    """True if two label planes agree up to relabeling (0 is fixed)."""
    if a.shape != b.shape:
        return False
    if not ((a == 0) == (b == 0)).all():
        return False
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    for va, vb in zip(a.ravel().tolist(), b.ravel().tolist()):
        if va == 0:
            continue
        if fwd.setdefault(va, vb) != vb:
            return False
        if bwd.setdefault(vb, va) != va:
            return False
    return True
