"""Paired-frame training augmentation.

Each side of a (reference, target) pair gets an independent random
translation, rotation, and uniform shrink, then a center crop. Rasters
are resampled with min pooling on the shrink step so line pixels
survive; label and annotation planes always use nearest-neighbor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .frames import FrameBundle
from .raster import min_pool_resize, nearest_resize

# defaults mirror a +-400 px shift at 1920 px production resolution
DEFAULT_TRANSLATION = 400.0 / 1920.0
DEFAULT_ROTATION = math.pi / 9.0
DEFAULT_SCALE = (1.0 / 3.0, 1.0 / 2.0)


@dataclass(frozen=True)
class AugmentParams:
    translation: float = DEFAULT_TRANSLATION   # fraction of image dimension
    rotation: float = DEFAULT_ROTATION         # radians, symmetric
    scale: tuple[float, float] = DEFAULT_SCALE  # uniform shrink interval
    crop: int = 80

    def validate(self) -> None:
        lo, hi = self.scale
        if not (0 < lo <= hi <= 1):
            raise InvalidInput(f"scale range must sit inside (0, 1], got {self.scale}")
        if self.crop < 1:
            raise InvalidInput("crop must be positive")


def _rigid_nn(plane: np.ndarray, tx: float, ty: float, theta: float, fill) -> np.ndarray:
    """Translate then rotate (about center) with nearest-neighbor sampling."""
    if tx == 0 and ty == 0 and theta == 0:
        return plane.copy()
    h, w = plane.shape[:2]
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    dx, dy = xs - cx, ys - cy
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    # inverse of: shift by t, then rotate about center
    sx = cos_t * dx + sin_t * dy + cx - tx
    sy = -sin_t * dx + cos_t * dy + cy - ty
    ix = np.rint(sx).astype(np.int64)
    iy = np.rint(sy).astype(np.int64)
    inside = (ix >= 0) & (ix < w) & (iy >= 0) & (iy < h)
    out = np.empty_like(plane)
    out[...] = fill
    out[inside] = plane[iy[inside], ix[inside]]
    return out


def _center_crop(plane: np.ndarray, crop: int) -> np.ndarray:
    h, w = plane.shape[:2]
    if crop > h or crop > w:
        raise InvalidInput(f"crop {crop} exceeds image size {w}x{h}")
    y0 = (h - crop) // 2
    x0 = (w - crop) // 2
    return plane[y0:y0 + crop, x0:x0 + crop].copy()


def _transform_bundle(bundle: FrameBundle, tx, ty, theta, scale, crop) -> FrameBundle:
    h, w = bundle.line_art.shape[:2]

    line = _rigid_nn(bundle.line_art, tx, ty, theta, 255)
    line = min_pool_resize(line, scale) if scale < 1.0 else line
    line = _center_crop(line, crop)

    oh = max(1, round(h * scale))
    ow = max(1, round(w * scale))

    def nn_plane(plane, fill):
        p = _rigid_nn(plane, tx, ty, theta, fill)
        if scale < 1.0:
            p = nearest_resize(p, oh, ow)
        return _center_crop(p, crop)

    return FrameBundle(
        line_art=line,
        index_labels=nn_plane(bundle.index_labels, 0),
        shading=nn_plane(bundle.shading, 0),
        color_gt=None if bundle.color_gt is None else nn_plane(bundle.color_gt, 255),
        parsing=None if bundle.parsing is None else nn_plane(bundle.parsing, 0),
    )


def _draw(rng: np.random.Generator, params: AugmentParams, dim: int):
    tx = rng.uniform(-params.translation, params.translation) * dim
    ty = rng.uniform(-params.translation, params.translation) * dim
    theta = rng.uniform(-params.rotation, params.rotation)
    scale = rng.uniform(params.scale[0], params.scale[1])
    return tx, ty, theta, scale


def augment_pair(
    ref: FrameBundle,
    tgt: FrameBundle,
    params: AugmentParams,
    seed: int,
) -> tuple[FrameBundle, FrameBundle]:
    """Independently transform both bundles; pure function of (inputs, seed)."""
    params.validate()
    rng = np.random.default_rng(seed)
    dim = max(ref.line_art.shape[:2])
    ref_draw = _draw(rng, params, dim)
    tgt_draw = _draw(rng, params, dim)
    return (
        _transform_bundle(ref, *ref_draw, params.crop),
        _transform_bundle(tgt, *tgt_draw, params.crop),
    )
