"""Frame bundles: the aligned planes one animation frame carries.

Shading labels use a fixed 7-value encoding (index = palette value in
shade.png): 0 none, 1..3 highlight on hair/skin/others, 4..6 shadow on
hair/skin/others.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import raster

SHADE_NONE = 0
SHADE_HH, SHADE_HS, SHADE_HO = 1, 2, 3
SHADE_SH, SHADE_SS, SHADE_SO = 4, 5, 6

HIGHLIGHT_SHADES = (SHADE_HH, SHADE_HS, SHADE_HO)
SHADOW_SHADES = (SHADE_SH, SHADE_SS, SHADE_SO)

SHADE_NAMES = {
    SHADE_NONE: "none",
    SHADE_HH: "Hh", SHADE_HS: "Hs", SHADE_HO: "Ho",
    SHADE_SH: "Sh", SHADE_SS: "Ss", SHADE_SO: "So",
}

# parsing classes for the three-mask representation
PARSE_NONE, PARSE_HAIR, PARSE_SKIN, PARSE_OTHERS = 0, 1, 2, 3
PARSE_NAMES = {PARSE_HAIR: "hair", PARSE_SKIN: "skin", PARSE_OTHERS: "others"}


def shade_for(parse_class: int, kind: str) -> int:
    """Shading label for a highlight ('H') or shadow ('S') on a parsing class."""
    base = 0 if kind == "H" else 3
    return base + {PARSE_HAIR: 1, PARSE_SKIN: 2, PARSE_OTHERS: 3}[parse_class]


@dataclass
class FrameBundle:
    """Aligned planes of one frame. color_gt may be absent for bare inputs."""

    line_art: np.ndarray               # (H, W, 3) uint8
    index_labels: np.ndarray           # (H, W) int32, 0 = line pixel
    shading: np.ndarray                # (H, W) uint8, SHADE_* values
    color_gt: np.ndarray | None = None  # (H, W, 3) uint8
    parsing: np.ndarray | None = None   # (H, W) uint8, PARSE_* values

    @property
    def height(self) -> int:
        return self.line_art.shape[0]

    @property
    def width(self) -> int:
        return self.line_art.shape[1]

    def copy(self) -> "FrameBundle":
        return replace(
            self,
            line_art=self.line_art.copy(),
            index_labels=self.index_labels.copy(),
            shading=self.shading.copy(),
            color_gt=None if self.color_gt is None else self.color_gt.copy(),
            parsing=None if self.parsing is None else self.parsing.copy(),
        )


def parsing_masks(parsing: np.ndarray) -> np.ndarray:
    """(H, W, 3) float mask stack in hair/skin/others order."""
    out = np.zeros(parsing.shape + (3,), dtype=np.float32)
    for i, cls in enumerate((PARSE_HAIR, PARSE_SKIN, PARSE_OTHERS)):
        out[:, :, i] = parsing == cls
    return out


def painter_input(line_art: np.ndarray, shading: np.ndarray) -> np.ndarray:
    """Line art with highlight/shadow interiors pre-filled for painters.

    Highlights fill yellow and shadows light blue, matching hand-drawn
    cleanup conventions; color lines stay on top.
    """
    out = line_art.copy()
    blank = ~raster.line_mask(line_art)
    hi = np.isin(shading, HIGHLIGHT_SHADES) & blank
    sh = np.isin(shading, SHADOW_SHADES) & blank
    out[hi] = raster.HIGHLIGHT_FILL
    out[sh] = raster.SHADOW_FILL
    return out
