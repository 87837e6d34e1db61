"""Procedural 2D character/clip generator.

Articulated ellipse/polygon characters stand in for rendered 3D models:
every frame comes out with ground-truth stable index labels, palette
line art (black structural lines, red/blue shading contours, green
instruction marks), shading annotations, and a per-character color
design sheet. Index labels are stable per (part, shading region) across
all frames of a character, which is what matching supervision needs.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import pngio, raster
from .errors import InvalidInput, IoError
from .frames import (
    PARSE_HAIR,
    PARSE_NONE,
    PARSE_OTHERS,
    PARSE_SKIN,
    SHADE_NAMES,
    SHADE_NONE,
    FrameBundle,
    shade_for,
)
from .raster import extract_segments, region_contour

CATEGORIES = (
    "background", "bag", "belt", "glasses", "hair", "socks",
    "hat", "mouth", "clothes", "eyes", "shoes", "skin",
)
CATEGORY_INDEX = {c: i for i, c in enumerate(CATEGORIES)}

# taken from a typical production color setting example
SKIN_NORMAL = (250, 177, 157)
SKIN_HIGHLIGHT = (255, 201, 202)
SKIN_SHADOW = (219, 135, 120)

BACKGROUND_LABEL = 1
MIN_SHADE_INTERIOR = 6  # px; thinner crescents are dropped, not contoured


@dataclass(frozen=True)
class TextColorEntry:
    name: str
    category: str
    normal: tuple[int, int, int]
    highlight: tuple[int, int, int]
    shadow: tuple[int, int, int]


@dataclass(frozen=True)
class Shape:
    kind: str                       # "ellipse" | "polygon"
    params: tuple                   # ellipse: (cx, cy, rx, ry, rot); polygon: ((x,y)...)

    def bbox(self) -> tuple[float, float, float, float]:
        if self.kind == "ellipse":
            cx, cy, rx, ry, _ = self.params
            r = max(rx, ry)
            return (cx - r, cy - r, cx + r, cy + r)
        xs = [p[0] for p in self.params]
        ys = [p[1] for p in self.params]
        return (min(xs), min(ys), max(xs), max(ys))

    def contains(self, pts: np.ndarray) -> np.ndarray:
        """Membership test for (N, 2) base-pose coordinates."""
        x, y = pts[:, 0], pts[:, 1]
        if self.kind == "ellipse":
            cx, cy, rx, ry, rot = self.params
            dx, dy = x - cx, y - cy
            c, s = math.cos(rot), math.sin(rot)
            u = (c * dx + s * dy) / rx
            v = (-s * dx + c * dy) / ry
            return u * u + v * v <= 1.0
        verts = self.params
        inside = np.ones(len(pts), dtype=bool)
        n = len(verts)
        for i in range(n):
            x0, y0 = verts[i]
            x1, y1 = verts[(i + 1) % n]
            inside &= (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) >= 0
        return inside


@dataclass(frozen=True)
class Part:
    name: str
    shape: Shape
    category: str
    entry: int          # index into the text-color list
    z: int              # draw order, higher on top
    parent: int         # parent part index, -1 for root
    pivot: tuple[float, float]
    swing: float        # rotation amplitude factor for clip motion
    has_highlight: bool = False
    has_shadow: bool = False
    has_instruction: bool = False


@dataclass
class CharacterSpec:
    parts: list[Part]
    entries: list[TextColorEntry]
    light_dir: tuple[float, float]
    seed: int

    def validate(self) -> None:
        if len(self.parts) < 4:
            raise InvalidInput("character needs at least 4 parts")
        cats = {p.category for p in self.parts}
        for needed in ("hair", "skin", "clothes"):
            if needed not in cats:
                raise InvalidInput(f"character must include a {needed} part")
        for p in self.parts:
            if not (0 <= p.entry < len(self.entries)):
                raise InvalidInput(f"part {p.name} references entry {p.entry}")


@dataclass
class ClipSpec:
    frames: int
    shot: str                               # "long" | "face" | "closeup"
    camera: tuple[float, float, float, float]  # world window (x0, y0, x1, y1)
    transforms: list[list[np.ndarray]]      # [frame][part] 3x3 world affines

    def validate(self) -> None:
        if self.frames < 2:
            raise InvalidInput("clips need at least 2 frames")


# --- affine helpers (3x3, column-vector convention) ---

def _identity() -> np.ndarray:
    return np.eye(3)


def _translate(tx, ty) -> np.ndarray:
    m = np.eye(3)
    m[0, 2], m[1, 2] = tx, ty
    return m


def _rot_about(px, py, theta) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    r = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return _translate(px, py) @ r @ _translate(-px, -py)


def _apply(m: np.ndarray, pts: np.ndarray) -> np.ndarray:
    return pts @ m[:2, :2].T + m[:2, 2]


# --- character generation ---

def _sample_color(rng, taken: list[tuple[int, int, int]], forbidden) -> tuple[int, int, int]:
    for _ in range(4096):
        c = tuple(int(v) for v in rng.integers(16, 240, 3))
        if all(max(abs(c[i] - t[i]) for i in range(3)) >= 24 for t in taken + forbidden):
            return c
    raise InvalidInput("could not sample a distinct color")


def _shade_pair(rng, normal):
    hl = tuple(min(255, int(round(255 - (255 - v) * 0.55))) for v in normal)
    sh = tuple(max(0, int(round(v * 0.62))) for v in normal)
    return hl, sh


def _distinct_all(entries: list[TextColorEntry]) -> list[TextColorEntry]:
    """Nudge highlight/shadow channels until every color in the list is unique."""
    seen: set[tuple[int, int, int]] = set()
    out = []
    for e in entries:
        colors = []
        for c in (e.normal, e.highlight, e.shadow):
            c = tuple(c)
            step = 0
            while c in seen or c in raster.LINE_COLORS:
                step += 1
                c = tuple(min(255, max(0, v + step)) for v in c)
            seen.add(c)
            colors.append(c)
        out.append(TextColorEntry(e.name, e.category, *colors))
    return out


def gen_character(seed: int) -> tuple[CharacterSpec, list[TextColorEntry]]:
    """Deterministically build an articulated character and its color list."""
    rng = np.random.default_rng(np.random.SeedSequence([0x9E37, seed]))

    forbidden = [*(raster.LINE_COLORS), raster.WHITE, SKIN_NORMAL, SKIN_HIGHLIGHT, SKIN_SHADOW]
    taken: list[tuple[int, int, int]] = []

    def entry(name, category, normal=None):
        nonlocal taken
        if normal is None:
            normal = _sample_color(rng, taken, forbidden)
        taken.append(normal)
        hl, sh = _shade_pair(rng, normal)
        return TextColorEntry(name, category, tuple(normal), hl, sh)

    entries = [
        TextColorEntry("background", "background", raster.WHITE,
                       (240, 240, 250), (225, 225, 235)),
        TextColorEntry("skin", "skin", SKIN_NORMAL, SKIN_HIGHLIGHT, SKIN_SHADOW),
        entry("hair", "hair"),
        entry("top", "clothes"),
        entry("pants", "clothes"),
        entry("eyes", "eyes"),
        entry("mouth", "mouth"),
        entry("shoes", "shoes"),
    ]
    E_BG, E_SKIN, E_HAIR, E_TOP, E_PANTS, E_EYES, E_MOUTH, E_SHOES = range(8)

    # optional accessories, each with its own entry
    extra_pool = ["hat", "bag", "belt", "glasses", "socks"]
    n_extra = int(rng.integers(1, 4))
    picks = list(rng.choice(len(extra_pool), size=n_extra, replace=False))
    extra_entries = {}
    for idx in picks:
        cat = extra_pool[int(idx)]
        extra_entries[cat] = len(entries)
        entries.append(entry(cat, cat))

    entries = _distinct_all(entries)

    j = lambda a, b: float(rng.uniform(a, b))  # noqa: E731
    parts: list[Part] = []

    def add(name, shape, category, entry_id, z, parent, pivot, swing, hl=True, sh=True):
        parts.append(Part(
            name=name, shape=shape, category=category, entry=entry_id, z=z,
            parent=parent, pivot=pivot, swing=swing,
            has_highlight=hl and bool(rng.random() < 0.8),
            has_shadow=sh and bool(rng.random() < 0.8),
            has_instruction=bool(rng.random() < 0.15),
        ))
        return len(parts) - 1

    torso_w, torso_h = j(0.10, 0.14), j(0.15, 0.20)
    torso_c = (0.5 + j(-0.02, 0.02), 0.56)
    torso = add("torso", Shape("ellipse", (torso_c[0], torso_c[1], torso_w, torso_h, 0.0)),
                "clothes", E_TOP, z=10, parent=-1, pivot=torso_c, swing=0.12)

    head_r = j(0.085, 0.115)
    head_c = (torso_c[0], torso_c[1] - torso_h - head_r * 0.75)
    head = add("head", Shape("ellipse", (head_c[0], head_c[1], head_r, head_r * j(1.0, 1.15), 0.0)),
               "skin", E_SKIN, z=20, parent=torso,
               pivot=(head_c[0], head_c[1] + head_r), swing=0.22)

    # hair cap: convex polygon over the upper head
    hw = head_r * j(1.05, 1.3)
    hh = head_r * j(0.7, 1.0)
    hx, hy = head_c[0], head_c[1] - head_r * 0.35
    hair_pts = (
        (hx - hw, hy + hh * 0.35), (hx - hw * 0.75, hy - hh * 0.6),
        (hx, hy - hh), (hx + hw * 0.75, hy - hh * 0.6), (hx + hw, hy + hh * 0.35),
        (hx + hw * 0.55, hy + hh * 0.55), (hx - hw * 0.55, hy + hh * 0.55),
    )
    add("hair", Shape("polygon", hair_pts), "hair", E_HAIR, z=30,
        parent=head, pivot=(hx, hy + hh * 0.3), swing=0.1)

    eye_dx, eye_y = head_r * j(0.35, 0.5), head_c[1] + head_r * j(-0.05, 0.15)
    eye_r = head_r * j(0.13, 0.2)
    for side, sx in (("l", -1), ("r", 1)):
        add(f"eye_{side}", Shape("ellipse", (head_c[0] + sx * eye_dx, eye_y,
                                             eye_r, eye_r * 1.25, 0.0)),
            "eyes", E_EYES, z=40, parent=head,
            pivot=(head_c[0] + sx * eye_dx, eye_y), swing=0.0, hl=True, sh=False)
    add("mouth", Shape("ellipse", (head_c[0], head_c[1] + head_r * 0.55,
                                   eye_r * j(0.9, 1.3), eye_r * 0.55, 0.0)),
        "mouth", E_MOUTH, z=40, parent=head,
        pivot=(head_c[0], head_c[1] + head_r * 0.55), swing=0.0, hl=False, sh=False)

    arm_entry = E_SKIN if rng.random() < 0.5 else E_TOP
    arm_cat = "skin" if arm_entry == E_SKIN else "clothes"
    arm_len, arm_w = j(0.16, 0.22), j(0.032, 0.045)
    sh_y = torso_c[1] - torso_h * 0.55
    for side, sx in (("l", -1), ("r", 1)):
        shoulder = (torso_c[0] + sx * torso_w * 0.85, sh_y)
        add(f"arm_{side}",
            Shape("ellipse", (shoulder[0] + sx * arm_len * 0.5, shoulder[1] + arm_len * 0.28,
                              arm_len * 0.58, arm_w, sx * j(0.5, 0.9))),
            arm_cat, arm_entry, z=25, parent=torso, pivot=shoulder, swing=j(0.5, 0.8))

    leg_entry = E_PANTS if rng.random() < 0.7 else E_SKIN
    leg_cat = "clothes" if leg_entry == E_PANTS else "skin"
    leg_len, leg_w = j(0.16, 0.22), j(0.035, 0.05)
    hip_y = torso_c[1] + torso_h * 0.8
    for side, sx in (("l", -1), ("r", 1)):
        hip = (torso_c[0] + sx * torso_w * 0.45, hip_y)
        add(f"leg_{side}",
            Shape("ellipse", (hip[0], hip[1] + leg_len * 0.55, leg_w, leg_len * 0.6, 0.0)),
            leg_cat, leg_entry, z=5, parent=torso, pivot=hip, swing=j(0.3, 0.5))
        add(f"shoe_{side}",
            Shape("ellipse", (hip[0] + sx * 0.012, hip[1] + leg_len * 1.12,
                              leg_w * 1.5, leg_w * 0.9, 0.0)),
            "shoes", E_SHOES, z=6, parent=len(parts) - 1,
            pivot=(hip[0], hip[1] + leg_len * 0.95), swing=0.2)

    if "hat" in extra_entries:
        add("hat", Shape("polygon", (
            (hx - hw * 0.9, hy - hh * 0.55), (hx, hy - hh * 1.35),
            (hx + hw * 0.9, hy - hh * 0.55))),
            "hat", extra_entries["hat"], z=35, parent=head,
            pivot=(hx, hy - hh * 0.5), swing=0.08)
    if "bag" in extra_entries:
        bx = torso_c[0] + torso_w * 1.35
        add("bag", Shape("ellipse", (bx, torso_c[1] + torso_h * 0.35,
                                     j(0.035, 0.055), j(0.045, 0.065), 0.0)),
            "bag", extra_entries["bag"], z=26, parent=torso,
            pivot=(bx, torso_c[1] - torso_h * 0.2), swing=0.35)
    if "belt" in extra_entries:
        by = torso_c[1] + torso_h * 0.45
        add("belt", Shape("polygon", (
            (torso_c[0] - torso_w * 1.02, by - 0.016), (torso_c[0] + torso_w * 1.02, by - 0.016),
            (torso_c[0] + torso_w * 1.02, by + 0.016), (torso_c[0] - torso_w * 1.02, by + 0.016))),
            "belt", extra_entries["belt"], z=12, parent=torso,
            pivot=(torso_c[0], by), swing=0.12, hl=False)
    if "glasses" in extra_entries:
        add("glasses", Shape("polygon", (
            (head_c[0] - eye_dx - eye_r * 1.3, eye_y - eye_r * 0.5),
            (head_c[0] + eye_dx + eye_r * 1.3, eye_y - eye_r * 0.5),
            (head_c[0] + eye_dx + eye_r * 1.3, eye_y - eye_r * 0.1),
            (head_c[0] - eye_dx - eye_r * 1.3, eye_y - eye_r * 0.1))),
            "glasses", extra_entries["glasses"], z=45, parent=head,
            pivot=(head_c[0], eye_y), swing=0.0, hl=False, sh=False)
    if "socks" in extra_entries:
        for side, sx in (("l", -1), ("r", 1)):
            hip = (torso_c[0] + sx * torso_w * 0.45, hip_y)
            leg_idx = next(i for i, p in enumerate(parts) if p.name == f"leg_{side}")
            add(f"sock_{side}", Shape("ellipse", (hip[0], hip[1] + leg_len * 0.92,
                                                  leg_w * 1.15, leg_len * 0.16, 0.0)),
                "socks", extra_entries["socks"], z=7, parent=leg_idx,
                pivot=(hip[0], hip[1] + leg_len * 0.8), swing=0.0, sh=False)

    phi = j(-math.pi, math.pi)
    spec = CharacterSpec(parts=parts, entries=entries,
                         light_dir=(math.cos(phi), math.sin(phi)), seed=seed)
    spec.validate()
    return spec, entries


SHOTS = ("long", "face", "closeup")


def _char_bbox(spec: CharacterSpec) -> tuple[float, float, float, float]:
    boxes = [p.shape.bbox() for p in spec.parts]
    return (min(b[0] for b in boxes), min(b[1] for b in boxes),
            max(b[2] for b in boxes), max(b[3] for b in boxes))


def _square_window(cx, cy, half) -> tuple[float, float, float, float]:
    return (cx - half, cy - half, cx + half, cy + half)


def _camera_for(spec: CharacterSpec, shot: str, rng) -> tuple[float, float, float, float]:
    if shot == "long":
        return (0.0, 0.0, 1.0, 1.0)
    if shot == "face":
        head = next(p for p in spec.parts if p.name == "head")
        x0, y0, x1, y1 = head.shape.bbox()
        half = max(x1 - x0, y1 - y0) * float(rng.uniform(1.1, 1.5))
        return _square_window((x0 + x1) / 2, (y0 + y1) / 2 + half * 0.15, half)
    candidates = [p for p in spec.parts if p.name in ("torso", "bag", "hair", "shoe_l")]
    part = candidates[int(rng.integers(0, len(candidates)))]
    x0, y0, x1, y1 = part.shape.bbox()
    half = max(x1 - x0, y1 - y0) * float(rng.uniform(0.9, 1.3))
    return _square_window((x0 + x1) / 2, (y0 + y1) / 2, half)


def _world_transforms(spec: CharacterSpec, angles: np.ndarray, drift: tuple[float, float],
                      ) -> list[np.ndarray]:
    """Compose per-part affines down the parent chain for one frame."""
    mats: list[np.ndarray | None] = [None] * len(spec.parts)

    def build(i: int) -> np.ndarray:
        if mats[i] is None:
            p = spec.parts[i]
            local = _rot_about(p.pivot[0], p.pivot[1], float(angles[i]))
            if p.parent < 0:
                mats[i] = _translate(*drift) @ local
            else:
                mats[i] = build(p.parent) @ local
        return mats[i]

    for i in range(len(spec.parts)):
        build(i)
    return [m.copy() for m in mats]


def gen_clip(spec: CharacterSpec, seed: int, shot: str = "long",
             frames: int = 8, motion_scale: float = 1.0) -> ClipSpec:
    """Sample a camera and a deterministic motion track for one clip."""
    if shot not in SHOTS:
        raise InvalidInput(f"unknown shot {shot}")
    rng = np.random.default_rng(np.random.SeedSequence([0xC11F, spec.seed, seed]))
    camera = _camera_for(spec, shot, rng)

    n = len(spec.parts)
    phase = rng.uniform(0, 2 * math.pi, n)
    rate = rng.uniform(0.55, 0.95)     # radians of phase per frame: low-fps motion
    drift_amp = 0.018 * motion_scale
    drift_phase = rng.uniform(0, 2 * math.pi, 2)

    cb = _char_bbox(spec)
    area = (cb[2] - cb[0]) * (cb[3] - cb[1])

    for _damp in range(6):
        transforms = []
        ok = True
        for t in range(frames):
            angles = np.array([
                spec.parts[i].swing * motion_scale * math.sin(phase[i] + rate * t)
                for i in range(n)
            ])
            drift = (drift_amp * math.sin(drift_phase[0] + 0.9 * t),
                     drift_amp * math.sin(drift_phase[1] + 0.7 * t))
            mats = _world_transforms(spec, angles, drift)
            transforms.append(mats)
            # keep >= 60% of the character bbox inside the long-shot frame
            x0, y0, x1, y1 = cb
            corners = np.array([[x0, y0], [x1, y0], [x0, y1], [x1, y1]])
            root = mats[0]
            moved = _apply(root, corners)
            ix0, iy0 = max(moved[:, 0].min(), 0.0), max(moved[:, 1].min(), 0.0)
            ix1, iy1 = min(moved[:, 0].max(), 1.0), min(moved[:, 1].max(), 1.0)
            inter = max(0.0, ix1 - ix0) * max(0.0, iy1 - iy0)
            if area > 0 and inter / area < 0.6:
                ok = False
                break
        if ok:
            break
        drift_amp *= 0.6
    clip = ClipSpec(frames=frames, shot=shot, camera=camera, transforms=transforms)
    clip.validate()
    return clip


# --- rendering ---

def _label_for(part_idx: int, shade_kind: int) -> int:
    """Stable index label: shade_kind 0 normal, 1 highlight, 2 shadow."""
    return 2 + 3 * part_idx + shade_kind


def label_table(spec: CharacterSpec) -> dict[int, dict]:
    """Index label -> entry/category/shading descriptor, stable per character."""
    table = {BACKGROUND_LABEL: {"part": "background", "entry": 0,
                                "category": "background", "shade": "none"}}
    for i, p in enumerate(spec.parts):
        parse = {"hair": PARSE_HAIR, "skin": PARSE_SKIN}.get(p.category, PARSE_OTHERS)
        table[_label_for(i, 0)] = {"part": p.name, "entry": p.entry,
                                   "category": p.category, "shade": "none"}
        table[_label_for(i, 1)] = {"part": p.name, "entry": p.entry,
                                   "category": p.category,
                                   "shade": SHADE_NAMES[shade_for(parse, "H")]}
        table[_label_for(i, 2)] = {"part": p.name, "entry": p.entry,
                                   "category": p.category,
                                   "shade": SHADE_NAMES[shade_for(parse, "S")]}
    return table


def _shift_mask(mask: np.ndarray, dx: int, dy: int) -> np.ndarray:
    out = np.zeros_like(mask)
    h, w = mask.shape
    ys0, ys1 = max(0, dy), min(h, h + dy)
    xs0, xs1 = max(0, dx), min(w, w + dx)
    out[ys0:ys1, xs0:xs1] = mask[ys0 - dy:ys1 - dy, xs0 - dx:xs1 - dx]
    return out


def _keep_contourable(mask: np.ndarray) -> np.ndarray:
    """Drop components too thin to hold an interior inside their outline."""
    from .raster import label_components
    comp, n = label_components(mask)
    if n == 0:
        return mask
    keep = np.zeros_like(mask)
    for cid in range(1, n + 1):
        region = comp == cid
        interior = region & ~region_contour(region)
        if int(interior.sum()) >= MIN_SHADE_INTERIOR:
            keep |= region
    return keep


def render_frame(spec: CharacterSpec, clip: ClipSpec, t: int, size: int = 256) -> FrameBundle:
    """Rasterize one frame into aligned ground-truth planes."""
    if not (0 <= t < clip.frames):
        raise InvalidInput(f"frame {t} outside clip of {clip.frames}")
    h = w = size
    x0, y0, x1, y1 = clip.camera
    sx = (x1 - x0) / w
    # pixel centers in world coordinates
    xs = x0 + (np.arange(w) + 0.5) * sx
    ys = y0 + (np.arange(h) + 0.5) * (y1 - y0) / h
    gx, gy = np.meshgrid(xs, ys)
    pts = np.stack([gx.ravel(), gy.ravel()], axis=1)

    order = sorted(range(len(spec.parts)), key=lambda i: spec.parts[i].z)
    part_plane = np.full((h, w), -1, dtype=np.int32)
    full_masks: dict[int, np.ndarray] = {}
    mats = clip.transforms[t]
    for i in order:
        m = np.linalg.inv(mats[i])
        local = _apply(m, pts)
        mask = spec.parts[i].shape.contains(local).reshape(h, w)
        full_masks[i] = mask
        part_plane[mask] = i

    # shading crescents from the fixed light direction, clipped to visibility
    lx, ly = spec.light_dir
    off = max(2, round(size * 0.035))
    dx, dy = round(lx * off), round(ly * off)
    if dx == 0 and dy == 0:
        dx = off
    shade_kind = np.zeros((h, w), dtype=np.int8)  # 0 normal, 1 highlight, 2 shadow
    for i in order:
        vis = part_plane == i
        if not vis.any():
            continue
        full = full_masks[i]
        p = spec.parts[i]
        if p.has_shadow:
            s = _keep_contourable(full & ~_shift_mask(full, -dx, -dy) & vis)
            shade_kind[s] = 2
        if p.has_highlight:
            hmask = _keep_contourable(full & ~_shift_mask(full, dx, dy) & vis)
            shade_kind[hmask] = 1

    # instruction marks: small ellipse inside the part, green outline only
    rng = np.random.default_rng(np.random.SeedSequence(
        [0x16EE, spec.seed, clip.frames, len(clip.transforms[0]), t]))
    green = np.zeros((h, w), dtype=bool)
    for i in order:
        if not spec.parts[i].has_instruction:
            continue
        vis = (part_plane == i) & (shade_kind == 0)
        if int(vis.sum()) < 80:
            continue
        yy, xx = np.nonzero(vis)
        k = int(rng.integers(0, len(yy)))
        cy, cx = int(yy[k]), int(xx[k])
        r = int(rng.integers(3, max(4, size // 40)))
        gy2, gx2 = np.ogrid[0:h, 0:w]
        inst = ((gx2 - cx) ** 2 + (gy2 - cy) ** 2 <= r * r) & vis
        inst = _keep_contourable(inst)
        green |= region_contour(inst)

    # index labels before line removal
    idx_full = np.full((h, w), BACKGROUND_LABEL, dtype=np.int32)
    fg = part_plane >= 0
    idx_full[fg] = 2 + 3 * part_plane[fg] + shade_kind[fg]

    # contours: structural black for part visibility regions, red/blue for shading
    black = np.zeros((h, w), dtype=bool)
    red = np.zeros((h, w), dtype=bool)
    blue = np.zeros((h, w), dtype=bool)
    for i in order:
        vis = part_plane == i
        if vis.any():
            black |= region_contour(vis)
        hi = vis & (shade_kind == 1)
        if hi.any():
            red |= region_contour(hi)
        sh = vis & (shade_kind == 2)
        if sh.any():
            blue |= region_contour(sh)

    line_art = np.full((h, w, 3), 255, dtype=np.uint8)
    line_art[green] = raster.GREEN
    line_art[blue] = raster.BLUE
    line_art[red] = raster.RED
    line_art[black] = raster.BLACK
    is_line = green | blue | red | black

    # ground-truth colors: entry colors by (part, shade), black structural lines
    color_gt = np.full((h, w, 3), 255, dtype=np.uint8)
    normals = np.array([e.normal for e in spec.entries], dtype=np.uint8)
    highlights = np.array([e.highlight for e in spec.entries], dtype=np.uint8)
    shadows = np.array([e.shadow for e in spec.entries], dtype=np.uint8)
    entry_of_part = np.array([p.entry for p in spec.parts], dtype=np.int64)
    pe = entry_of_part[part_plane[fg]]
    palette = np.where((shade_kind[fg] == 1)[:, None], highlights[pe],
                       np.where((shade_kind[fg] == 2)[:, None], shadows[pe], normals[pe]))
    color_gt[fg] = palette
    color_gt[black] = 0

    idx = idx_full.copy()
    idx[is_line] = 0
    shading = np.zeros((h, w), dtype=np.uint8)
    parse_of_part = np.array(
        [{"hair": PARSE_HAIR, "skin": PARSE_SKIN}.get(p.category, PARSE_OTHERS)
         for p in spec.parts], dtype=np.int64)
    nonline_fg = fg & ~is_line
    pp = part_plane[nonline_fg]
    sk = shade_kind[nonline_fg]
    svals = np.zeros(pp.shape, dtype=np.uint8)
    hi_sel = sk == 1
    sh_sel = sk == 2
    svals[hi_sel] = parse_of_part[pp[hi_sel]]           # Hh=1, Hs=2, Ho=3
    svals[sh_sel] = parse_of_part[pp[sh_sel]] + 3       # Sh=4, Ss=5, So=6
    shading[nonline_fg] = svals

    parsing = np.zeros((h, w), dtype=np.uint8)
    parsing[nonline_fg] = parse_of_part[pp].astype(np.uint8)

    return FrameBundle(line_art=line_art, index_labels=idx, shading=shading,
                       color_gt=color_gt, parsing=parsing)


# --- design sheets ---

@dataclass
class SheetReference:
    line_art: np.ndarray
    colorized: np.ndarray
    seg: "raster.SegmentMap"
    entry_ids: list[int]   # per segment id 1..N
    shot: str


@dataclass
class ColorDesignSheet:
    references: list[SheetReference]
    entries: list[TextColorEntry]

    def validate(self) -> None:
        if not self.references:
            raise InvalidInput("design sheet needs at least one reference")
        for ref in self.references:
            for e in ref.entry_ids:
                if not (0 <= e < len(self.entries)):
                    raise InvalidInput("reference maps a segment to a bad entry")


def _canonical_clip(spec: CharacterSpec, camera, frames=2) -> ClipSpec:
    n = len(spec.parts)
    mats = _world_transforms(spec, np.zeros(n), (0.0, 0.0))
    return ClipSpec(frames=frames, shot="long", camera=camera,
                    transforms=[[m.copy() for m in mats] for _ in range(frames)])


def _sheet_reference(spec: CharacterSpec, camera, shot: str, size: int,
                     table: dict[int, dict]) -> SheetReference:
    clip = _canonical_clip(spec, camera)
    bundle = render_frame(spec, clip, 0, size=size)
    seg = extract_segments(bundle.line_art)
    entry_ids = []
    for sid in range(1, seg.n_segments + 1):
        labels = bundle.index_labels[seg.label == sid]
        lab = int(np.bincount(labels[labels > 0]).argmax()) if (labels > 0).any() else BACKGROUND_LABEL
        entry_ids.append(int(table[lab]["entry"]))
    return SheetReference(line_art=bundle.line_art, colorized=bundle.color_gt,
                          seg=seg, entry_ids=entry_ids, shot=shot)


def gen_design_sheet(spec: CharacterSpec, seed: int, size: int = 256) -> ColorDesignSheet:
    """Render the canonical pose under 3-5 camera crops, long front first."""
    rng = np.random.default_rng(np.random.SeedSequence([0x5EE7, spec.seed, seed]))
    table = label_table(spec)
    cams = [("long", (0.0, 0.0, 1.0, 1.0)),
            ("face", _camera_for(spec, "face", rng)),
            ("closeup", _camera_for(spec, "closeup", rng))]
    for _ in range(int(rng.integers(0, 3))):
        cams.append(("closeup", _camera_for(spec, "closeup", rng)))
    refs = [_sheet_reference(spec, cam, shot, size, table) for shot, cam in cams]
    sheet = ColorDesignSheet(references=refs, entries=list(spec.entries))
    sheet.validate()
    return sheet


# --- dataset generation ---

@dataclass
class DatasetConfig:
    characters: int = 12
    clips_per_char: int = 6
    frames_per_clip: int = 8
    size: int = 256
    seed: int = 0
    motion_scale: float = 1.0

    def validate(self) -> None:
        if self.size < 64:
            raise InvalidInput("frame size must be >= 64")
        if self.characters < 1 or self.clips_per_char < 1 or self.frames_per_clip < 2:
            raise InvalidInput("dataset needs >= 1 character, >= 1 clip, >= 2 frames")


def _split_characters(n: int) -> tuple[list[int], list[int]]:
    n_train = max(1, round(n * 2 / 3)) if n > 1 else 1
    if n_train >= n and n > 1:
        n_train = n - 1
    return list(range(n_train)), list(range(n_train, n))


def _write_json(path: Path, obj) -> None:
    data = json.dumps(obj, sort_keys=True, indent=1).encode()
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except OSError as e:
        raise IoError(str(e)) from e


def _save_bundle(prefix: Path, bundle: FrameBundle) -> None:
    pngio.save_rgb(f"{prefix}.lineart.png", bundle.line_art)
    pngio.save_rgb(f"{prefix}.gt.png", bundle.color_gt)
    pngio.save_labels16(f"{prefix}.idx.png", bundle.index_labels)
    pngio.save_gray8(f"{prefix}.shade.png", bundle.shading)


SHOT_CYCLE = ("long", "long", "face", "closeup", "long", "face")


def gen_dataset(root, cfg: DatasetConfig) -> dict:
    """Write the full dataset tree; byte-identical across re-runs."""
    cfg.validate()
    root = Path(root)
    train_ids, test_ids = _split_characters(cfg.characters)
    manifest = {
        "format": 1,
        "seed": cfg.seed,
        "size": cfg.size,
        "characters": cfg.characters,
        "clips_per_char": cfg.clips_per_char,
        "frames_per_clip": cfg.frames_per_clip,
        "motion_scale": cfg.motion_scale,
        "splits": {"train": [f"char{i:02d}" for i in train_ids],
                   "test": [f"char{i:02d}" for i in test_ids]},
        "shade_palette": {str(k): v for k, v in SHADE_NAMES.items()},
        "planes": ["lineart.png", "gt.png", "idx.png", "shade.png"],
    }
    for split, ids in (("train", train_ids), ("test", test_ids)):
        for ci in ids:
            char_seed = cfg.seed * 1_000_003 + ci
            spec, entries = gen_character(char_seed)
            char_dir = root / split / f"char{ci:02d}"
            table = label_table(spec)
            _write_json(char_dir / "labels.json", {str(k): v for k, v in table.items()})

            sheet = gen_design_sheet(spec, seed=char_seed, size=cfg.size)
            sheet_meta = {"entries": [
                {"name": e.name, "category": e.category, "normal": list(e.normal),
                 "highlight": list(e.highlight), "shadow": list(e.shadow)}
                for e in sheet.entries
            ], "references": []}
            for k, ref in enumerate(sheet.references):
                pngio.save_rgb(char_dir / "sheet" / f"ref{k}.lineart.png", ref.line_art)
                pngio.save_rgb(char_dir / "sheet" / f"ref{k}.gt.png", ref.colorized)
                pngio.save_labels16(char_dir / "sheet" / f"ref{k}.idx.png", ref.seg.label)
                sheet_meta["references"].append({"shot": ref.shot, "entry_ids": ref.entry_ids})
            _write_json(char_dir / "sheet" / "sheet.json", sheet_meta)

            for cl in range(cfg.clips_per_char):
                shot = SHOT_CYCLE[cl % len(SHOT_CYCLE)]
                clip = gen_clip(spec, seed=cl, shot=shot,
                                frames=cfg.frames_per_clip, motion_scale=cfg.motion_scale)
                clip_dir = char_dir / f"clip{cl:02d}"
                for t in range(cfg.frames_per_clip):
                    bundle = render_frame(spec, clip, t, size=cfg.size)
                    _save_bundle(clip_dir / f"f{t:03d}", bundle)
    _write_json(root / "manifest.json", manifest)
    return manifest
