"""PNG I/O: 8-bit RGB rasters and 16-bit grayscale label planes.

Writes are atomic (temp file + rename) and byte-deterministic for a
fixed input, which dataset regeneration tests rely on.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import InvalidInput, IoError


def _atomic_write(path: Path, write_fn) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "wb") as f:
            write_fn(f)
        os.replace(tmp, path)
    except OSError as e:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise IoError(str(e)) from e


def save_rgb(path, img: np.ndarray) -> None:
    img = np.asarray(img, dtype=np.uint8)
    if img.ndim != 3 or img.shape[2] != 3:
        raise InvalidInput(f"expected (H, W, 3) image, got {img.shape}")
    pil = Image.fromarray(img, mode="RGB")
    _atomic_write(Path(path), lambda f: pil.save(f, format="PNG"))


def load_rgb(path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("RGB"), dtype=np.uint8)
    except FileNotFoundError:
        raise
    except OSError as e:
        raise IoError(str(e)) from e


def save_labels16(path, labels: np.ndarray) -> None:
    labels = np.asarray(labels)
    if labels.ndim != 2:
        raise InvalidInput(f"expected (H, W) label plane, got {labels.shape}")
    if labels.min() < 0 or labels.max() > 0xFFFF:
        raise InvalidInput("labels must fit in uint16")
    pil = Image.fromarray(labels.astype(np.uint16), mode="I;16")
    _atomic_write(Path(path), lambda f: pil.save(f, format="PNG"))


def load_labels16(path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            arr = np.asarray(im)
    except FileNotFoundError:
        raise
    except OSError as e:
        raise IoError(str(e)) from e
    return arr.astype(np.int32)


def save_gray8(path, plane: np.ndarray) -> None:
    plane = np.asarray(plane)
    if plane.ndim != 2:
        raise InvalidInput(f"expected (H, W) plane, got {plane.shape}")
    pil = Image.fromarray(plane.astype(np.uint8), mode="L")
    _atomic_write(Path(path), lambda f: pil.save(f, format="PNG"))


def load_gray8(path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("L"), dtype=np.uint8)
    except FileNotFoundError:
        raise
    except OSError as e:
        raise IoError(str(e)) from e
