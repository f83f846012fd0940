"""Raster/label data model, window geometry, and patch-size arithmetic.

Conventions used across the package: ``(row, col)`` pixel coordinates with
rows scanning top to bottom, ``height`` = row count, ``width`` = column
count, and label ``0`` reserved for unlabeled/background pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Coord = tuple[int, int]

_U64 = (1 << 64) - 1


def seeded_rng(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic PCG64 generator for the given (seed, stream...) path.

    Distinct stream paths yield statistically independent generators, so
    folds, runs, and noise bands can be regenerated individually.
    """
    entropy = [int(seed) & _U64] + [int(s) for s in stream]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass(slots=True)
class SpectralCube:
    """An (height, width, bands) array of per-pixel reflectance spectra."""

    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        if self.values.ndim != 3:
            raise ValueError(f"cube must be 3-D (height, width, bands), got {self.values.ndim}-D")
        if min(self.values.shape) < 1:
            raise ValueError(f"cube dimensions must all be >= 1, got {self.values.shape}")
        if not np.issubdtype(self.values.dtype, np.floating):
            raise ValueError(f"cube values must be floating point, got {self.values.dtype}")
        if not np.isfinite(self.values).all():
            raise ValueError("cube contains non-finite values (NaN/Inf)")

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def bands(self) -> int:
        return self.values.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        h, w, b = self.values.shape
        return int(h), int(w), int(b)

    def spectrum(self, pixel: Coord) -> np.ndarray:
        check_in_bounds(pixel, (self.height, self.width))
        return self.values[pixel[0], pixel[1]]


@dataclass(slots=True)
class LabelMap:
    """An (height, width) class-id raster; 0 means unlabeled, 1..K are classes."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 2:
            raise ValueError(f"label map must be 2-D, got {self.labels.ndim}-D")
        if min(self.labels.shape) < 1:
            raise ValueError(f"label map dimensions must all be >= 1, got {self.labels.shape}")
        if not np.issubdtype(self.labels.dtype, np.integer):
            raise ValueError(f"labels must be integers, got {self.labels.dtype}")
        if self.labels.min() < 0:
            raise ValueError("labels must be >= 0 (0 = unlabeled)")

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        h, w = self.labels.shape
        return int(h), int(w)

    @property
    def class_count(self) -> int:
        return int(self.labels.max())

    def label_of(self, pixel: Coord) -> int:
        check_in_bounds(pixel, (self.height, self.width))
        return int(self.labels[pixel[0], pixel[1]])

    def labeled_mask(self) -> np.ndarray:
        return self.labels > 0

    def labeled_coords(self) -> list[Coord]:
        """All labeled pixel coordinates in canonical row-major order."""
        rows, cols = np.nonzero(self.labels)
        return [(int(r), int(c)) for r, c in zip(rows, cols)]

    def labeled_count(self) -> int:
        return int(np.count_nonzero(self.labels))


@dataclass(frozen=True, slots=True)
class PatchRect:
    """Axis-aligned rectangle of pixels with top-left origin (row, col)."""

    row: int
    col: int
    height: int
    width: int

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise ValueError(f"patch dims must be >= 1, got {self.height}x{self.width}")
        if self.row < 0 or self.col < 0:
            raise ValueError(f"patch origin must be non-negative, got ({self.row}, {self.col})")

    @property
    def area(self) -> int:
        return self.height * self.width

    def fits(self, raster_dims: tuple[int, int]) -> bool:
        return self.row + self.height <= raster_dims[0] and self.col + self.width <= raster_dims[1]

    def contains(self, pixel: Coord) -> bool:
        r, c = pixel
        return self.row <= r < self.row + self.height and self.col <= c < self.col + self.width

    def overlaps(self, other: "PatchRect") -> bool:
        return not (
            self.row + self.height <= other.row
            or other.row + other.height <= self.row
            or self.col + self.width <= other.col
            or other.col + other.width <= self.col
        )

    def coords(self) -> list[Coord]:
        return [
            (r, c)
            for r in range(self.row, self.row + self.height)
            for c in range(self.col, self.col + self.width)
        ]


@dataclass(frozen=True, slots=True)
class Window:
    """Odd-dimensioned feature window centered on a pixel; 1x1 = spectral only."""

    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"window dims must be >= 1, got {self.width}x{self.height}")
        if self.width % 2 == 0 or self.height % 2 == 0:
            raise ValueError(f"window dims must be odd, got {self.width}x{self.height}")

    @property
    def radius_rows(self) -> int:
        return (self.height - 1) // 2

    @property
    def radius_cols(self) -> int:
        return (self.width - 1) // 2

    @property
    def is_spectral_only(self) -> bool:
        return self.width == 1 and self.height == 1


def check_in_bounds(pixel: Coord, raster_dims: tuple[int, int]) -> None:
    r, c = pixel
    h, w = raster_dims
    if not (0 <= r < h and 0 <= c < w):
        raise ValueError(f"pixel ({r}, {c}) out of bounds for {h}x{w} raster")


def neighborhood(center: Coord, window: Window, raster_dims: tuple[int, int]) -> set[Coord]:
    """All in-bounds pixels within the window centered on ``center``.

    The result always contains the center and is clipped at raster borders.
    """
    check_in_bounds(center, raster_dims)
    r, c = center
    h, w = raster_dims
    r0 = max(0, r - window.radius_rows)
    r1 = min(h - 1, r + window.radius_rows)
    c0 = max(0, c - window.radius_cols)
    c1 = min(w - 1, c + window.radius_cols)
    return {(rr, cc) for rr in range(r0, r1 + 1) for cc in range(c0, c1 + 1)}


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def patch_dims_from_fractions(
    t_w: float | Fraction, t_h: float | Fraction, image_width: int, image_height: int
) -> tuple[int, int]:
    """Patch pixel dims from size fractions of the image, rounded half-up.

    Rounding is half-up with a floor of 1 pixel. Published (fraction, dims)
    pairs for the classic benchmark scenes are only approximate, so presets
    treat explicit pixel dims as authoritative; this is the forward mapping
    for user-supplied fractions.
    """
    t_w = Fraction(t_w)
    t_h = Fraction(t_h)
    if not (0 < t_w <= 1) or not (0 < t_h <= 1):
        raise ValueError(f"fractions must lie in (0, 1], got ({float(t_w)}, {float(t_h)})")
    if image_width < 1 or image_height < 1:
        raise ValueError("image dims must be >= 1")
    w_p = max(1, _round_half_up(t_w * image_width))
    h_p = max(1, _round_half_up(t_h * image_height))
    return w_p, h_p


def fractions_from_dims(
    patch_width: int, patch_height: int, image_width: int, image_height: int
) -> tuple[Fraction, Fraction]:
    """Exact rational size fractions (patch/image) for both axes."""
    if patch_width < 1 or patch_height < 1 or image_width < 1 or image_height < 1:
        raise ValueError("all dims must be >= 1")
    if patch_width > image_width or patch_height > image_height:
        raise ValueError(
            f"patch {patch_width}x{patch_height} exceeds image {image_width}x{image_height}"
        )
    return Fraction(patch_width, image_width), Fraction(patch_height, image_height)
