"""Synthetic multi-band scenes with contiguous class regions and correlated noise.

Scenes are built as a Voronoi partition of random sites (contiguous class
regions, like agricultural fields), smooth per-class spectral signatures,
a spatially correlated noise field, and iid noise. Everything is driven by
a single seed so scenes are exactly reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LabelMap, SpectralCube, seeded_rng
from .sampling import sample_without_replacement

_SITE_STREAM = 1
_SIGNATURE_STREAM = 2
_CORRELATED_STREAM = 3
_IID_STREAM = 4
_UNLABEL_STREAM = 5


@dataclass(slots=True)
class SynthConfig:
    height: int
    width: int
    bands: int
    class_count: int
    region_seeds_per_class: int = 3
    signature_separation: float = 1.0
    iid_noise_sigma: float = 0.25
    correlated_noise_sigma: float = 0.75
    correlation_radius: int = 3
    unlabeled_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.height < 8 or self.width < 8:
            raise ValueError(f"scene dims must be >= 8x8, got {self.height}x{self.width}")
        if self.bands < 4:
            raise ValueError(f"bands must be >= 4, got {self.bands}")
        if self.class_count < 2:
            raise ValueError(f"class_count must be >= 2, got {self.class_count}")
        if self.region_seeds_per_class < 1:
            raise ValueError("region_seeds_per_class must be >= 1")
        if self.signature_separation < 0:
            raise ValueError("signature_separation must be >= 0")
        if self.iid_noise_sigma < 0 or self.correlated_noise_sigma < 0:
            raise ValueError("noise sigmas must be >= 0")
        if self.correlation_radius < 0:
            raise ValueError("correlation_radius must be >= 0")
        if not (0 <= self.unlabeled_fraction < 1):
            raise ValueError("unlabeled_fraction must lie in [0, 1)")


def _voronoi_labels(config: SynthConfig) -> np.ndarray:
    rng = seeded_rng(config.seed, _SITE_STREAM)
    n_sites = config.class_count * config.region_seeds_per_class
    site_rows = rng.integers(0, config.height, size=n_sites)
    site_cols = rng.integers(0, config.width, size=n_sites)
    rows = np.arange(config.height)[:, None, None]
    cols = np.arange(config.width)[None, :, None]
    d2 = (rows - site_rows[None, None, :]) ** 2 + (cols - site_cols[None, None, :]) ** 2
    nearest = np.argmin(d2, axis=2)  # ties resolved by lowest site index
    site_class = (np.arange(n_sites) % config.class_count) + 1
    return site_class[nearest].astype(np.int32)


def _class_signatures(config: SynthConfig) -> np.ndarray:
    """Smooth per-class spectra: low-frequency cosine mixes scaled so the
    mean inter-class centroid distance equals signature_separation."""
    rng = seeded_rng(config.seed, _SIGNATURE_STREAM)
    b = np.arange(config.bands) / config.bands
    sigs = np.zeros((config.class_count, config.bands))
    for c in range(config.class_count):
        for j in range(1, 4):
            amp = rng.standard_normal()
            phase = rng.uniform(0.0, 2.0 * np.pi)
            sigs[c] += amp * np.cos(2.0 * np.pi * j * b + phase)
    dists = [
        float(np.linalg.norm(sigs[i] - sigs[j]))
        for i in range(config.class_count)
        for j in range(i + 1, config.class_count)
    ]
    mean_dist = float(np.mean(dists))
    if mean_dist > 0:
        sigs *= config.signature_separation / mean_dist
    return sigs


def _box_blur(field: np.ndarray) -> np.ndarray:
    """3x3 mean filter with border clipping (mean over in-bounds neighbors)."""
    h, w = field.shape
    acc = np.zeros_like(field)
    cnt = np.zeros_like(field)
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            src_r = slice(max(0, -dr), h - max(0, dr))
            dst_r = slice(max(0, dr), h - max(0, -dr))
            src_c = slice(max(0, -dc), w - max(0, dc))
            dst_c = slice(max(0, dc), w - max(0, -dc))
            acc[dst_r, dst_c] += field[src_r, src_c]
            cnt[dst_r, dst_c] += 1.0
    return acc / cnt


def _correlated_field(config: SynthConfig, band: int) -> np.ndarray:
    rng = seeded_rng(config.seed, _CORRELATED_STREAM, band)
    field = rng.standard_normal((config.height, config.width))
    for _ in range(config.correlation_radius):
        field = _box_blur(field)
    std = float(field.std())
    if std > 0:
        field = (field - field.mean()) / std
    return field * config.correlated_noise_sigma


def generate_scene(config: SynthConfig) -> tuple[SpectralCube, LabelMap]:
    """Deterministically generate a (cube, labels) pair from the config.

    Unlabeling only clears annotations: the affected pixels keep the spectra
    of their underlying class, as in real ground truths.
    """
    full_labels = _voronoi_labels(config)
    sigs = _class_signatures(config)
    values = sigs[full_labels - 1].astype(np.float64)

    if config.correlated_noise_sigma > 0:
        for band in range(config.bands):
            values[:, :, band] += _correlated_field(config, band)
    if config.iid_noise_sigma > 0:
        rng = seeded_rng(config.seed, _IID_STREAM)
        values += config.iid_noise_sigma * rng.standard_normal(values.shape)

    labels = full_labels.copy()
    n_unlabel = round(config.unlabeled_fraction * config.height * config.width)
    if n_unlabel:
        rng = seeded_rng(config.seed, _UNLABEL_STREAM)
        chosen = sample_without_replacement(range(labels.size), n_unlabel, rng)
        labels.flat[chosen] = 0
    return SpectralCube(values), LabelMap(labels)


@dataclass(slots=True)
class AutocorrelationResult:
    per_band: np.ndarray
    degenerate_bands: tuple[int, ...]

    @property
    def mean(self) -> float:
        return float(self.per_band.mean())


def scene_autocorrelation(cube: SpectralCube, lag: int) -> AutocorrelationResult:
    """Pearson correlation between pixel values and lag-shifted values.

    Row- and column-shifted pixel pairs are pooled; constant bands are
    reported as 0 and flagged as degenerate.
    """
    if lag < 0 or lag >= min(cube.height, cube.width):
        raise ValueError(f"lag must lie in [0, {min(cube.height, cube.width)}), got {lag}")
    v = cube.values.astype(np.float64)
    if lag == 0:
        x = v.reshape(-1, cube.bands)
        y = x
    else:
        row_x = v[:-lag, :, :].reshape(-1, cube.bands)
        row_y = v[lag:, :, :].reshape(-1, cube.bands)
        col_x = v[:, :-lag, :].reshape(-1, cube.bands)
        col_y = v[:, lag:, :].reshape(-1, cube.bands)
        x = np.concatenate([row_x, col_x])
        y = np.concatenate([row_y, col_y])

    xc = x - x.mean(axis=0)
    yc = y - y.mean(axis=0)
    sx = np.sqrt((xc**2).sum(axis=0))
    sy = np.sqrt((yc**2).sum(axis=0))
    degenerate = (sx == 0) | (sy == 0)
    denom = np.where(degenerate, 1.0, sx * sy)
    r = np.where(degenerate, 0.0, (xc * yc).sum(axis=0) / denom)
    return AutocorrelationResult(r, tuple(int(b) for b in np.nonzero(degenerate)[0]))
