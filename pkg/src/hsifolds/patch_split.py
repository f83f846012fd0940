"""Patch-based benchmark folds: random non-overlapping rectangles form the
training data, all remaining labeled pixels form the test data.

Patches are drawn with uniformly random origins and rejection sampling
against a global occupancy mask, so patches never overlap within a fold or
across folds of the same FoldSet. Drawing stops as soon as the labeled
pixels inside accepted patches reach the training budget; a drawn patch with
zero labeled pixels is kept (it consumes area but contributes nothing).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Coord, LabelMap, PatchRect, patch_dims_from_fractions, seeded_rng
from .random_split import class_histogram


@dataclass(slots=True)
class PatchSplitConfig:
    """Either (patch_width, patch_height) in pixels or (frac_width, frac_height)
    of the scene dims; explicit pixel dims win in presets."""

    target_training_pixels: int
    patch_width: int | None = None
    patch_height: int | None = None
    frac_width: float | None = None
    frac_height: float | None = None
    fold_count: int = 1
    allow_class_absence: bool = True
    max_draw_attempts: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        has_dims = self.patch_width is not None or self.patch_height is not None
        has_fracs = self.frac_width is not None or self.frac_height is not None
        if has_dims == has_fracs:
            raise ValueError("give exactly one of pixel dims or fractions for the patch size")
        if has_dims and (self.patch_width is None or self.patch_height is None):
            raise ValueError("both patch_width and patch_height are required")
        if has_fracs and (self.frac_width is None or self.frac_height is None):
            raise ValueError("both frac_width and frac_height are required")
        if has_dims and (self.patch_width < 1 or self.patch_height < 1):
            raise ValueError("patch dims must be >= 1")
        if self.target_training_pixels < 1:
            raise ValueError("target_training_pixels must be >= 1")
        if self.fold_count < 1:
            raise ValueError("fold_count must be >= 1")
        if self.max_draw_attempts < 1:
            raise ValueError("max_draw_attempts must be >= 1")

    def resolve_patch_dims(self, labels: LabelMap) -> tuple[int, int]:
        if self.patch_width is not None:
            w_p, h_p = self.patch_width, self.patch_height
        else:
            w_p, h_p = patch_dims_from_fractions(
                self.frac_width, self.frac_height, labels.width, labels.height
            )
        if w_p > labels.width or h_p > labels.height:
            raise ValueError(
                f"patch {w_p}x{h_p} does not fit inside {labels.width}x{labels.height} scene"
            )
        return w_p, h_p


@dataclass(slots=True)
class Fold:
    index: int
    patches: list[PatchRect]
    training_pixels: set[Coord]
    test_pixels: set[Coord]
    height: int
    width: int
    train_class_counts: dict[int, int] = field(default_factory=dict)
    test_class_counts: dict[int, int] = field(default_factory=dict)


@dataclass(slots=True)
class FoldSet:
    folds: list[Fold]
    config: PatchSplitConfig
    height: int
    width: int
    class_count: int

    @property
    def seed(self) -> int:
        return self.config.seed


def fold_class_histogram(labels: LabelMap, pixels: set[Coord] | list[Coord]) -> dict[int, int]:
    """Per-class counts over the given pixels; every class 1..K is present."""
    return class_histogram(labels, pixels)


def missing_classes(fold: Fold, class_count: int) -> set[int]:
    """Classes with zero training pixels but nonzero test pixels in this fold."""
    return {
        c
        for c in range(1, class_count + 1)
        if fold.train_class_counts.get(c, 0) == 0 and fold.test_class_counts.get(c, 0) > 0
    }


def _draw_fold_patches(
    labels: LabelMap,
    occupied: np.ndarray,
    w_p: int,
    h_p: int,
    target: int,
    max_attempts: int,
    rng: np.random.Generator,
    fold_index: int,
) -> tuple[list[PatchRect], np.ndarray, int]:
    """Draw patches into a copy of `occupied` until the labeled-pixel budget
    is met; raises after `max_attempts` consecutive rejections."""
    label_arr = labels.labels
    occ = occupied.copy()
    patches: list[PatchRect] = []
    collected = 0
    rejections = 0
    while collected < target:
        if rejections >= max_attempts:
            raise ValueError(
                f"fold {fold_index}: patch budget unreachable, {target - collected} "
                f"training pixels still needed after {max_attempts} consecutive rejections"
            )
        row = int(rng.integers(0, labels.height - h_p + 1))
        col = int(rng.integers(0, labels.width - w_p + 1))
        if occ[row : row + h_p, col : col + w_p].any():
            rejections += 1
            continue
        rejections = 0
        occ[row : row + h_p, col : col + w_p] = True
        patches.append(PatchRect(row=row, col=col, height=h_p, width=w_p))
        collected += int(np.count_nonzero(label_arr[row : row + h_p, col : col + w_p]))
    return patches, occ, collected


def generate_patch_folds(labels: LabelMap, config: PatchSplitConfig) -> FoldSet:
    """Generate `config.fold_count` non-overlapping patch folds.

    Deterministic for a given (labels, config): fold i uses the sub-stream
    (seed, i, retry). With allow_class_absence=False a fold is redrawn with
    a fresh sub-stream until every class present in the scene has at least
    one training pixel (bounded by max_draw_attempts retries).
    """
    w_p, h_p = config.resolve_patch_dims(labels)
    labeled_total = labels.labeled_count()
    needed = config.fold_count * config.target_training_pixels
    if labeled_total < needed:
        raise ValueError(
            f"scene has {labeled_total} labeled pixels, fewer than "
            f"fold_count * target = {needed}"
        )

    scene_classes = {c for c, n in class_histogram(labels, labels.labeled_coords()).items() if n > 0}
    occupied = np.zeros((labels.height, labels.width), dtype=bool)
    all_labeled = set(labels.labeled_coords())
    folds: list[Fold] = []

    for fold_index in range(config.fold_count):
        for retry in range(config.max_draw_attempts):
            rng = seeded_rng(config.seed, fold_index, retry)
            patches, occ, _ = _draw_fold_patches(
                labels, occupied, w_p, h_p, config.target_training_pixels,
                config.max_draw_attempts, rng, fold_index,
            )
            training = {
                pixel for patch in patches for pixel in patch.coords()
                if labels.label_of(pixel) > 0
            }
            train_counts = class_histogram(labels, training)
            if config.allow_class_absence or all(
                train_counts.get(c, 0) > 0 for c in scene_classes
            ):
                break
        else:
            absent = sorted(c for c in scene_classes if train_counts.get(c, 0) == 0)
            raise ValueError(
                f"fold {fold_index}: could not cover classes {absent} within "
                f"{config.max_draw_attempts} redraws (balanced patch mode)"
            )
        occupied = occ
        test = all_labeled - training
        folds.append(
            Fold(
                index=fold_index,
                patches=patches,
                training_pixels=training,
                test_pixels=test,
                height=labels.height,
                width=labels.width,
                train_class_counts=train_counts,
                test_class_counts=class_histogram(labels, test),
            )
        )

    return FoldSet(
        folds=folds,
        config=config,
        height=labels.height,
        width=labels.width,
        class_count=labels.class_count,
    )


@dataclass(frozen=True, slots=True)
class ScenePreset:
    """Published benchmark geometry for one of the classic scenes."""

    name: str
    height: int
    width: int
    patch_width: int
    patch_height: int
    fold_count: int
    class_count: int

    def config(self, target_training_pixels: int, seed: int, **overrides) -> PatchSplitConfig:
        params = dict(
            target_training_pixels=target_training_pixels,
            patch_width=self.patch_width,
            patch_height=self.patch_height,
            fold_count=self.fold_count,
            seed=seed,
        )
        params.update(overrides)
        return PatchSplitConfig(**params)


PRESETS = {
    "indian_pines": ScenePreset("indian_pines", 145, 145, 7, 7, 4, 16),
    "salinas": ScenePreset("salinas", 512, 217, 22, 10, 5, 16),
    "pavia_university": ScenePreset("pavia_university", 610, 340, 30, 17, 5, 9),
}
