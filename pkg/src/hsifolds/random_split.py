"""Random pixel splits: balanced / imbalanced Monte-Carlo draws and validation carving.

These are the literature-standard splits whose spatial leakage the rest of
the package measures; the patch-based alternative lives in `patch_split`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Coord, LabelMap, _round_half_up, seeded_rng
from .sampling import sample_without_replacement

BALANCED = "balanced"
IMBALANCED = "imbalanced"


@dataclass(slots=True)
class RandomSplitConfig:
    mode: str
    per_class_training_pixels: int | None = None
    total_training_pixels: int | None = None
    runs: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in (BALANCED, IMBALANCED):
            raise ValueError(f"mode must be '{BALANCED}' or '{IMBALANCED}', got {self.mode!r}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.mode == BALANCED:
            if self.per_class_training_pixels is None or self.total_training_pixels is not None:
                raise ValueError("balanced mode takes per_class_training_pixels only")
            if self.per_class_training_pixels < 1:
                raise ValueError("per_class_training_pixels must be >= 1")
        else:
            if self.total_training_pixels is None or self.per_class_training_pixels is not None:
                raise ValueError("imbalanced mode takes total_training_pixels only")
            if self.total_training_pixels < 1:
                raise ValueError("total_training_pixels must be >= 1")


@dataclass(slots=True)
class SplitAssignment:
    """Disjoint training/test pixel sets for one Monte-Carlo run."""

    training_pixels: set[Coord]
    test_pixels: set[Coord]
    run: int
    height: int
    width: int
    train_class_counts: dict[int, int] = field(default_factory=dict)
    test_class_counts: dict[int, int] = field(default_factory=dict)


def class_histogram(labels: LabelMap, pixels: set[Coord] | list[Coord]) -> dict[int, int]:
    """Per-class pixel counts over 1..K; classes absent from `pixels` get 0."""
    counts = {c: 0 for c in range(1, labels.class_count + 1)}
    for pixel in pixels:
        label = labels.label_of(pixel)
        if label > 0:
            counts[label] += 1
    return counts


def generate_random_split(labels: LabelMap, config: RandomSplitConfig, run: int = 0) -> SplitAssignment:
    """Draw one random split; deterministic per (config.seed, run)."""
    rng = seeded_rng(config.seed, run)
    labeled = labels.labeled_coords()
    training: list[Coord] = []

    if config.mode == BALANCED:
        n = config.per_class_training_pixels
        by_class: dict[int, list[Coord]] = {c: [] for c in range(1, labels.class_count + 1)}
        for pixel in labeled:
            by_class[labels.label_of(pixel)].append(pixel)
        for c in sorted(by_class):
            pool = by_class[c]
            if len(pool) < n:
                raise ValueError(
                    f"class {c} has only {len(pool)} labeled pixels, cannot draw {n}"
                )
            training.extend(sample_without_replacement(pool, n, rng))
    else:
        total = config.total_training_pixels
        if total > len(labeled):
            raise ValueError(
                f"requested {total} training pixels but only {len(labeled)} are labeled"
            )
        training = sample_without_replacement(labeled, total, rng)

    training_set = set(training)
    test_set = set(labeled) - training_set
    return SplitAssignment(
        training_pixels=training_set,
        test_pixels=test_set,
        run=run,
        height=labels.height,
        width=labels.width,
        train_class_counts=class_histogram(labels, training_set),
        test_class_counts=class_histogram(labels, test_set),
    )


def monte_carlo_splits(labels: LabelMap, config: RandomSplitConfig) -> list[SplitAssignment]:
    """All `config.runs` independent assignments, run i sub-seeded by (seed, i)."""
    return [generate_random_split(labels, config, run) for run in range(config.runs)]


def carve_validation(
    split: SplitAssignment, fraction: float, seed: int
) -> tuple[set[Coord], set[Coord]]:
    """Split training pixels into (reduced training, validation) subsets.

    The validation subset is drawn uniformly from the training set; its size
    is round(fraction * |T|) clamped to [1, |T| - 1], so neither side is
    ever empty, and it never touches test pixels.
    """
    if not (0 < fraction < 1):
        raise ValueError(f"fraction must lie in (0, 1), got {fraction}")
    n_train = len(split.training_pixels)
    if n_train < 2:
        raise ValueError(f"need >= 2 training pixels to carve validation, got {n_train}")
    n_val = min(max(_round_half_up(Fraction(fraction) * n_train), 1), n_train - 1)
    pool = sorted(split.training_pixels)
    validation = set(sample_without_replacement(pool, n_val, seeded_rng(seed)))
    return split.training_pixels - validation, validation
