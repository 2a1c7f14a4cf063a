"""Training-plan arithmetic: LR schedule, freeze policy, token budgets,
validation split.  Pure functions, no optimizer state."""

from __future__ import annotations

import math
from dataclasses import dataclass

ETA_MIN_DEFAULT = 2e-5
ETA_MAX_DEFAULT = 2e-4

ALL_GROUPS = frozenset({"embedding", "output", "inner"})
EDGE_GROUPS = frozenset({"embedding", "output"})


@dataclass(frozen=True)
class LrScheduleConfig:
    """Linear warmup to ``eta_max``, cosine decay to ``eta_min``, then a
    constant tail of ``constant_steps`` at ``eta_min``."""

    total_steps: int
    warmup_steps: int = 0
    constant_steps: int = 0
    eta_min: float = ETA_MIN_DEFAULT
    eta_max: float = ETA_MAX_DEFAULT

    def __post_init__(self):
        if min(self.total_steps, self.warmup_steps, self.constant_steps) < 0:
            raise ValueError("step counts must be non-negative")
        if self.warmup_steps + self.constant_steps > self.total_steps:
            raise ValueError("warmup + constant exceeds total steps")
        if not 0 < self.eta_min <= self.eta_max:
            raise ValueError("need 0 < eta_min <= eta_max")


def lr_at_step(cfg: LrScheduleConfig, step: int) -> float:
    if not 0 <= step <= cfg.total_steps:
        raise ValueError(f"step {step} outside [0, {cfg.total_steps}]")
    decay_end = cfg.total_steps - cfg.constant_steps
    if step < cfg.warmup_steps:
        return cfg.eta_max * step / cfg.warmup_steps
    if step >= decay_end:
        return cfg.eta_min
    span = decay_end - cfg.warmup_steps
    # Written as a convex blend so the endpoints are exact.
    progress = (step - cfg.warmup_steps) / span
    weight = 0.5 * (1.0 + math.cos(math.pi * progress))
    return cfg.eta_max * weight + cfg.eta_min * (1.0 - weight)


@dataclass(frozen=True)
class FreezePolicy:
    """Which parameter groups train at a given step.

    ``none`` trains everything; ``steps`` keeps inner layers frozen for the
    first n steps; ``first-epoch`` keeps them frozen for one whole epoch.
    """

    mode: str = "none"
    steps: int = 0

    def __post_init__(self):
        if self.mode not in ("none", "steps", "first-epoch"):
            raise ValueError(f"unknown freeze mode {self.mode!r}")
        if self.steps < 0:
            raise ValueError("freeze step count must be >= 0")


def trainable_groups(policy: FreezePolicy, step: int, steps_per_epoch: int | None = None) -> frozenset[str]:
    if step < 0:
        raise ValueError("step must be >= 0")
    if policy.mode == "steps":
        frozen = step < policy.steps
    elif policy.mode == "first-epoch":
        if steps_per_epoch is None or steps_per_epoch <= 0:
            raise ValueError("first-epoch policy needs steps_per_epoch")
        frozen = step < steps_per_epoch
    else:
        frozen = False
    return EDGE_GROUPS if frozen else ALL_GROUPS


def steps_for_budget(total_tokens: float, batch_sequences: int, context_length: int) -> int:
    """Optimizer steps needed to see ``total_tokens`` once; a partial final
    batch still trains, so the division rounds up."""
    if total_tokens <= 0 or batch_sequences <= 0 or context_length <= 0:
        raise ValueError("token budget and batch shape must be positive")
    return math.ceil(total_tokens / (batch_sequences * context_length))


def split_validation(corpus_tokens: float, fraction: float = 0.0005) -> tuple[int, int]:
    """(train tokens, validation tokens) for a held-out fraction."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must be in (0, 1)")
    validation = round(corpus_tokens * fraction)
    return int(corpus_tokens - validation), int(validation)


@dataclass(frozen=True)
class SchedulePreset:
    """A named schedule + freeze policy, with optimizer metadata carried
    along for reporting (the optimizer itself is out of scope here)."""

    name: str
    warmup_steps: int
    constant_steps: int
    total_steps: int
    freeze: FreezePolicy = FreezePolicy("none")
    epochs: int = 1
    adam_beta1: float = 0.9
    adam_beta2: float = 0.95

    def schedule(self, total_steps: int | None = None) -> LrScheduleConfig:
        return LrScheduleConfig(
            total_steps=total_steps if total_steps is not None else self.total_steps,
            warmup_steps=self.warmup_steps,
            constant_steps=self.constant_steps,
        )


PRESETS = {
    # Source-vocabulary continuation run: one epoch of the full corpus.
    "opt-gams": SchedulePreset("opt-gams", 1000, 1000, 22622),
    # New-vocabulary run with transferred embeddings: inner layers frozen
    # for the first 1500 steps.
    "gams": SchedulePreset("gams", 2000, 500, 13413, FreezePolicy("steps", 1500)),
    # Four-epoch repetition of the new-vocabulary data; frozen first epoch.
    "multi-epoch": SchedulePreset("multi-epoch", 10000, 5000, 53652, FreezePolicy("first-epoch"), epochs=4),
    # Curated-data run (web crawls excluded).
    "quality": SchedulePreset("quality", 1000, 500, 10050),
}


def schedule_rows(
    preset: SchedulePreset, total_steps: int | None = None, steps_per_epoch: int | None = None
):
    """Yield (step, lr, trainable-group label) rows for export."""
    cfg = preset.schedule(total_steps)
    if preset.freeze.mode == "first-epoch" and steps_per_epoch is None:
        steps_per_epoch = cfg.total_steps // preset.epochs
    for step in range(cfg.total_steps + 1):
        groups = trainable_groups(preset.freeze, step, steps_per_epoch)
        label = "all" if groups == ALL_GROUPS else "+".join(sorted(groups))
        yield step, lr_at_step(cfg, step), label
