"""Cross-entropy loss, Adam, and the fixed-iteration training loop."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..data import Dataset
from ..errors import ConfigError, InputError, NumericError
from .model import (
    TRAINABLE_FIELDS,
    ModelConfig,
    ModelParams,
    backward,
    commit_running_stats,
    forward,
    init_params,
)

PROB_FLOOR = 1e-12

# Purpose tags salting the per-run random streams.
_STREAM_INIT = 0
_STREAM_DROPOUT = 1
_STREAM_SHUFFLE = 2


@dataclass(frozen=True)
class TrainConfig:
    """Optimization protocol: batched Adam for a fixed number of steps."""

    batch_size: int = 64
    iterations: int = 2000
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    seed: int = 0
    eval_every: int = 50

    def __post_init__(self):
        if self.batch_size < 1 or self.iterations < 1 or self.eval_every < 1:
            raise ConfigError("batch_size, iterations and eval_every must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1 and self.epsilon > 0):
            raise ConfigError("invalid Adam coefficients")


def cross_entropy(probs: np.ndarray, labels: np.ndarray) -> float:
    """Mean negative log probability of the true class.

    Probabilities are floored at 1e-12 inside the log so that confident
    mistakes stay finite.
    """
    probs = np.asarray(probs)
    labels = np.asarray(labels)
    if probs.ndim != 2 or labels.shape != (probs.shape[0],):
        raise InputError("probs must be (B, K) with one label per row")
    if np.max(np.abs(probs.sum(axis=1) - 1.0)) > 1e-9:
        raise InputError("probability rows must sum to 1 within 1e-9")
    if labels.min() < 0 or labels.max() >= probs.shape[1]:
        raise InputError("label out of range")
    picked = probs[np.arange(probs.shape[0]), labels]
    return float(-np.mean(np.log(np.maximum(picked, PROB_FLOOR))))


@dataclass(eq=False)
class AdamState:
    """First/second moment accumulators, one pair per trainable tensor."""

    step: int
    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]


def init_adam(params: ModelParams) -> AdamState:
    zeros = {k: np.zeros_like(v) for k, v in params.trainable().items()}
    return AdamState(
        step=0,
        m=zeros,
        v={k: np.zeros_like(v) for k, v in params.trainable().items()},
    )


def adam_step(
    params: ModelParams,
    grads: dict[str, np.ndarray],
    state: AdamState,
    cfg: TrainConfig,
    step_index: int,
) -> tuple[ModelParams, AdamState]:
    """One bias-corrected Adam update; refuses non-finite gradients.

    ``step_index`` is the 1-based optimizer step and must increase strictly.
    """
    if step_index != state.step + 1:
        raise InputError(
            f"step_index {step_index} does not follow state step {state.step}"
        )
    for name in TRAINABLE_FIELDS:
        if name not in grads:
            raise InputError(f"missing gradient for {name}")
        if not np.all(np.isfinite(grads[name])):
            raise NumericError(f"non-finite gradient for {name}; step refused")

    b1, b2 = cfg.beta1, cfg.beta2
    bc1 = 1.0 - b1**step_index
    bc2 = 1.0 - b2**step_index
    new_m, new_v, updates = {}, {}, {}
    for name in TRAINABLE_FIELDS:
        g = grads[name]
        m = b1 * state.m[name] + (1.0 - b1) * g
        v = b2 * state.v[name] + (1.0 - b2) * g * g
        m_hat = m / bc1
        v_hat = v / bc2
        updates[name] = getattr(params, name) - cfg.learning_rate * m_hat / (
            np.sqrt(v_hat) + cfg.epsilon
        )
        new_m[name] = m
        new_v[name] = v
    return replace(params, **updates), AdamState(step=step_index, m=new_m, v=new_v)


@dataclass(eq=False)
class EvalRecord:
    iteration: int
    train_loss: float
    train_accuracy: float
    val_loss: float
    val_accuracy: float


@dataclass(eq=False)
class TrainResult:
    best_params: ModelParams
    final_params: ModelParams
    history: list[EvalRecord]
    batch_losses: list[float] = field(repr=False, default_factory=list)
    best_iteration: int = 0
    best_val_accuracy: float = 0.0


def _evaluate(params, config, x, y, batch_size):
    losses = []
    correct = 0
    for start in range(0, x.shape[0], batch_size):
        chunk = x[start : start + batch_size]
        probs, _ = forward(params, config, chunk, mode="eval")
        losses.append(cross_entropy(probs, y[start : start + chunk.shape[0]]) * chunk.shape[0])
        correct += int(np.sum(probs.argmax(axis=1) == y[start : start + chunk.shape[0]]))
    return sum(losses) / x.shape[0], correct / x.shape[0]


def train(
    train_set: Dataset,
    val_set: Dataset,
    model_cfg: ModelConfig,
    train_cfg: TrainConfig,
) -> TrainResult:
    """Run exactly ``iterations`` mini-batch Adam steps.

    Batches cycle through a freshly shuffled permutation each epoch; a short
    final batch is allowed.  Validation (and training-set) loss/accuracy are
    recorded every ``eval_every`` iterations and at the last iteration; the
    returned ``best_params`` snapshot is the one with the highest validation
    accuracy (ties going to the earliest), ``final_params`` the state after
    the last step.  Fully deterministic under (seed, data, config).
    """
    if len(train_set) == 0:
        raise InputError("empty training set")
    x_train, y_train = train_set.stacked()
    x_val, y_val = val_set.stacked()
    if x_train.shape[1:] != (model_cfg.in_channels, model_cfg.in_samples):
        raise InputError(
            f"training data shaped {x_train.shape[1:]}, model expects "
            f"({model_cfg.in_channels}, {model_cfg.in_samples})"
        )

    seed = train_cfg.seed
    rng_init = np.random.default_rng(np.random.SeedSequence([seed, _STREAM_INIT]))
    rng_drop = np.random.default_rng(np.random.SeedSequence([seed, _STREAM_DROPOUT]))
    rng_shuf = np.random.default_rng(np.random.SeedSequence([seed, _STREAM_SHUFFLE]))

    params = init_params(model_cfg, rng_init)
    adam = init_adam(params)
    n = x_train.shape[0]
    order = rng_shuf.permutation(n)
    pos = 0

    history: list[EvalRecord] = []
    batch_losses: list[float] = []
    best_params = params
    best_iteration = 0
    best_acc = -1.0

    def record(iteration, current):
        tr_loss, tr_acc = _evaluate(
            current, model_cfg, x_train, y_train, train_cfg.batch_size
        )
        va_loss, va_acc = _evaluate(
            current, model_cfg, x_val, y_val, train_cfg.batch_size
        )
        history.append(EvalRecord(iteration, tr_loss, tr_acc, va_loss, va_acc))
        return va_acc

    record(0, params)

    for it in range(1, train_cfg.iterations + 1):
        if pos >= n:
            order = rng_shuf.permutation(n)
            pos = 0
        idx = order[pos : pos + train_cfg.batch_size]
        pos += train_cfg.batch_size

        probs, cache = forward(
            params, model_cfg, x_train[idx], mode="train", rng=rng_drop
        )
        batch_losses.append(cross_entropy(probs, y_train[idx]))
        grads = backward(cache, y_train[idx])
        params = commit_running_stats(params, cache)
        params, adam = adam_step(params, grads, adam, train_cfg, it)

        if it % train_cfg.eval_every == 0 or it == train_cfg.iterations:
            va_acc = record(it, params)
            if va_acc > best_acc:
                best_acc = va_acc
                best_params = params
                best_iteration = it

    return TrainResult(
        best_params=best_params,
        final_params=params,
        history=history,
        batch_losses=batch_losses,
        best_iteration=best_iteration,
        best_val_accuracy=best_acc,
    )
