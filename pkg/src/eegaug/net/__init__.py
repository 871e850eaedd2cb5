"""Shallow convolutional classifier: model, gradients, Adam training."""

from .model import (
    ModelConfig,
    ModelParams,
    backward,
    commit_running_stats,
    forward,
    init_params,
    load_checkpoint,
    predict,
    save_checkpoint,
)
from .training import (
    AdamState,
    EvalRecord,
    TrainConfig,
    TrainResult,
    adam_step,
    cross_entropy,
    init_adam,
    train,
)

__all__ = [
    "ModelConfig",
    "ModelParams",
    "backward",
    "commit_running_stats",
    "forward",
    "init_params",
    "load_checkpoint",
    "predict",
    "save_checkpoint",
    "AdamState",
    "EvalRecord",
    "TrainConfig",
    "TrainResult",
    "adam_step",
    "cross_entropy",
    "init_adam",
    "train",
]
