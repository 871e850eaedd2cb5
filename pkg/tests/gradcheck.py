"""Central finite-difference gradient checking for the network."""

import numpy as np

from eegaug.net import ModelConfig, backward, cross_entropy, forward, init_params
from eegaug.net.model import TRAINABLE_FIELDS

# Group-norm floor for the relative-error denominator.  The conv bias
# gradients are exactly zero (batch normalization cancels constant per-map
# shifts), leaving only finite-difference noise of ~1e-11 per entry; real
# gradient groups sit at 1e-2 .. 1.  1e-6 separates the two regimes.
NORM_FLOOR = 1e-6


def small_model_config(**overrides) -> ModelConfig:
    base = dict(
        in_channels=3,
        in_samples=20,
        num_classes=2,
        temporal_filters=6,
        temporal_kernel=11,
        spatial_filters=6,
        dropout_p=0.0,
    )
    base.update(overrides)
    return ModelConfig(**base)


def finite_difference_errors(config, seed, batch=2, step=1e-5):
    """Relative error per parameter group between analytic and central
    finite-difference gradients of the train-mode loss."""
    rng = np.random.default_rng(seed)
    params = init_params(config, rng)
    x = rng.normal(size=(batch, config.in_channels, config.in_samples))
    y = rng.integers(0, config.num_classes, size=batch)

    def loss():
        probs, _ = forward(params, config, x, mode="train")
        return cross_entropy(probs, y)

    probs, cache = forward(params, config, x, mode="train")
    grads = backward(cache, y)

    errors = {}
    for name in TRAINABLE_FIELDS:
        arr = getattr(params, name)
        flat = arr.ravel()
        fd = np.zeros(flat.size)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + step
            up = loss()
            flat[i] = orig - step
            down = loss()
            flat[i] = orig
            fd[i] = (up - down) / (2.0 * step)
        analytic = grads[name].ravel()
        denom = max(np.linalg.norm(analytic), np.linalg.norm(fd), NORM_FLOOR)
        errors[name] = np.linalg.norm(analytic - fd) / denom
    return errors
