"""Gaussian amplitude perturbation of spectrograms with phase preservation.

New training trials are produced per channel by the pipeline
analyse -> add Gaussian noise to the amplitudes -> resynthesize.  The phase
matrix is carried through untouched, so only the magnitude structure of the
signal is disturbed.  All randomness is keyed by
(seed, trial index, copy index, channel index), which makes augmented
datasets reproducible and the per-trial work order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .data import Dataset, TimeSeriesTrial
from .errors import ConfigError
from .stft import Spectrogram, WindowSpec, istft, stft


@dataclass(frozen=True)
class PerturbationConfig:
    """Noise parameters for amplitude perturbation.

    ``std_dev`` is expressed in the amplitude units of the signals being
    augmented; with per-channel standardized signals the useful range is
    roughly 1e-4 .. 1e-2.
    """

    mean: float = 0.0
    std_dev: float = 0.001
    copies_per_trial: int = 1
    seed: int = 0
    window: WindowSpec = WindowSpec()

    def __post_init__(self):
        if self.std_dev < 0:
            raise ConfigError(f"std_dev must be >= 0, got {self.std_dev}")
        if self.copies_per_trial < 0:
            raise ConfigError(
                f"copies_per_trial must be >= 0, got {self.copies_per_trial}"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in an unsigned 64-bit integer")


def noise_key(seed: int, trial_index: int, copy_index: int) -> np.random.SeedSequence:
    """Deterministic per-variant random key; channels are spawned from it."""
    return np.random.SeedSequence([seed, trial_index, copy_index])


def _channel_stream(key: np.random.SeedSequence, channel: int) -> np.random.Generator:
    child = np.random.SeedSequence(
        entropy=key.entropy, spawn_key=tuple(key.spawn_key) + (channel,)
    )
    return np.random.Generator(np.random.PCG64(child))


def perturb_amplitudes(
    spec_data: Spectrogram, cfg: PerturbationConfig, rng: np.random.Generator
) -> Spectrogram:
    """Add i.i.d. Gaussian noise to every amplitude bin, clamping at zero.

    The phase matrix of the result is the input's phase matrix, bit for bit;
    window and original length are carried through unchanged.
    """
    if cfg.std_dev == 0.0:
        noise = np.full_like(spec_data.amplitude, cfg.mean)
    else:
        noise = rng.normal(cfg.mean, cfg.std_dev, size=spec_data.amplitude.shape)
    perturbed = np.maximum(spec_data.amplitude + noise, 0.0)
    return Spectrogram(
        amplitude=perturbed,
        phase=spec_data.phase,
        window=spec_data.window,
        original_length=spec_data.original_length,
    )


def augment_trial(
    trial: TimeSeriesTrial,
    cfg: PerturbationConfig,
    rng_key: np.random.SeedSequence,
) -> TimeSeriesTrial:
    """Perturb one trial: per channel, stft -> perturb amplitudes -> istft.

    Each channel draws from its own random stream spawned from ``rng_key``,
    so the noise fields are independent across channels.  Shape, label and
    channel order are preserved.
    """
    channels = np.empty_like(trial.data)
    for ch in range(trial.data.shape[0]):
        sg = stft(trial.data[ch], cfg.window)
        perturbed = perturb_amplitudes(sg, cfg, _channel_stream(rng_key, ch))
        channels[ch] = istft(perturbed)
    return TimeSeriesTrial(data=channels, label=trial.label)


def augment_dataset(data: Dataset, cfg: PerturbationConfig) -> Dataset:
    """Append ``copies_per_trial`` perturbed variants of every trial.

    The originals are kept verbatim and come first, followed by the variants
    in (trial index, copy index) order, so the output holds
    ``len(data) * (1 + copies_per_trial)`` trials with unchanged class
    proportions.  Fixed ``cfg.seed`` gives bit-identical output across runs.
    """
    variants = []
    for i, trial in enumerate(data.trials):
        for j in range(cfg.copies_per_trial):
            variants.append(augment_trial(trial, cfg, noise_key(cfg.seed, i, j)))
    return replace(data, trials=tuple(data.trials) + tuple(variants))
