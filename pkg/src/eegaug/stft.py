"""Windowed short-time Fourier analysis and exact overlap-add resynthesis.

A real signal is cut into overlapping frames, each frame is tapered with a
periodic Hann window and transformed with the real-input DFT.  The transform
is stored in polar form (amplitude, phase), which is the representation the
augmentation stage perturbs.  Reconstruction applies the window a second time,
overlap-adds the frames and divides by the accumulated squared-window
envelope, which makes the round trip exact (to rounding) wherever the
envelope is positive -- guaranteed on all retained samples when the hop
divides the window length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError, NumericError

WINDOW_KINDS = ("hann-periodic",)

# Default analysis grid: 50% overlap satisfies the positive-envelope condition
# and gives ~3.9 Hz per bin at a 250 Hz sampling rate.
DEFAULT_WINDOW_LENGTH = 64
DEFAULT_HOP = 32


@dataclass(frozen=True)
class WindowSpec:
    """Analysis window configuration.

    ``hop`` must divide ``length``; reconstruction relies on the overlapping
    squared windows covering every retained sample.
    """

    length: int = DEFAULT_WINDOW_LENGTH
    hop: int = DEFAULT_HOP
    kind: str = "hann-periodic"

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ConfigError(f"unknown window kind {self.kind!r}")
        if self.length <= 0 or self.hop <= 0:
            raise ConfigError("window length and hop must be positive")
        if self.hop > self.length:
            raise ConfigError(f"hop {self.hop} exceeds window length {self.length}")
        if self.length % self.hop != 0:
            raise ConfigError(
                f"hop {self.hop} must divide window length {self.length}"
            )

    @property
    def num_bins(self) -> int:
        """Frequency bins of the real-input transform: length/2 + 1."""
        return self.length // 2 + 1

    @property
    def pad(self) -> int:
        """Zero padding added at each end for centered framing."""
        return self.length - self.hop


def make_window(spec: WindowSpec) -> np.ndarray:
    """Periodic (DFT-even) Hann window, w[k] = 0.5*(1 - cos(2*pi*k/length))."""
    k = np.arange(spec.length, dtype=np.float64)
    return 0.5 * (1.0 - np.cos(2.0 * np.pi * k / spec.length))


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """Polar short-time spectrum of one real channel.

    ``amplitude`` and ``phase`` are (bins, frames) float64 matrices; bins run
    0..length/2 inclusive.  ``original_length`` is the sample count of the
    signal the spectrogram was computed from, needed to strip the framing
    padding on reconstruction.
    """

    amplitude: np.ndarray
    phase: np.ndarray
    window: WindowSpec
    original_length: int

    def __post_init__(self):
        if self.amplitude.shape != self.phase.shape:
            raise InputError(
                f"amplitude shape {self.amplitude.shape} != phase shape "
                f"{self.phase.shape}"
            )
        if self.amplitude.ndim != 2:
            raise InputError("amplitude/phase must be 2-D (bins, frames)")
        if self.amplitude.shape[0] != self.window.num_bins:
            raise InputError(
                f"expected {self.window.num_bins} bins, got {self.amplitude.shape[0]}"
            )
        if np.any(self.amplitude < 0):
            raise InputError("amplitudes must be nonnegative")
        if self.original_length < self.window.length:
            raise InputError("original_length shorter than one window")
        if self.amplitude.shape[1] != num_frames(self.original_length, self.window):
            raise InputError(
                f"frame count {self.amplitude.shape[1]} inconsistent with "
                f"original_length {self.original_length}"
            )

    @property
    def num_frames(self) -> int:
        return self.amplitude.shape[1]


def num_frames(signal_length: int, spec: WindowSpec) -> int:
    """Frames produced for a signal of ``signal_length`` samples:
    floor((padded_length - length)/hop) + 1 with padding of length - hop
    at each end."""
    padded = signal_length + 2 * spec.pad
    return (padded - spec.length) // spec.hop + 1


def stft(signal: np.ndarray, spec: WindowSpec) -> Spectrogram:
    """Short-time Fourier transform of a real 1-D signal.

    The signal is zero-padded by ``length - hop`` samples at each end so that
    edge samples receive full window coverage, framed with the configured hop,
    tapered with the periodic Hann window and transformed with the real-input
    DFT.  Phases of zero-magnitude bins are stored as 0.

    Parameters
    ----------
    signal : array_like
        Real 1-D signal, at least one window long.
    spec : WindowSpec
        Window length / hop configuration.

    Returns
    -------
    Spectrogram
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise InputError(f"signal must be 1-D, got shape {x.shape}")
    n = x.shape[0]
    if n < spec.length:
        raise InputError(
            f"signal length {n} shorter than window length {spec.length}"
        )
    if not np.all(np.isfinite(x)):
        raise InputError("signal contains non-finite values")

    padded = np.zeros(n + 2 * spec.pad, dtype=np.float64)
    padded[spec.pad:spec.pad + n] = x

    frames = num_frames(n, spec)
    window = make_window(spec)
    # (frames, length) view of the padded signal, one row per hop position.
    strided = np.lib.stride_tricks.sliding_window_view(padded, spec.length)
    segments = strided[::spec.hop][:frames] * window

    z = np.fft.rfft(segments, n=spec.length, axis=1).T  # (bins, frames)
    amplitude = np.abs(z)
    phase = np.angle(z)
    phase[amplitude == 0.0] = 0.0
    return Spectrogram(amplitude, phase, spec, n)


def istft(spec_data: Spectrogram) -> np.ndarray:
    """Inverse STFT by windowed overlap-add with envelope division.

    Each frame is rebuilt from amplitude*(cos(phase) + j*sin(phase)), inverse
    transformed, tapered with the synthesis (= analysis) window and
    overlap-added; the accumulated squared-window envelope is divided out and
    the framing padding stripped, returning exactly ``original_length``
    samples.
    """
    spec = spec_data.window
    n = spec_data.original_length
    frames = spec_data.num_frames

    z = spec_data.amplitude * np.exp(1j * spec_data.phase)
    segments = np.fft.irfft(z.T, n=spec.length, axis=1)  # (frames, length)

    window = make_window(spec)
    padded_len = n + 2 * spec.pad
    acc = np.zeros(padded_len, dtype=np.float64)
    envelope = np.zeros(padded_len, dtype=np.float64)
    w_sq = window * window
    for m in range(frames):
        start = m * spec.hop
        acc[start:start + spec.length] += window * segments[m]
        envelope[start:start + spec.length] += w_sq

    retained = slice(spec.pad, spec.pad + n)
    env = envelope[retained]
    if np.any(env <= 0.0):
        # Unreachable when hop divides length for the periodic Hann window.
        raise NumericError("zero synthesis envelope inside the retained region")
    return acc[retained] / env
