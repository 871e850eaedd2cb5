"""Tests for eegaug.stft against closed forms and a naive DFT oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eegaug.errors import ConfigError, InputError, NumericError
from eegaug.stft import Spectrogram, WindowSpec, istft, make_window, num_frames, stft

from oracles import naive_rdft


class TestMakeWindow:
    def test_length_4_closed_form(self):
        w = make_window(WindowSpec(length=4, hop=2))
        np.testing.assert_allclose(w, [0.0, 0.5, 1.0, 0.5], atol=1e-15)

    def test_length_2_closed_form(self):
        w = make_window(WindowSpec(length=2, hop=1))
        np.testing.assert_allclose(w, [0.0, 1.0], atol=1e-15)

    def test_length_64_sums_to_half_length(self):
        # Periodic Hann sums to length/2: the cosine term sums to zero over
        # a full period.
        w = make_window(WindowSpec(length=64, hop=32))
        assert abs(w.sum() - 32.0) < 1e-12

    def test_hop_must_divide_length(self):
        with pytest.raises(ConfigError):
            WindowSpec(length=64, hop=24)

    def test_hop_cannot_exceed_length(self):
        with pytest.raises(ConfigError):
            WindowSpec(length=16, hop=32)

    def test_rejects_nonpositive(self):
        with pytest.raises(ConfigError):
            WindowSpec(length=0, hop=1)
        with pytest.raises(ConfigError):
            WindowSpec(length=8, hop=0)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ConfigError):
            WindowSpec(length=8, hop=4, kind="hamming")


class TestStft:
    def test_all_zero_signal(self):
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.zeros(256), spec)
        assert np.all(sg.amplitude == 0.0)
        assert np.all(sg.phase == 0.0)

    def test_too_short_signal_rejected(self):
        with pytest.raises(InputError):
            stft(np.zeros(63), WindowSpec(length=64, hop=32))

    def test_frame_count(self):
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.zeros(320), spec)
        padded = 320 + 2 * (64 - 32)
        assert sg.num_frames == (padded - 64) // 32 + 1
        assert sg.num_frames == num_frames(320, spec)

    def test_constant_signal_interior_frames(self):
        # Windowed constant = the Hann window itself: bin 0 holds the window
        # sum (32), bin 1 half the cosine mass (16), the rest is zero.
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.ones(320), spec)
        interior = range(1, 10)  # frames not touching the zero padding
        for m in interior:
            assert abs(sg.amplitude[0, m] - 32.0) < 1e-9
            assert abs(sg.amplitude[1, m] - 16.0) < 1e-9
            assert np.all(sg.amplitude[2:, m] < 1e-9)

    def test_constant_signal_against_naive_dft(self):
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.ones(320), spec)
        windowed = make_window(spec) * 1.0
        ref = np.abs(naive_rdft(windowed))
        np.testing.assert_allclose(sg.amplitude[:, 5], ref, atol=1e-9)

    def test_bin_aligned_cosine_leaks_one_bin(self):
        spec = WindowSpec(length=64, hop=32)
        n = np.arange(320)
        x = np.cos(2 * np.pi * 8 * n / 64)
        sg = stft(x, spec)
        mask = np.ones(spec.num_bins, dtype=bool)
        mask[[7, 8, 9]] = False
        for m in range(1, 10):
            assert np.all(sg.amplitude[mask, m] < 1e-9)
            assert sg.amplitude[8, m] > 1.0

    def test_cosine_frame_against_naive_dft(self):
        spec = WindowSpec(length=64, hop=32)
        n = np.arange(320)
        x = np.cos(2 * np.pi * 8 * n / 64)
        sg = stft(x, spec)
        # Frame 3 starts at padded index 96 = original index 64, a whole
        # number of periods, so the frame content is cos(2*pi*8*k/64).
        frame = make_window(spec) * np.cos(2 * np.pi * 8 * np.arange(64) / 64)
        ref = naive_rdft(frame)
        np.testing.assert_allclose(sg.amplitude[:, 3], np.abs(ref), atol=1e-9)

    def test_linearity(self):
        spec = WindowSpec(length=32, hop=16)
        rng = np.random.default_rng(7)
        x = rng.normal(size=200)
        y = rng.normal(size=200)
        a, b = 1.7, -0.3
        zx = stft(x, spec)
        zy = stft(y, spec)
        zc = stft(a * x + b * y, spec)
        combined = a * zx.amplitude * np.exp(1j * zx.phase) + b * zy.amplitude * np.exp(
            1j * zy.phase
        )
        direct = zc.amplitude * np.exp(1j * zc.phase)
        assert np.max(np.abs(direct - combined)) < 1e-9

    def test_parseval_per_frame_against_naive_dft(self):
        # One-sided Parseval: sum(x^2) = (|X0|^2 + 2*sum|Xk|^2 + |XN/2|^2)/N.
        rng = np.random.default_rng(3)
        frame = rng.normal(size=64) * make_window(WindowSpec(64, 32))
        bins = naive_rdft(frame)
        weights = np.full(33, 2.0)
        weights[0] = weights[-1] = 1.0
        lhs = np.sum(frame**2)
        rhs = np.sum(weights * np.abs(bins) ** 2) / 64
        assert abs(lhs - rhs) / abs(lhs) < 1e-9

    def test_amplitude_nonnegative(self):
        rng = np.random.default_rng(11)
        sg = stft(rng.normal(size=500), WindowSpec(length=64, hop=32))
        assert np.all(sg.amplitude >= 0.0)

    def test_rejects_nonfinite_signal(self):
        x = np.zeros(128)
        x[5] = np.nan
        with pytest.raises(InputError):
            stft(x, WindowSpec(length=64, hop=32))


class TestIstft:
    def test_round_trip_random(self):
        rng = np.random.default_rng(42)
        x = rng.normal(size=1000)
        spec = WindowSpec(length=64, hop=32)
        y = istft(stft(x, spec))
        assert y.shape == x.shape
        assert np.max(np.abs(y - x)) < 1e-9

    def test_round_trip_impulse(self):
        x = np.zeros(1000)
        x[500] = 1.0
        y = istft(stft(x, WindowSpec(length=64, hop=32)))
        assert abs(y[500] - 1.0) < 1e-9
        off = np.delete(y, 500)
        assert np.max(np.abs(off)) < 1e-9

    def test_all_zero_spectrogram(self):
        spec = WindowSpec(length=64, hop=32)
        frames = num_frames(300, spec)
        sg = Spectrogram(
            np.zeros((spec.num_bins, frames)),
            np.zeros((spec.num_bins, frames)),
            spec,
            300,
        )
        y = istft(sg)
        assert y.shape == (300,)
        assert np.all(y == 0.0)

    @pytest.mark.parametrize(
        "length,hop,n",
        [
            (64, 32, 64),
            (64, 32, 65),
            (64, 16, 333),
            (32, 8, 100),
            (16, 4, 47),
            (8, 4, 1000),
        ],
    )
    def test_round_trip_grid(self, length, hop, n):
        rng = np.random.default_rng(length * 1000 + hop * 10 + n)
        x = rng.normal(size=n)
        y = istft(stft(x, WindowSpec(length=length, hop=hop)))
        assert np.max(np.abs(y - x)) < 1e-9

    def test_no_overlap_reconstruction_refused(self):
        # hop == length is constructible but the Hann window vanishes at the
        # frame starts, so the synthesis envelope has zeros there.
        spec = WindowSpec(length=32, hop=32)
        sg = stft(np.ones(128), spec)
        with pytest.raises(NumericError):
            istft(sg)

    def test_mismatched_frame_count_rejected(self):
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.ones(320), spec)
        with pytest.raises(InputError):
            Spectrogram(sg.amplitude[:, :-1], sg.phase[:, :-1], spec, 320)

    def test_negative_amplitude_rejected(self):
        spec = WindowSpec(length=64, hop=32)
        sg = stft(np.ones(320), spec)
        bad = sg.amplitude.copy()
        bad[0, 0] = -1.0
        with pytest.raises(InputError):
            Spectrogram(bad, sg.phase, spec, 320)


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n=st.integers(min_value=64, max_value=400),
    hop_exp=st.sampled_from([1, 2, 3]),
)
def test_round_trip_property(seed, n, hop_exp):
    spec = WindowSpec(length=64, hop=64 >> hop_exp)
    x = np.random.default_rng(seed).normal(size=n)
    assert np.max(np.abs(istft(stft(x, spec)) - x)) < 1e-9
