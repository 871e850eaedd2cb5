#!/usr/bin/env python3
"""Compare the compiled and pure-numpy convolution kernels.

Times the four hot primitives at the shapes the training loop actually uses,
plus one full train step, and prints a table with the speedup of the
compiled backend.  Usage:

    python benchmarks/bench_kernels.py [--batch 64] [--channels 4]
        [--samples 128] [--filters 25] [--repeat 30]
"""

import argparse
import time

import numpy as np

from eegaug.kernels import _conv_py

try:
    from eegaug.kernels import _convkernels
except ImportError:
    _convkernels = None


def timeit(fn, *args, repeat):
    fn(*args)  # warm up
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best * 1000.0


def kernel_cases(batch, channels, samples, filters):
    kt = 11
    tc = samples - kt + 1
    rng = np.random.default_rng(0)
    x = rng.normal(size=(batch, channels, samples))
    wt = rng.normal(size=(filters, kt))
    bt = rng.normal(size=filters)
    h1 = rng.normal(size=(batch, filters, channels, tc))
    ws = rng.normal(size=(filters, filters, channels))
    bs = rng.normal(size=filters)
    gy1 = rng.normal(size=(batch, filters, channels, tc))
    gy2 = rng.normal(size=(batch, filters, tc))
    return [
        ("temporal fwd", "temporal_conv_fwd", (x, wt, bt)),
        ("temporal bwd", "temporal_conv_bwd", (x, wt, gy1, False)),
        ("spatial fwd", "spatial_conv_fwd", (h1, ws, bs)),
        ("spatial bwd", "spatial_conv_bwd", (h1, ws, gy2)),
    ]


def bench_train_step(batch, channels, samples, repeat):
    """One forward+backward through the whole network per backend."""
    import importlib

    from eegaug.net.model import ModelConfig, backward, forward, init_params

    cfg = ModelConfig(in_channels=channels, in_samples=samples, num_classes=2,
                      dropout_p=0.5)
    params = init_params(cfg, np.random.default_rng(0))
    x = np.random.default_rng(1).normal(size=(batch, channels, samples))
    y = np.random.default_rng(2).integers(0, 2, size=batch)

    results = {}
    kernels_pkg = importlib.import_module("eegaug.kernels")
    original = kernels_pkg._impl
    backends = [("python", _conv_py)]
    if _convkernels is not None:
        backends.append(("cython", _convkernels))
    try:
        for name, impl in backends:
            kernels_pkg._impl = impl

            def step():
                rng = np.random.default_rng(3)
                _, cache = forward(params, cfg, x, mode="train", rng=rng)
                backward(cache, y)

            results[name] = timeit(step, repeat=max(3, repeat // 5))
    finally:
        kernels_pkg._impl = original
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--channels", type=int, default=4)
    ap.add_argument("--samples", type=int, default=128)
    ap.add_argument("--filters", type=int, default=25)
    ap.add_argument("--repeat", type=int, default=30)
    args = ap.parse_args()

    if _convkernels is None:
        print("compiled backend not built; showing numpy timings only")

    print(f"shapes: batch={args.batch} channels={args.channels} "
          f"samples={args.samples} filters={args.filters}")
    print(f"{'kernel':14s} {'numpy ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    totals = {"python": 0.0, "cython": 0.0}
    for label, fn_name, fn_args in kernel_cases(
        args.batch, args.channels, args.samples, args.filters
    ):
        t_py = timeit(getattr(_conv_py, fn_name), *fn_args, repeat=args.repeat)
        totals["python"] += t_py
        if _convkernels is not None:
            t_cy = timeit(getattr(_convkernels, fn_name), *fn_args,
                          repeat=args.repeat)
            totals["cython"] += t_cy
            print(f"{label:14s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.2f}x")
        else:
            print(f"{label:14s} {t_py:10.2f} {'-':>10s} {'-':>8s}")

    if _convkernels is not None:
        print(f"{'kernels total':14s} {totals['python']:10.2f} "
              f"{totals['cython']:10.2f} "
              f"{totals['python'] / totals['cython']:7.2f}x")

    step = bench_train_step(args.batch, args.channels, args.samples, args.repeat)
    if "cython" in step:
        print(f"{'train step':14s} {step['python']:10.2f} {step['cython']:10.2f} "
              f"{step['python'] / step['cython']:7.2f}x")
    else:
        print(f"{'train step':14s} {step['python']:10.2f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
