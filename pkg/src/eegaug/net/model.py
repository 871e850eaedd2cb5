"""The shallow convolutional classifier: forward and backward passes.

Pipeline for a (batch, channels, samples) input:

1. temporal convolution, one (1 x kernel) filter bank slid along time,
   applied per channel, no activation; dropout in train mode
2. spatial convolution collapsing (maps, channels) per time step
3. batch normalization per feature map (batch statistics in train mode,
   running statistics in eval mode), then ELU; dropout in train mode
4. mean pooling along time
5. dropout, then a dense classification map over the pooled tensor, softmax

Both passes are written against the kernel dispatch layer; the backward pass
produces exact analytic gradients of the mean cross-entropy, including the
batch-statistics pathway of the normalization layer.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .. import kernels
from ..data import StandardizationStats
from ..errors import ConfigError, DataFormatError, InputError, NumericError

ECN1_MAGIC = b"ECN1"
ECN1_VERSION = 1

TRAINABLE_FIELDS = (
    "w_temporal",
    "b_temporal",
    "w_spatial",
    "b_spatial",
    "bn_gamma",
    "bn_beta",
    "w_classifier",
    "b_classifier",
)

# Checkpoint tensor order: ModelParams declaration order.
PARAM_FIELDS = (
    "w_temporal",
    "b_temporal",
    "w_spatial",
    "b_spatial",
    "bn_gamma",
    "bn_beta",
    "bn_running_mean",
    "bn_running_var",
    "w_classifier",
    "b_classifier",
)


@dataclass(frozen=True)
class ModelConfig:
    """Architecture hyperparameters; defaults follow the shallow network."""

    in_channels: int
    in_samples: int
    num_classes: int
    temporal_filters: int = 25
    temporal_kernel: int = 11
    spatial_filters: int = 25
    pool_size: int = 3
    pool_stride: int = 3
    dropout_p: float = 0.5
    bn_epsilon: float = 1e-5
    bn_momentum: float = 0.1

    def __post_init__(self):
        counts = (
            self.in_channels,
            self.in_samples,
            self.num_classes,
            self.temporal_filters,
            self.temporal_kernel,
            self.spatial_filters,
            self.pool_size,
            self.pool_stride,
        )
        if any(v < 1 for v in counts):
            raise ConfigError("all model dimensions must be positive")
        if not 0.0 <= self.dropout_p < 1.0:
            raise ConfigError(f"dropout_p must be in [0, 1), got {self.dropout_p}")
        if self.bn_epsilon <= 0 or not 0.0 < self.bn_momentum <= 1.0:
            raise ConfigError("invalid batch-norm epsilon/momentum")
        if self.conv_len < self.pool_size:
            raise ConfigError(
                f"in_samples={self.in_samples} too short: temporal output "
                f"{self.conv_len} < pool size {self.pool_size}"
            )

    @property
    def conv_len(self) -> int:
        """Time extent after the valid temporal convolution."""
        return self.in_samples - self.temporal_kernel + 1

    @property
    def pooled_len(self) -> int:
        """Time extent after mean pooling."""
        return (self.conv_len - self.pool_size) // self.pool_stride + 1


@dataclass(frozen=True, eq=False)
class ModelParams:
    """All learnable tensors plus batch-norm running statistics.

    Stored shapes (logical 4-D convolution shapes in brackets):

    w_temporal    (F, KT)     [F x 1 x 1 x KT]
    w_spatial     (G, F, C)   [G x F x C x 1]
    w_classifier  (K, G, Tp)  [K x G x 1 x Tp]
    """

    w_temporal: np.ndarray
    b_temporal: np.ndarray
    w_spatial: np.ndarray
    b_spatial: np.ndarray
    bn_gamma: np.ndarray
    bn_beta: np.ndarray
    bn_running_mean: np.ndarray
    bn_running_var: np.ndarray
    w_classifier: np.ndarray
    b_classifier: np.ndarray

    def __post_init__(self):
        for f in fields(self):
            arr = getattr(self, f.name)
            if not np.all(np.isfinite(arr)):
                raise NumericError(f"parameter {f.name} contains non-finite values")
        if np.any(self.bn_running_var < 0):
            raise NumericError("running variance must be nonnegative")

    def trainable(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in TRAINABLE_FIELDS}


def init_params(config: ModelConfig, rng: np.random.Generator) -> ModelParams:
    """Glorot-uniform weights, zero biases, identity batch-norm state.

    Weight limits use sqrt(6 / (fan_in + fan_out)) with the usual convolution
    fans; draw order is temporal, spatial, classifier.
    """
    c, f, g, k = (
        config.in_channels,
        config.temporal_filters,
        config.spatial_filters,
        config.num_classes,
    )
    kt, tp = config.temporal_kernel, config.pooled_len

    def glorot(shape, fan_in, fan_out):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=shape)

    return ModelParams(
        w_temporal=glorot((f, kt), kt, f * kt),
        b_temporal=np.zeros(f),
        w_spatial=glorot((g, f, c), f * c, g * c),
        b_spatial=np.zeros(g),
        bn_gamma=np.ones(g),
        bn_beta=np.zeros(g),
        bn_running_mean=np.zeros(g),
        bn_running_var=np.ones(g),
        w_classifier=glorot((k, g, tp), g * tp, k * tp),
        b_classifier=np.zeros(k),
    )


@dataclass(eq=False)
class ForwardCache:
    """Intermediates captured by a train-mode forward, consumed by backward."""

    config: ModelConfig
    params: ModelParams
    x: np.ndarray
    mask_temporal: np.ndarray | None
    temporal_dropped: np.ndarray
    bn_xhat: np.ndarray
    bn_inv_std: np.ndarray
    bn_nonneg: np.ndarray
    elu_out: np.ndarray
    mask_elu: np.ndarray | None
    mask_pooled: np.ndarray | None
    flat: np.ndarray
    probs: np.ndarray
    new_running_mean: np.ndarray
    new_running_var: np.ndarray
    mode: str


def _check_finite(arr: np.ndarray, layer: str) -> None:
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"non-finite activation in layer '{layer}'")


def _dropout_mask(rng: np.random.Generator, shape, p: float) -> np.ndarray:
    # Inverted dropout: surviving units are pre-scaled by 1/(1-p).
    return (rng.random(shape) >= p) / (1.0 - p)


def _mean_pool(x: np.ndarray, size: int, stride: int) -> np.ndarray:
    b, g, t = x.shape
    tp = (t - size) // stride + 1
    if size == stride:
        return x[:, :, : tp * size].reshape(b, g, tp, size).mean(axis=3)
    windows = np.lib.stride_tricks.sliding_window_view(x, size, axis=2)
    return windows[:, :, ::stride][:, :, :tp].mean(axis=3)


def _mean_pool_backward(gy: np.ndarray, t: int, size: int, stride: int) -> np.ndarray:
    b, g, tp = gy.shape
    gx = np.zeros((b, g, t))
    spread = gy / size
    for j in range(tp):
        gx[:, :, j * stride : j * stride + size] += spread[:, :, j, None]
    return gx


def forward(
    params: ModelParams,
    config: ModelConfig,
    batch: np.ndarray,
    mode: str = "eval",
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, ForwardCache]:
    """Run the network on a (batch, channels, samples) array.

    ``mode='train'`` uses batch statistics for normalization, applies the
    three dropout masks (drawn from ``rng``) and returns a cache suitable for
    :func:`backward`; the updated running statistics live in the cache and
    are committed by the caller.  ``mode='eval'`` uses running statistics and
    no dropout.
    """
    if mode not in ("train", "eval"):
        raise InputError(f"mode must be 'train' or 'eval', got {mode!r}")
    x = np.ascontiguousarray(batch, dtype=np.float64)
    if x.ndim != 3 or x.shape[1:] != (config.in_channels, config.in_samples):
        raise InputError(
            f"batch shape {x.shape} incompatible with configured "
            f"({config.in_channels}, {config.in_samples})"
        )
    train = mode == "train"
    use_dropout = train and config.dropout_p > 0.0
    if use_dropout and rng is None:
        raise InputError("train-mode forward with dropout requires an rng stream")

    h1 = kernels.temporal_conv_fwd(x, params.w_temporal, params.b_temporal)
    _check_finite(h1, "temporal_conv")

    mask1 = None
    d1 = h1
    if use_dropout:
        mask1 = _dropout_mask(rng, h1.shape, config.dropout_p)
        d1 = h1 * mask1

    h2 = kernels.spatial_conv_fwd(d1, params.w_spatial, params.b_spatial)
    _check_finite(h2, "spatial_conv")

    if train:
        mu = h2.mean(axis=(0, 2))
        var = h2.var(axis=(0, 2))
        new_mean = (1.0 - config.bn_momentum) * params.bn_running_mean + (
            config.bn_momentum * mu
        )
        new_var = (1.0 - config.bn_momentum) * params.bn_running_var + (
            config.bn_momentum * var
        )
    else:
        mu = params.bn_running_mean
        var = params.bn_running_var
        new_mean = params.bn_running_mean
        new_var = params.bn_running_var
    inv_std = 1.0 / np.sqrt(var + config.bn_epsilon)
    xhat = (h2 - mu[None, :, None]) * inv_std[None, :, None]
    bn_out = params.bn_gamma[None, :, None] * xhat + params.bn_beta[None, :, None]
    _check_finite(bn_out, "batch_norm")

    a = np.where(bn_out >= 0, bn_out, np.expm1(bn_out))
    _check_finite(a, "elu")

    mask2 = None
    d2 = a
    if use_dropout:
        mask2 = _dropout_mask(rng, a.shape, config.dropout_p)
        d2 = a * mask2

    pooled = _mean_pool(d2, config.pool_size, config.pool_stride)
    _check_finite(pooled, "mean_pool")

    mask3 = None
    d3 = pooled
    if use_dropout:
        mask3 = _dropout_mask(rng, pooled.shape, config.dropout_p)
        d3 = pooled * mask3

    flat = d3.reshape(x.shape[0], -1)
    w2d = params.w_classifier.reshape(config.num_classes, -1)
    logits = flat @ w2d.T + params.b_classifier
    _check_finite(logits, "classifier")

    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    probs = e / e.sum(axis=1, keepdims=True)

    cache = ForwardCache(
        config=config,
        params=params,
        x=x,
        mask_temporal=mask1,
        temporal_dropped=d1,
        bn_xhat=xhat,
        bn_inv_std=inv_std,
        bn_nonneg=bn_out >= 0,
        elu_out=a,
        mask_elu=mask2,
        mask_pooled=mask3,
        flat=flat,
        probs=probs,
        new_running_mean=new_mean,
        new_running_var=new_var,
        mode=mode,
    )
    return probs, cache


def backward(cache: ForwardCache, labels: np.ndarray) -> dict[str, np.ndarray]:
    """Exact gradients of the mean cross-entropy w.r.t. every trainable
    parameter, reusing the dropout masks and batch statistics of the cached
    train-mode forward."""
    if cache.mode != "train":
        raise InputError("backward requires a cache from a train-mode forward")
    labels = np.asarray(labels)
    cfg = cache.config
    params = cache.params
    b = cache.x.shape[0]
    if labels.shape != (b,):
        raise InputError(
            f"labels shape {labels.shape} does not match cached batch size {b}"
        )
    if labels.min() < 0 or labels.max() >= cfg.num_classes:
        raise InputError("label out of range for cached model")

    # Softmax + cross-entropy collapse to (p - onehot)/B at the logits.
    dlogits = cache.probs.copy()
    dlogits[np.arange(b), labels] -= 1.0
    dlogits /= b

    w2d = params.w_classifier.reshape(cfg.num_classes, -1)
    g_wc = (dlogits.T @ cache.flat).reshape(params.w_classifier.shape)
    g_bc = dlogits.sum(axis=0)
    dflat = dlogits @ w2d
    dpool = dflat.reshape(b, cfg.spatial_filters, cfg.pooled_len)
    if cache.mask_pooled is not None:
        dpool = dpool * cache.mask_pooled

    dd2 = _mean_pool_backward(dpool, cfg.conv_len, cfg.pool_size, cfg.pool_stride)
    da = dd2 if cache.mask_elu is None else dd2 * cache.mask_elu

    # d/dz elu(z) = 1 for z >= 0, exp(z) = elu(z) + 1 otherwise.
    delu = np.where(cache.bn_nonneg, 1.0, cache.elu_out + 1.0)
    dbn = da * delu

    g_gamma = np.sum(dbn * cache.bn_xhat, axis=(0, 2))
    g_beta = np.sum(dbn, axis=(0, 2))

    dxhat = dbn * params.bn_gamma[None, :, None]
    n = b * cfg.conv_len
    sum_dxhat = dxhat.sum(axis=(0, 2), keepdims=True)
    sum_dxhat_xhat = np.sum(dxhat * cache.bn_xhat, axis=(0, 2), keepdims=True)
    dh2 = (cache.bn_inv_std[None, :, None] / n) * (
        n * dxhat - sum_dxhat - cache.bn_xhat * sum_dxhat_xhat
    )

    dd1, g_ws, g_bs = kernels.spatial_conv_bwd(
        cache.temporal_dropped, params.w_spatial, dh2
    )
    dh1 = dd1 if cache.mask_temporal is None else dd1 * cache.mask_temporal
    _, g_wt, g_bt = kernels.temporal_conv_bwd(
        cache.x, params.w_temporal, dh1, need_gx=False
    )

    return {
        "w_temporal": g_wt,
        "b_temporal": g_bt,
        "w_spatial": g_ws,
        "b_spatial": g_bs,
        "bn_gamma": g_gamma,
        "bn_beta": g_beta,
        "w_classifier": g_wc,
        "b_classifier": g_bc,
    }


def commit_running_stats(params: ModelParams, cache: ForwardCache) -> ModelParams:
    """Adopt the running batch-norm statistics produced by a forward pass."""
    return replace(
        params,
        bn_running_mean=cache.new_running_mean,
        bn_running_var=cache.new_running_var,
    )


def predict(
    params: ModelParams,
    config: ModelConfig,
    trials: np.ndarray,
    batch_size: int = 256,
) -> tuple[np.ndarray, np.ndarray]:
    """Eval-mode class decisions and probabilities for (n, channels, samples).

    Ties in the probability row go to the smaller class index.  Results are
    independent of how the input is batched (running statistics, no dropout).
    """
    x = np.asarray(trials, dtype=np.float64)
    if x.ndim == 2:
        x = x[None]
    probs = np.empty((x.shape[0], config.num_classes))
    for start in range(0, x.shape[0], batch_size):
        chunk = x[start : start + batch_size]
        probs[start : start + chunk.shape[0]], _ = forward(
            params, config, chunk, mode="eval"
        )
    return probs.argmax(axis=1), probs


# --- ECN1 checkpoint persistence -------------------------------------------

_ECN_HEAD = struct.Struct("<4sB8I3d")


def _write_tensor(fh, arr: np.ndarray) -> None:
    arr = np.asarray(arr, dtype=np.float64)
    fh.write(struct.pack("<I", arr.ndim))
    fh.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
    fh.write(arr.astype("<f8").tobytes(order="C"))


def _read_tensor(buf: memoryview, offset: int, path) -> tuple[np.ndarray, int]:
    if offset + 4 > len(buf):
        raise DataFormatError(f"{path}: truncated checkpoint (tensor header)")
    (ndim,) = struct.unpack_from("<I", buf, offset)
    offset += 4
    if ndim > 4 or offset + 4 * ndim > len(buf):
        raise DataFormatError(f"{path}: corrupt tensor dimensions")
    dims = struct.unpack_from(f"<{ndim}I", buf, offset)
    offset += 4 * ndim
    count = int(np.prod(dims, dtype=np.int64)) if ndim else 1
    if offset + 8 * count > len(buf):
        raise DataFormatError(f"{path}: truncated checkpoint (tensor payload)")
    arr = np.frombuffer(buf, dtype="<f8", count=count, offset=offset).reshape(dims)
    return arr.astype(np.float64), offset + 8 * count


def save_checkpoint(
    path, params: ModelParams, config: ModelConfig, stats: StandardizationStats
) -> None:
    """Write an ECN1 checkpoint: header, config, the standardization stats the
    model was trained with, then every parameter tensor in declaration order
    (dims as u32 LE, values as f64 LE)."""
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(
            _ECN_HEAD.pack(
                ECN1_MAGIC,
                ECN1_VERSION,
                config.in_channels,
                config.in_samples,
                config.num_classes,
                config.temporal_filters,
                config.temporal_kernel,
                config.spatial_filters,
                config.pool_size,
                config.pool_stride,
                config.dropout_p,
                config.bn_epsilon,
                config.bn_momentum,
            )
        )
        _write_tensor(fh, stats.mean)
        _write_tensor(fh, stats.std)
        for name in PARAM_FIELDS:
            _write_tensor(fh, getattr(params, name))


def load_checkpoint(path) -> tuple[ModelParams, ModelConfig, StandardizationStats]:
    """Read an ECN1 checkpoint, validating magic, version and tensor shapes."""
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < _ECN_HEAD.size:
        raise DataFormatError(f"{path}: file shorter than the ECN1 header")
    unpacked = _ECN_HEAD.unpack_from(raw, 0)
    magic, version = unpacked[0], unpacked[1]
    if magic != ECN1_MAGIC:
        raise DataFormatError(f"{path}: bad magic {magic!r}, expected {ECN1_MAGIC!r}")
    if version != ECN1_VERSION:
        raise DataFormatError(f"{path}: unsupported ECN1 version {version}")
    config = ModelConfig(
        in_channels=unpacked[2],
        in_samples=unpacked[3],
        num_classes=unpacked[4],
        temporal_filters=unpacked[5],
        temporal_kernel=unpacked[6],
        spatial_filters=unpacked[7],
        pool_size=unpacked[8],
        pool_stride=unpacked[9],
        dropout_p=unpacked[10],
        bn_epsilon=unpacked[11],
        bn_momentum=unpacked[12],
    )
    buf = memoryview(raw)
    offset = _ECN_HEAD.size
    mean, offset = _read_tensor(buf, offset, path)
    std, offset = _read_tensor(buf, offset, path)
    stats = StandardizationStats(mean=mean, std=std)
    tensors = {}
    for name in PARAM_FIELDS:
        tensors[name], offset = _read_tensor(buf, offset, path)
    if offset != len(raw):
        raise DataFormatError(f"{path}: {len(raw) - offset} trailing bytes")
    params = ModelParams(**tensors)
    expected = {
        "w_temporal": (config.temporal_filters, config.temporal_kernel),
        "w_spatial": (
            config.spatial_filters,
            config.temporal_filters,
            config.in_channels,
        ),
        "w_classifier": (
            config.num_classes,
            config.spatial_filters,
            config.pooled_len,
        ),
    }
    for name, shape in expected.items():
        if tensors[name].shape != shape:
            raise DataFormatError(
                f"{path}: tensor {name} has shape {tensors[name].shape}, "
                f"config implies {shape}"
            )
    if stats.mean.shape != (config.in_channels,):
        raise DataFormatError(
            f"{path}: standardization stats cover {stats.mean.shape[0]} channels, "
            f"config has {config.in_channels}"
        )
    return params, config, stats
