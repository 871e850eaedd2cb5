"""Command-line front end: dataset synthesis, augmentation, training, the
sigma-sweep protocol and checkpoint evaluation.

Subcommands: synth, augment, train, sweep, eval.  Options can come from a
flat key=value config file (--config); command-line flags win over file
values.  Exit codes: 0 success, 2 configuration error, 1 runtime error.
All emitted artifacts (ETD1/ECN1 binaries, JSON, CSV, SVG) are byte-identical
across reruns with the same config and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import benchmark
from .augment import PerturbationConfig, augment_dataset
from .data import (
    Dataset,
    apply_standardization,
    bandpass_oracle_accuracy,
    generate_synthetic,
    load_dataset,
    save_dataset,
    split,
    standardize,
)
from .errors import ConfigError, EegAugError, InputError
from .metrics import MetricsReport, evaluate
from .net import (
    ModelConfig,
    TrainConfig,
    load_checkpoint,
    predict,
    save_checkpoint,
    train,
)
from .stft import WindowSpec
from .svgplot import LineChart

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat experiment settings; defaults are the frozen desk benchmark."""

    out_dir: str = "out"
    train_path: str | None = None
    test_path: str | None = None
    checkpoint: str | None = None
    compare: str | None = None
    data_path: str | None = None
    # synthetic generator
    classes: int = benchmark.BENCHMARK["classes"]
    trials_per_class: int = benchmark.BENCHMARK["trials_per_class"]
    test_trials_per_class: int = benchmark.BENCHMARK["test_trials_per_class"]
    channels: int = benchmark.BENCHMARK["channels"]
    samples: int = benchmark.BENCHMARK["samples"]
    sample_rate: float = benchmark.BENCHMARK["sample_rate"]
    snr: float = benchmark.BENCHMARK["snr"]
    # analysis window
    window_length: int = benchmark.BENCHMARK["window_length"]
    hop: int = benchmark.BENCHMARK["hop"]
    # perturbation; sigma=None means "not requested" (train runs a baseline,
    # sweep falls back to the reference grid)
    mu: float = benchmark.BENCHMARK["mu"]
    sigma: tuple[float, ...] | None = None
    copies: int = benchmark.BENCHMARK["copies"]
    # training protocol
    train_fraction: float = benchmark.BENCHMARK["train_fraction"]
    iterations: int = 2000
    batch_size: int = benchmark.BENCHMARK["batch_size"]
    learning_rate: float = benchmark.BENCHMARK["learning_rate"]
    temporal_filters: int = 25
    spatial_filters: int = 25
    dropout: float = 0.5
    eval_every: int = 50
    # randomness
    seed: int = 0
    seeds: tuple[int, ...] = benchmark.BENCHMARK["seeds"]

    def window(self) -> WindowSpec:
        return WindowSpec(length=self.window_length, hop=self.hop)


_INT_KEYS = {
    "classes",
    "trials_per_class",
    "test_trials_per_class",
    "channels",
    "samples",
    "window_length",
    "hop",
    "copies",
    "iterations",
    "batch_size",
    "temporal_filters",
    "spatial_filters",
    "eval_every",
    "seed",
}
_FLOAT_KEYS = {
    "sample_rate",
    "snr",
    "mu",
    "train_fraction",
    "learning_rate",
    "dropout",
}
_STR_KEYS = {"out_dir", "train_path", "test_path", "checkpoint", "compare", "data_path"}
_LIST_FLOAT_KEYS = {"sigma"}
_LIST_INT_KEYS = {"seeds"}


def parse_config_file(path) -> dict:
    """Read a flat key=value file ('#' comments, blank lines allowed)."""
    values = {}
    known = {f.name for f in fields(ExperimentConfig)}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _LIST_FLOAT_KEYS:
                values[key] = tuple(float(v) for v in value.split(",") if v.strip())
            elif key in _LIST_INT_KEYS:
                values[key] = tuple(int(v) for v in value.split(",") if v.strip())
            else:
                values[key] = value
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge defaults < config file < command-line flags."""
    cfg = ExperimentConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **parse_config_file(args.config))
    overrides = {}
    for f in fields(ExperimentConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            overrides[f.name] = value
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg


def _json_dump(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(value, flag: str):
    if value is None:
        raise ConfigError(f"missing required option {flag}")
    return value


# --- synth -------------------------------------------------------------------


def cmd_synth(cfg: ExperimentConfig) -> int:
    out = _out_dir(cfg)
    common = dict(
        class_count=cfg.classes,
        channels=cfg.channels,
        samples=cfg.samples,
        sample_rate=cfg.sample_rate,
        snr=cfg.snr,
        seed=cfg.seed,
    )
    train_set = generate_synthetic(
        trials_per_class=cfg.trials_per_class, stream=0, **common
    )
    test_set = generate_synthetic(
        trials_per_class=cfg.test_trials_per_class, stream=1, **common
    )
    train_path = out / "train.etd1"
    test_path = out / "test.etd1"
    save_dataset(train_set, train_path)
    save_dataset(test_set, test_path)
    oracle_acc = bandpass_oracle_accuracy(test_set)
    print(f"wrote {train_path} ({len(train_set)} trials) and {test_path} "
          f"({len(test_set)} trials)")
    print(f"shape: {cfg.channels} channels x {cfg.samples} samples at "
          f"{cfg.sample_rate:g} Hz, {cfg.classes} classes, snr {cfg.snr:g}")
    print(f"band-energy oracle accuracy on the test set: {oracle_acc:.3f} "
          "(difficulty gauge)")
    return EXIT_OK


# --- augment -----------------------------------------------------------------


def _single_sigma(cfg: ExperimentConfig) -> float:
    if cfg.sigma is None or len(cfg.sigma) != 1:
        raise ConfigError(
            "this command needs exactly one --sigma value, got "
            f"{list(cfg.sigma) if cfg.sigma else 'none'}"
        )
    return cfg.sigma[0]


def cmd_augment(cfg: ExperimentConfig) -> int:
    sigma = _single_sigma(cfg)
    pert = PerturbationConfig(
        mean=cfg.mu,
        std_dev=sigma,
        copies_per_trial=cfg.copies,
        seed=cfg.seed,
        window=cfg.window(),
    )
    data = load_dataset(_require(cfg.train_path, "--train"))
    out = _out_dir(cfg)
    augmented = augment_dataset(data, pert)
    path = out / "augmented.etd1"
    save_dataset(augmented, path)
    print(f"wrote {path}: {len(data)} original + "
          f"{len(augmented) - len(data)} perturbed = {len(augmented)} trials "
          f"(sigma={sigma:g}, mu={cfg.mu:g}, copies={cfg.copies})")
    return EXIT_OK


# --- train -------------------------------------------------------------------


def _model_config(cfg: ExperimentConfig, data: Dataset) -> ModelConfig:
    return ModelConfig(
        in_channels=data.channel_count,
        in_samples=data.samples_per_trial,
        num_classes=data.num_classes,
        temporal_filters=cfg.temporal_filters,
        spatial_filters=cfg.spatial_filters,
        dropout_p=cfg.dropout,
    )


def _train_once(cfg: ExperimentConfig, train_file: Dataset, test_file: Dataset,
                sigma: float | None, seed: int):
    """One full protocol run; returns (result, artifacts) for reporting.

    standardize (stats from the training file) -> 80/20 split -> optional
    augmentation of the training portion only -> train -> evaluate on the
    held-out test file.
    """
    if (
        train_file.channel_count != test_file.channel_count
        or train_file.samples_per_trial != test_file.samples_per_trial
        or train_file.num_classes != test_file.num_classes
    ):
        raise InputError("train and test datasets are dimensionally incompatible")
    train_std, stats = standardize(train_file)
    test_std = apply_standardization(test_file, stats)
    tr, val = split(train_std, cfg.train_fraction, seed=seed)
    augmented_trials = 0
    if sigma is not None and cfg.copies > 0:
        pert = PerturbationConfig(
            mean=cfg.mu,
            std_dev=sigma,
            copies_per_trial=cfg.copies,
            seed=seed,
            window=cfg.window(),
        )
        before = len(tr)
        tr = augment_dataset(tr, pert)
        augmented_trials = len(tr) - before
    model_cfg = _model_config(cfg, train_std)
    train_cfg = TrainConfig(
        batch_size=cfg.batch_size,
        iterations=cfg.iterations,
        learning_rate=cfg.learning_rate,
        seed=seed,
        eval_every=cfg.eval_every,
    )
    result = train(tr, val, model_cfg, train_cfg)

    x_test, y_test = test_std.stacked()
    probs = predict(result.best_params, model_cfg, x_test)[1]
    report = evaluate(probs, y_test, test_std.num_classes)

    x_full, y_full = train_std.stacked()
    train_file_acc = float(
        np.mean(predict(result.best_params, model_cfg, x_full)[0] == y_full)
    )
    return {
        "result": result,
        "report": report,
        "stats": stats,
        "model_cfg": model_cfg,
        "train_file_accuracy": train_file_acc,
        "augmented_trials": augmented_trials,
        "train_trials": len(tr),
        "val_trials": len(val),
    }


def _run_doc(cfg: ExperimentConfig, run: dict, sigma: float | None, seed: int) -> dict:
    result = run["result"]
    return {
        "seed": seed,
        "sigma": sigma,
        "mu": cfg.mu,
        "copies": cfg.copies if sigma is not None else 0,
        "window_length": cfg.window_length,
        "hop": cfg.hop,
        "iterations": cfg.iterations,
        "batch_size": cfg.batch_size,
        "learning_rate": cfg.learning_rate,
        "train_fraction": cfg.train_fraction,
        "train_trials": run["train_trials"],
        "augmented_trials": run["augmented_trials"],
        "val_trials": run["val_trials"],
        "best_iteration": result.best_iteration,
        "best_val_accuracy": result.best_val_accuracy,
        "train_file_accuracy": run["train_file_accuracy"],
        "history": [
            [r.iteration, r.train_loss, r.train_accuracy, r.val_loss, r.val_accuracy]
            for r in result.history
        ],
    }


def cmd_train(cfg: ExperimentConfig) -> int:
    sigma = None
    if cfg.sigma is not None:
        sigma = _single_sigma(cfg)
    train_file = load_dataset(_require(cfg.train_path, "--train"))
    test_file = load_dataset(_require(cfg.test_path, "--test"))
    out = _out_dir(cfg)
    run = _train_once(cfg, train_file, test_file, sigma, cfg.seed)

    report: MetricsReport = run["report"]
    _json_dump(
        out / "train_report.json",
        {"metrics": report.to_json_dict(), "run": _run_doc(cfg, run, sigma, cfg.seed)},
    )
    (out / "train_report.csv").write_text(report.to_csv())
    save_checkpoint(
        out / "checkpoint.ecn1", run["result"].best_params, run["model_cfg"],
        run["stats"],
    )
    print(f"test accuracy {report.accuracy:.4f} (macro F1 "
          f"{report.prf.macro_f1:.4f}); artifacts in {out}")
    return EXIT_OK


# --- sweep -------------------------------------------------------------------


def _sweep_rows_csv(rows: list[dict]) -> str:
    lines = ["sigma,mean_accuracy,sd_accuracy,n_seeds,per_seed"]
    for row in rows:
        accs = ";".join(f"{a:.6f}" for a in row["accuracies"])
        label = "baseline" if row["sigma"] is None else f"{row['sigma']:g}"
        lines.append(
            f"{label},{row['mean']:.6f},{row['sd']:.6f},{len(row['accuracies'])},{accs}"
        )
    return "\n".join(lines) + "\n"


def _sweep_header(cfg: ExperimentConfig, grid, seeds, bci_note: str | None) -> str:
    lines = [
        "# sigma sweep: test accuracy of the shallow classifier per noise "
        "std, mean over seeds; dashed rule in sweep.svg = no-augmentation "
        "baseline",
        f"# seeds={list(seeds)} copies={cfg.copies} mu={cfg.mu:g} "
        f"window={cfg.window_length}/{cfg.hop} batch={cfg.batch_size} "
        f"lr={cfg.learning_rate:g}",
        f"# iterations={cfg.iterations} (reference protocol: 2000; reduced "
        "runs are epoch-proportional for the smaller dataset)"
        if cfg.iterations != 2000
        else f"# iterations={cfg.iterations}",
        "# reference points for the 22-channel 4-class motor-imagery "
        f"protocol (real recordings required, not asserted here): baseline "
        f"{benchmark.BCI_REFERENCE_BASELINE:.2f}, best "
        f"{benchmark.BCI_REFERENCE_BEST:.3f} at "
        f"sigma={benchmark.BCI_REFERENCE_BEST_SIGMA:g}",
    ]
    if bci_note:
        lines.append(f"# bci_sanity: {bci_note}")
    return "\n".join(lines) + "\n"


def cmd_sweep(cfg: ExperimentConfig) -> int:
    grid = cfg.sigma if cfg.sigma is not None else benchmark.SIGMA_GRID
    if not grid:
        raise ConfigError("sweep needs a nonempty sigma grid")
    if not cfg.seeds:
        raise ConfigError("sweep needs a nonempty seed list")
    for s in grid:
        if s < 0:
            raise ConfigError(f"sigma must be >= 0, got {s}")
    train_file = load_dataset(_require(cfg.train_path, "--train"))
    test_file = load_dataset(_require(cfg.test_path, "--test"))
    out = _out_dir(cfg)

    cells: list[tuple[float | None, int]] = [(None, s) for s in cfg.seeds]
    cells += [(sig, s) for sig in grid for s in cfg.seeds]
    acc: dict[float | None, list[float]] = {sig: [] for sig in [None, *grid]}

    completed = 0
    try:
        for sigma, seed in cells:
            run = _train_once(cfg, train_file, test_file, sigma, seed)
            acc[sigma].append(run["report"].accuracy)
            completed += 1
            label = "baseline" if sigma is None else f"sigma={sigma:g}"
            print(f"[{completed}/{len(cells)}] {label} seed={seed}: "
                  f"test accuracy {run['report'].accuracy:.4f}")
    except Exception:
        rows = _collect_rows(acc, grid)
        partial = out / "sweep_partial.csv"
        partial.write_text(
            _sweep_header(cfg, grid, cfg.seeds, None) + _sweep_rows_csv(rows)
        )
        print(f"sweep aborted; partial results in {partial}", file=sys.stderr)
        raise

    rows = _collect_rows(acc, grid)
    baseline_mean = rows[0]["mean"]
    bci_note = None
    if (
        train_file.channel_count == benchmark.BCI_CHANNELS
        and train_file.num_classes == benchmark.BCI_CLASSES
    ):
        lo = benchmark.BCI_REFERENCE_BASELINE - benchmark.BCI_SANITY_TOLERANCE
        hi = benchmark.BCI_REFERENCE_BASELINE + benchmark.BCI_SANITY_TOLERANCE
        verdict = "within" if lo <= baseline_mean <= hi else "outside"
        bci_note = (
            f"baseline mean accuracy {baseline_mean:.4f} is {verdict} "
            f"+/-{benchmark.BCI_SANITY_TOLERANCE:g} of the "
            f"{benchmark.BCI_REFERENCE_BASELINE:.2f} reference"
        )

    (out / "sweep.csv").write_text(
        _sweep_header(cfg, grid, cfg.seeds, bci_note) + _sweep_rows_csv(rows)
    )
    _json_dump(
        out / "sweep.json",
        {
            "baseline": rows[0],
            "sigmas": rows[1:],
            "seeds": list(cfg.seeds),
            "iterations": cfg.iterations,
            "copies": cfg.copies,
            "mu": cfg.mu,
            "bci_sanity": bci_note,
        },
    )

    chart = LineChart(
        title="Accuracy vs. amplitude-noise std",
        x_label="noise standard deviation (log scale)",
        y_label="test accuracy",
        log_x=True,
    )
    chart.add(
        "with augmentation (mean)",
        [row["sigma"] for row in rows[1:]],
        [row["mean"] for row in rows[1:]],
    )
    chart.add(
        "baseline (no augmentation)",
        [min(grid), max(grid)],
        [baseline_mean, baseline_mean],
        dashed=True,
    )
    chart.write(out / "sweep.svg")

    best = max(rows[1:], key=lambda r: r["mean"])
    print(f"baseline {baseline_mean:.4f}; best augmented {best['mean']:.4f} "
          f"at sigma={best['sigma']:g}; table in {out / 'sweep.csv'}")
    if bci_note:
        print(f"bci_sanity: {bci_note}")
    return EXIT_OK


def _collect_rows(acc: dict, grid) -> list[dict]:
    rows = []
    for sigma in [None, *grid]:
        values = acc.get(sigma, [])
        if not values:
            continue
        rows.append(
            {
                "sigma": sigma,
                "accuracies": [float(a) for a in values],
                "mean": float(np.mean(values)),
                "sd": float(np.std(values)),
            }
        )
    return rows


# --- eval --------------------------------------------------------------------


def _evaluate_checkpoint(checkpoint_path, data: Dataset):
    params, model_cfg, stats = load_checkpoint(checkpoint_path)
    if model_cfg.in_channels != data.channel_count:
        raise InputError(
            f"checkpoint expects {model_cfg.in_channels} channels, dataset has "
            f"{data.channel_count}"
        )
    if model_cfg.in_samples != data.samples_per_trial:
        raise InputError(
            f"checkpoint expects {model_cfg.in_samples} samples, dataset has "
            f"{data.samples_per_trial}"
        )
    if model_cfg.num_classes != data.num_classes:
        raise InputError(
            f"checkpoint has {model_cfg.num_classes} classes, dataset has "
            f"{data.num_classes}"
        )
    data_std = apply_standardization(data, stats)
    x, y = data_std.stacked()
    probs = predict(params, model_cfg, x)[1]
    return evaluate(probs, y, data.num_classes)


def _comparison_csv(primary: MetricsReport, baseline: MetricsReport) -> str:
    """Two-row comparison table (percent precision/recall, plain F1)."""
    lines = ["method,precision,recall,f1,accuracy"]
    for name, rep in (("without augmentation", baseline), ("with augmentation", primary)):
        lines.append(
            f"{name},{rep.prf.macro_precision * 100:.1f}%,"
            f"{rep.prf.macro_recall * 100:.1f}%,{rep.prf.macro_f1:.3f},"
            f"{rep.accuracy * 100:.1f}%"
        )
    return "\n".join(lines) + "\n"


def cmd_eval(cfg: ExperimentConfig) -> int:
    data = load_dataset(_require(cfg.data_path, "--data"))
    out = _out_dir(cfg)
    report = _evaluate_checkpoint(_require(cfg.checkpoint, "--checkpoint"), data)
    _json_dump(out / "eval_report.json", report.to_json_dict())
    (out / "eval_report.csv").write_text(report.to_csv())
    print(f"accuracy {report.accuracy:.4f}, macro F1 {report.prf.macro_f1:.4f}; "
          f"report in {out}")

    baseline_report = None
    if cfg.compare:
        baseline_report = _evaluate_checkpoint(cfg.compare, data)
        (out / "comparison.csv").write_text(
            _comparison_csv(report, baseline_report)
        )
        print(f"comparison table in {out / 'comparison.csv'}")

    if data.num_classes == 2:
        chart = LineChart(
            title="ROC (positive class 1)",
            x_label="false positive rate",
            y_label="true positive rate",
            y_min=0.0,
            y_max=1.0,
        )
        curve = report.roc.curves[1]
        if curve.defined:
            chart.add(
                f"model (AUC {curve.auc:.3f})",
                curve.points[:, 0],
                curve.points[:, 1],
            )
        if baseline_report is not None and baseline_report.roc.curves[1].defined:
            b = baseline_report.roc.curves[1]
            chart.add(
                f"baseline (AUC {b.auc:.3f})", b.points[:, 0], b.points[:, 1],
                dashed=True,
            )
        chart.add("chance", [0.0, 1.0], [0.0, 1.0], dashed=True, color="#999999")
        chart.write(out / "roc.svg")
        print(f"ROC curve in {out / 'roc.svg'}")
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", dest="out_dir", help="output directory")
    p.add_argument("--seed", type=int, help="base random seed")
    p.add_argument(
        "--sigma",
        type=_sigma_list,
        help="comma-separated noise std values (single value for augment/train)",
    )
    p.add_argument("--mu", type=float, help="noise mean")
    p.add_argument("--copies", type=int, help="perturbed copies per trial")
    p.add_argument("--window", dest="window_length", type=int, help="window length")
    p.add_argument("--hop", type=int, help="window hop")
    p.add_argument("--iterations", type=int, help="training iterations")
    p.add_argument("--batch", dest="batch_size", type=int, help="batch size")
    p.add_argument("--lr", dest="learning_rate", type=float, help="learning rate")


def _sigma_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad sigma list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty sigma list")
    return values


def _seed_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty seed list")
    return values


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eegaug",
        description="Amplitude-perturbation augmentation experiments for "
        "multichannel time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate synthetic train/test ETD1 files")
    _add_common(p)
    p.add_argument("--classes", type=int, help="number of classes")
    p.add_argument("--trials-per-class", dest="trials_per_class", type=int)
    p.add_argument("--test-trials-per-class", dest="test_trials_per_class", type=int)
    p.add_argument("--channels", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--rate", dest="sample_rate", type=float)
    p.add_argument("--snr", type=float)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("augment", help="write an augmented copy of a dataset")
    _add_common(p)
    p.add_argument("--train", dest="train_path", help="input ETD1 dataset")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("train", help="train once and evaluate on a test set")
    _add_common(p)
    p.add_argument("--train", dest="train_path", help="training ETD1 dataset")
    p.add_argument("--test", dest="test_path", help="test ETD1 dataset")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sweep", help="run the sigma sweep with baselines")
    _add_common(p)
    p.add_argument("--train", dest="train_path", help="training ETD1 dataset")
    p.add_argument("--test", dest="test_path", help="test ETD1 dataset")
    p.add_argument("--seeds", type=_seed_list, help="comma-separated seed list")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval", help="evaluate a checkpoint on a dataset")
    _add_common(p)
    p.add_argument("--checkpoint", help="ECN1 checkpoint")
    p.add_argument("--data", dest="data_path", help="ETD1 dataset to evaluate")
    p.add_argument("--compare", help="second checkpoint for a comparison table")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return args.func(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EegAugError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
