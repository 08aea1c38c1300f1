"""agdndetect 命令行入口。

子命令：

- ``envelope``：给定噪声区间与输入符号，在网格上输出输出值的 CDF 与尾概率包络；
- ``curves``：误码概率包络的信噪比扫描，可附带蒙特卡洛经验列；
- ``simulate``：最优检测器与最小距离检测器的配对仿真比较；
- ``estimate``：由 (x, y) 观测序列估计参数区间与检测性能；
- ``fading``：瑞利衰落信道的平均误码概率包络扫描。

数据写入 stdout 或 --out 指定的文件，日志写入 stderr。estimate 默认输出 JSON，其余子命令默认输出 CSV。退出码：0 成功，2 配置或输入错误，
3 最优检测器不存在，4 参数估计失败。
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from contextlib import contextmanager, nullcontext
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
from pydantic import ValidationError

from ..channel import cdf_envelope_curve, tail_envelope_curve
from ..estimation import estimate_all, load_samples_csv
from ..estimation.solver import DEFAULT_MAX_ITER, DEFAULT_RESTARTS, DEFAULT_TOL
from ..experiments import ExperimentConfig, compare_detectors, fading_sweep, sweep_error_curves
from ..models.dto import ComparisonRow, EnvelopeRow, EstimationResult, SweepRow
from ..parser import parse_grid, parse_interval
from ..schemas.noise import Constellation, NoiseModel
from ..serializer import build_manifest, write_csv, write_json
from ..utils.errors import AgdnError, ConfigError, EstimationFailedError
from ..utils.logger import init_logger, logger

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Mapping, Sequence
    from typing import TextIO

__all__ = ["ESTIMATE_COLUMNS", "LOG_LEVELS", "build_parser", "main"]

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

ESTIMATE_COLUMNS = [
    "mean_lo",
    "mean_hi",
    "sigma_lo",
    "sigma_hi",
    "threshold",
    "pe_lower",
    "pe_upper",
    "residual_norm",
    "iterations",
]


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_experiment_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--snr", metavar="GRID", help="中点信噪比扫描网格 (dB)，覆盖配置文件中的 snr_db")
    sub.add_argument("--trials", type=_positive_int, help="每个扫描点的仿真符号数")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agdndetect",
        description="Detection envelopes, estimation and simulation for AGDN channels.",
    )
    parser.add_argument("--seed", type=_seed, help="64 位无符号种子，覆盖配置文件中的 seed")
    parser.add_argument("--out", type=Path, help="输出文件路径，默认写入 stdout")
    parser.add_argument("--format", choices=("csv", "json"), help="输出格式，estimate 默认 json，其余默认 csv")
    parser.add_argument("--threads", type=_positive_int, help="并行线程数，只影响运行速度")
    parser.add_argument("--config", type=Path, help="JSON 实验配置文件")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default="WARNING", help="日志级别")
    parser.add_argument("--log-file", type=Path, help="日志文件路径")

    subparsers = parser.add_subparsers(dest="command", required=True)

    envelope = subparsers.add_parser("envelope", help="channel output CDF and tail envelopes")
    envelope.add_argument("--mean", default="0", metavar="INTERVAL", help="均值区间，例如 [-0.1,0.1]")
    envelope.add_argument("--sigma", required=True, metavar="INTERVAL", help="标准差区间，例如 1:1.4")
    envelope.add_argument("--x", type=float, required=True, help="输入符号")
    envelope.add_argument("--y", required=True, metavar="GRID", help="输出值网格")

    curves = subparsers.add_parser("curves", help="error probability envelopes over an SNR sweep")
    _add_experiment_flags(curves)
    curves.add_argument("--theory-only", action="store_true", help="只输出理论列")

    simulate = subparsers.add_parser("simulate", help="paired optimal vs minimum distance detector simulation")
    _add_experiment_flags(simulate)

    fading = subparsers.add_parser("fading", help="Rayleigh fading error envelopes over an SNR sweep")
    _add_experiment_flags(fading)
    fading.add_argument("--theory-only", action="store_true", help="只输出理论列")

    estimate = subparsers.add_parser("estimate", help="estimate noise intervals from (x, y) samples")
    estimate.add_argument("samples", type=Path, help="两列 (x, y) CSV 文件")
    estimate.add_argument("--window", "-m", type=_positive_int, required=True, help="滑动窗口大小")
    estimate.add_argument("--xa", type=float, default=1.0, help="符号 x_A")
    estimate.add_argument("--xb", type=float, default=-1.0, help="符号 x_B")
    estimate.add_argument("--tol", type=float, default=DEFAULT_TOL, help="残差容差")
    estimate.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER, help="单次细化的最大迭代次数")
    estimate.add_argument("--restarts", type=_positive_int, default=DEFAULT_RESTARTS, help="局部细化的最多尝试次数")

    return parser


@contextmanager
def _output(path: Path | None) -> Iterator[TextIO]:
    if path is None:
        with nullcontext(sys.stdout) as stream:
            yield stream
        return
    try:
        with path.open("w", encoding="utf-8", newline="") as stream:
            yield stream
    except OSError as e:
        raise ConfigError(f"cannot write output file {path}: {e}") from e


def _emit(
    args: argparse.Namespace,
    command: str,
    seed: int | None,
    config: Any,
    rows: Sequence[Any],
    columns: Sequence[str],
) -> None:
    manifest = build_manifest(command, seed, config)
    with _output(args.out) as stream:
        if args.format == "json":
            write_json(list(rows), manifest, stream)
        else:
            write_csv(rows, columns, manifest, stream)


def load_experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    读取配置文件并应用命令行覆盖项。

    Raises:
        ConfigError: 配置文件不可读或覆盖项无效。
        pydantic.ValidationError: 配置不满足约束。
    """
    if args.config is None:
        cfg = ExperimentConfig()
    else:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {args.config}: {e}") from e
        cfg = ExperimentConfig.model_validate_json(text)

    updates: dict[str, Any] = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.threads is not None:
        updates["threads"] = args.threads
    if getattr(args, "snr", None) is not None:
        updates["snr_db"] = parse_grid(args.snr)
    if getattr(args, "trials", None) is not None:
        updates["trials"] = args.trials
    if getattr(args, "theory_only", False):
        updates["empirical"] = False
    if not updates:
        return cfg
    logger.debug("Config overrides from flags: {}", sorted(updates))
    return ExperimentConfig.model_validate(cfg.model_copy(update=updates).model_dump())


def cmd_envelope(args: argparse.Namespace) -> int:
    mu_lo, mu_hi = parse_interval(args.mean)
    s_lo, s_hi = parse_interval(args.sigma)
    noise = NoiseModel.build(mu_lo, mu_hi, s_lo, s_hi)
    ys = parse_grid(args.y)
    grid = np.asarray(ys, dtype=np.float64)
    cdf_lower, cdf_upper = cdf_envelope_curve(noise, args.x, grid)
    tail_lower, tail_upper = tail_envelope_curve(noise, args.x, grid)
    rows = [
        EnvelopeRow(
            y=y,
            cdf_lower=float(cdf_lower[i]),
            cdf_upper=float(cdf_upper[i]),
            tail_lower=float(tail_lower[i]),
            tail_upper=float(tail_upper[i]),
        )
        for i, y in enumerate(ys)
    ]
    config = {"noise": noise, "x": args.x, "y": ys}
    _emit(args, "envelope", None, config, rows, EnvelopeRow.columns())
    return 0


def cmd_curves(args: argparse.Namespace) -> int:
    cfg = load_experiment_config(args)
    rows = sweep_error_curves(cfg)
    _emit(args, "curves", cfg.seed, cfg, rows, SweepRow.columns())
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_experiment_config(args)
    rows = compare_detectors(cfg)
    _emit(args, "simulate", cfg.seed, cfg, rows, ComparisonRow.columns())
    return 0


def cmd_fading(args: argparse.Namespace) -> int:
    cfg = load_experiment_config(args)
    rows = fading_sweep(cfg)
    _emit(args, "fading", cfg.seed, cfg, rows, SweepRow.columns())
    return 0


def _estimation_row(result: EstimationResult) -> list[Any]:
    return [
        result.mean_hat.lo,
        result.mean_hat.hi,
        result.sigma_hat.sigma_lo,
        result.sigma_hat.sigma_hi,
        result.threshold_hat,
        result.error_envelope_hat.pe_lower,
        result.error_envelope_hat.pe_upper,
        result.residual_norm,
        result.solver_iterations,
    ]


def cmd_estimate(args: argparse.Namespace) -> int:
    samples = load_samples_csv(args.samples)
    c = Constellation(x_a=args.xa, x_b=args.xb)
    config = {
        "samples_sha256": hashlib.sha256(args.samples.read_bytes()).hexdigest(),
        "window": args.window,
        "constellation": c,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "restarts": args.restarts,
    }
    try:
        result = estimate_all(samples, args.window, c, tol=args.tol, max_iter=args.max_iter, restarts=args.restarts)
    except EstimationFailedError as e:
        payload = {
            "error": e.msg,
            "best": None if e.best is None else e.best.model_dump(mode="json"),
            "residual_norm": e.residual_norm,
            "iterations": e.iterations,
        }
        with _output(args.out) as stream:
            write_json([payload], build_manifest("estimate", None, config), stream)
        raise

    if args.format == "json":
        _emit(args, "estimate", None, config, [result], ESTIMATE_COLUMNS)
    else:
        _emit(args, "estimate", None, config, [_estimation_row(result)], ESTIMATE_COLUMNS)
    return 0


COMMANDS: Mapping[str, Callable[[argparse.Namespace], int]] = {
    "envelope": cmd_envelope,
    "curves": cmd_curves,
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "fading": cmd_fading,
}


def _describe_validation(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        loc = ".".join(str(p) for p in err["loc"])
        parts.append(f"{loc}: {err['msg']}" if loc else err["msg"])
    return "invalid configuration: " + "; ".join(parts)


def main(argv: Sequence[str] | None = None) -> int:
    """
    命令行主函数。

    Args:
        argv: 参数列表，为 None 时读取 sys.argv。

    Returns:
        int: 进程退出码。
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "estimate" else "csv"
    init_logger(level=args.log_level, log_file=args.log_file)

    try:
        return COMMANDS[args.command](args)
    except AgdnError as e:
        print(f"error: {e.msg}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {_describe_validation(e)}", file=sys.stderr)
        return 2
