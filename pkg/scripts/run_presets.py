import io
import os
import sys
import time
from collections.abc import Callable
from pathlib import Path

from agdndetect.experiments import (
    ExperimentConfig,
    awgn_reference_sweeps,
    compare_detectors,
    detector_comparison_sweeps,
    equal_snr_sweeps,
    fading_sweep,
    sweep_error_curves,
)
from agdndetect.models.dto import ComparisonRow, SweepRow
from agdndetect.parser import parse_grid
from agdndetect.schemas.noise import NoiseModel, SigmaBox
from agdndetect.serializer import build_manifest, write_csv
from agdndetect.utils.logger import init_logger

OUTPUT_DIR = Path.cwd() / "dist" / "presets"

CURVE_GRID = parse_grid("0:0.25:20")
SIMULATION_GRID = parse_grid("0:2:10")
FADING_GRID = parse_grid("0:2:30")

register_functions: list[Callable[[], None]] = []


def register(filename: str) -> Callable[[Callable[[], str]], Callable[[], str]]:
    def wrapper(fn: Callable[[], str]) -> Callable[[], str]:
        def _() -> None:
            is_gh_actions = os.getenv("GITHUB_ACTIONS") == "true"
            task_name = f"Sweep {filename}"

            if is_gh_actions:
                print(f"::group::{task_name}")
            else:
                print(f"--- Starting: {task_name} ---")

            start_time = time.time()
            try:
                text = fn()
                OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
                output_path = OUTPUT_DIR / filename
                output_path.write_text(text, encoding="utf-8", newline="")

                elapsed = time.time() - start_time
                print(f"Successfully wrote {output_path}")
                print(f"Rows: {text.count(chr(10)) - 2}")
                print(f"Time elapsed: {elapsed:.2f}s")

            except Exception as e:
                if is_gh_actions:
                    print(f"::error file={__file__},title=Sweep Failed::{e!s}")
                print(f"Error writing {filename}: {e}", file=sys.stderr)
                raise
            finally:
                if is_gh_actions:
                    print("::endgroup::")
                else:
                    print(f"--- Finished: {task_name} ---\n")

        register_functions.append(_)
        return fn

    return wrapper


def _sweep_csv(command: str, cfg: ExperimentConfig, rows: list[SweepRow] | list[ComparisonRow]) -> str:
    columns = ComparisonRow.columns() if command == "simulate" else SweepRow.columns()
    stream = io.StringIO()
    write_csv(rows, columns, build_manifest(command, cfg.seed, cfg), stream)
    return stream.getvalue()


def _register_equal_snr(k: int, cfg: ExperimentConfig) -> None:
    @register(f"equal_snr_k{k}.csv")
    def _() -> str:
        return _sweep_csv("curves", cfg, sweep_error_curves(cfg))


for _k, _cfg in enumerate(equal_snr_sweeps(CURVE_GRID), start=1):
    _register_equal_snr(_k, _cfg)


@register("awgn_reference_sigma_only.csv")
def awgn_reference_sigma_only() -> str:
    cfg = awgn_reference_sweeps(CURVE_GRID)[0]
    return _sweep_csv("curves", cfg, sweep_error_curves(cfg))


@register("awgn_reference_agdn.csv")
def awgn_reference_agdn() -> str:
    cfg = awgn_reference_sweeps(CURVE_GRID)[1]
    return _sweep_csv("curves", cfg, sweep_error_curves(cfg))


@register("comparison_narrow.csv")
def comparison_narrow() -> str:
    cfg = detector_comparison_sweeps(SIMULATION_GRID)[0]
    return _sweep_csv("simulate", cfg, compare_detectors(cfg))


@register("comparison_wide.csv")
def comparison_wide() -> str:
    cfg = detector_comparison_sweeps(SIMULATION_GRID)[1]
    return _sweep_csv("simulate", cfg, compare_detectors(cfg))


@register("fading.csv")
def fading() -> str:
    cfg = ExperimentConfig(
        noise=NoiseModel(sigma=SigmaBox(sigma_lo=1.0, sigma_hi=1.2)), snr_db=FADING_GRID, trials=100_000
    )
    return _sweep_csv("fading", cfg, fading_sweep(cfg))


if __name__ == "__main__":
    init_logger(level="INFO")
    for fn in register_functions:
        fn()
