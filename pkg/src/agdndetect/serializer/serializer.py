from __future__ import annotations

import csv
import hashlib
import json
from enum import Enum
from importlib import metadata
from typing import TYPE_CHECKING, Any, Literal, overload

from pydantic import BaseModel

from ..experiments.config import ExperimentConfig
from ..schemas.noise import NoiseModel
from ..schemas.scenarios import POLICY_ADAPTER, ScenarioPolicy
from ..utils.errors import ConfigError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence
    from typing import TextIO

__all__ = [
    "TOOL_NAME",
    "build_manifest",
    "config_hash",
    "deserialize",
    "format_float",
    "serialize",
    "tool_version",
    "write_csv",
    "write_json",
]

TOOL_NAME = "agdndetect"
MANIFEST_PREFIX = "# manifest: "


def serialize(obj: Any) -> Any:
    """将对象序列化为 JSON 可用的字典或列表。"""
    if hasattr(obj, "model_dump"):
        return obj.model_dump(mode="json")
    if isinstance(obj, list | tuple):
        return [serialize(item) for item in obj]
    return obj


@overload
def deserialize(item_type: Literal["experiment"], data: Mapping[str, Any]) -> ExperimentConfig: ...


@overload
def deserialize(item_type: Literal["scenario"], data: Mapping[str, Any]) -> ScenarioPolicy: ...


@overload
def deserialize(item_type: Literal["noise"], data: Mapping[str, Any]) -> NoiseModel: ...


def deserialize(
    item_type: Literal["experiment", "scenario", "noise"], data: Mapping[str, Any]
) -> ExperimentConfig | ScenarioPolicy | NoiseModel:
    """
    根据类型进行通用反序列化。

    Raises:
        ConfigError: 不支持的类型。
        pydantic.ValidationError: 数据不满足值类型约束。
    """
    if item_type == "experiment":
        return ExperimentConfig.model_validate(data)
    if item_type == "scenario":
        return POLICY_ADAPTER.validate_python(data)
    if item_type == "noise":
        return NoiseModel.model_validate(data)
    raise ConfigError(f"Unsupported item_type: {item_type}")


def format_float(v: float | None) -> str:
    """以 17 位有效数字输出浮点数，与区域设置无关；None 输出为空串。"""
    if v is None:
        return ""
    return format(float(v), ".17g")


def _format_cell(v: Any) -> str:
    match v:
        case None:
            return ""
        case bool():
            return "true" if v else "false"
        case int():
            return str(v)
        case float():
            return format_float(v)
        case Enum():
            return str(v.value)
        case _:
            return str(v)


def tool_version() -> str:
    try:
        return metadata.version(TOOL_NAME)
    except metadata.PackageNotFoundError:
        return "0.0.0"


def _canonical(config: BaseModel | Mapping[str, Any] | None) -> str:
    if config is None:
        payload: Any = None
    elif isinstance(config, BaseModel):
        payload = config.model_dump(mode="json", exclude={"threads"})
    else:
        payload = {k: serialize(v) for k, v in config.items() if k != "threads"}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def config_hash(config: BaseModel | Mapping[str, Any] | None) -> str:
    """配置的规范 JSON（不含 threads）的 SHA-256 摘要。"""
    return hashlib.sha256(_canonical(config).encode("utf-8")).hexdigest()


def build_manifest(command: str, seed: int | None, config: BaseModel | Mapping[str, Any] | None) -> dict[str, Any]:
    """
    构造运行清单。

    Args:
        command: 子命令名称。
        seed: 运行种子，估计等无随机性的命令为 None。
        config: 运行配置。

    Returns:
        dict[str, Any]: 含 tool、version、command、seed、config_hash 的清单。
    """
    return {
        "tool": TOOL_NAME,
        "version": tool_version(),
        "command": command,
        "seed": seed,
        "config_hash": config_hash(config),
    }


def _cells(row: Any) -> Sequence[Any]:
    if hasattr(row, "as_row"):
        return row.as_row()  # type: ignore[no-any-return]
    return list(row)


def write_csv(rows: Iterable[Any], columns: Sequence[str], manifest: Mapping[str, Any], stream: TextIO) -> None:
    """
    输出 CSV：首行为清单注释，随后是表头与数据行。

    行可以是带 as_row 的 DTO，也可以是按列顺序排列的序列。
    """
    stream.write(MANIFEST_PREFIX + json.dumps(manifest, sort_keys=True, separators=(",", ":")) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = _cells(row)
        if len(cells) != len(columns):
            raise ConfigError(f"row has {len(cells)} cells, expected {len(columns)}")
        writer.writerow([_format_cell(v) for v in cells])


def write_json(rows: Any, manifest: Mapping[str, Any], stream: TextIO) -> None:
    """输出 {"manifest": ..., "rows": ...} 形式的 JSON 文档。"""
    json.dump({"manifest": dict(manifest), "rows": serialize(rows)}, stream, indent=2, sort_keys=False)
    stream.write("\n")
