"""命令行中扫描网格与区间表达式的解析。

支持的网格写法：

- ``start:step:stop``，包含终点，step > 0；
- ``linspace(a, b, k)``，关键词不区分大小写；
- ``[a, b, ...]`` 或 ``a, b, ...``。

区间写法为 ``[lo, hi]``、``lo:hi`` 或单个数（退化区间）。
"""

from __future__ import annotations

import math
from enum import StrEnum, unique
from functools import cache

import numpy as np
import pyparsing as pp

from ..utils.errors import ConfigError

__all__ = ["GridKind", "parse_grid", "parse_interval"]

# 浮点步进累计误差的容忍量，以步长为单位
_STEP_SLACK = 1e-9


@unique
class GridKind(StrEnum):
    RANGE = "RANGE"
    LINSPACE = "LINSPACE"
    LIST = "LIST"


def _number() -> pp.ParserElement:
    return pp.common.fnumber.copy().set_parse_action(lambda t: float(t[0]))


@cache
def _grid_grammar() -> pp.ParserElement:
    number = _number()
    integer = pp.common.integer.copy()
    lpar, rpar, lbrack, rbrack, comma, colon = map(pp.Suppress, "()[],:")

    range_expr = (number("start") + colon + number("step") + colon + number("stop")).set_parse_action(
        lambda t: t.__setitem__("kind", GridKind.RANGE)
    )
    linspace_expr = (
        pp.CaselessKeyword("linspace").suppress()
        + lpar
        + number("start")
        + comma
        + number("stop")
        + comma
        + integer("count")
        + rpar
    ).set_parse_action(lambda t: t.__setitem__("kind", GridKind.LINSPACE))
    values = pp.DelimitedList(number)("values")
    list_expr = ((lbrack + values + rbrack) | values).set_parse_action(lambda t: t.__setitem__("kind", GridKind.LIST))

    return (linspace_expr | range_expr | list_expr) + pp.StringEnd()


@cache
def _interval_grammar() -> pp.ParserElement:
    number = _number()
    lbrack, rbrack, comma, colon = map(pp.Suppress, "[],:")
    bracketed = lbrack + number("lo") + comma + number("hi") + rbrack
    colon_form = number("lo") + colon + number("hi")
    single = number("lo")
    return (bracketed | colon_form | single) + pp.StringEnd()


def _range_values(start: float, step: float, stop: float) -> list[float]:
    if not step > 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ConfigError(f"grid stop {stop} is below start {start}")
    count = math.floor((stop - start) / step + _STEP_SLACK) + 1
    return [start + i * step for i in range(count)]


def parse_grid(text: str) -> list[float]:
    """
    解析扫描网格表达式。

    Args:
        text: 网格表达式。

    Returns:
        list[float]: 网格点列表。

    Raises:
        ConfigError: 表达式无法解析（附带出错位置）或参数无效。
    """
    try:
        result = _grid_grammar().parse_string(text.strip(), parse_all=True)
    except pp.ParseException as e:
        raise ConfigError(f"invalid grid expression {text!r} at position {e.loc}: {e.msg}") from e

    match result["kind"]:
        case GridKind.RANGE:
            return _range_values(result["start"], result["step"], result["stop"])
        case GridKind.LINSPACE:
            count = int(result["count"])
            if count < 1:
                raise ConfigError(f"linspace count must be at least 1, got {count}")
            return [float(v) for v in np.linspace(result["start"], result["stop"], count)]
        case _:
            return [float(v) for v in result["values"]]


def parse_interval(text: str) -> tuple[float, float]:
    """
    解析区间表达式，单个数表示退化区间。区间端点的先后顺序由值类型校验。

    Raises:
        ConfigError: 表达式无法解析。
    """
    try:
        result = _interval_grammar().parse_string(text.strip(), parse_all=True)
    except pp.ParseException as e:
        raise ConfigError(f"invalid interval expression {text!r} at position {e.loc}: {e.msg}") from e
    lo = float(result["lo"])
    hi = float(result["hi"]) if "hi" in result else lo
    return lo, hi
