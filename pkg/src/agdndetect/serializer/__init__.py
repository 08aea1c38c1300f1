from .serializer import (
    TOOL_NAME,
    build_manifest,
    config_hash,
    deserialize,
    format_float,
    serialize,
    tool_version,
    write_csv,
    write_json,
)

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
