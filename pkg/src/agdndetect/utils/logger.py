import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from loguru import logger

if TYPE_CHECKING:
    from types import FrameType

__all__ = ["logger", "init_logger"]


class InterceptHandler(logging.Handler):
    """
    拦截标准日志消息（例如 scipy 或 numpy 发出的警告）并将其路由到 Loguru。
    """

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: str | int = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame: FrameType | None = logging.currentframe()
        depth = 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def init_logger(
    *,
    service_name: str = "agdndetect",
    level: str = "INFO",
    console_format: str | None = None,
    log_file: str | Path | None = None,
    file_format: str | None = None,
    rotation: str = "10 MB",
    retention: str = "7 days",
    intercept_standard_logging: bool = True,
    enqueue: bool = False,
    diagnose: bool = False,
    reset: bool = True,
    add_console: bool = True,
) -> None:
    """
    初始化 loguru logger。

    控制台输出固定写入 stderr，stdout 保留给 CSV/JSON 数据，保证重定向后的输出可直接比对。

    Args:
        service_name: 服务名称，写入每条日志的 extra 字段。
        level: 最低日志级别（例如 "DEBUG", "INFO"）。
        console_format: 控制台输出的自定义格式。
        log_file: 日志文件路径，为 None 时不写文件。
        file_format: 文件输出的自定义格式。
        rotation: 日志轮转条件（例如 "10 MB", "00:00"）。
        retention: 日志保留条件（例如 "7 days"）。
        intercept_standard_logging: 是否拦截标准库日志。
        enqueue: 是否通过队列异步写日志。命令行进程生命周期短，默认关闭。
        diagnose: 是否在异常回溯中显示变量值。
        reset: 是否移除所有现有的处理器。
        add_console: 是否添加控制台处理器。
    """
    if console_format is None:
        console_format = (
            "<green>{time:HH:mm:ss}</green> "
            "<level>[{level}]</level> "
            "<cyan>{extra[service]}</cyan>:<cyan>{name}</cyan>:<cyan>{line}</cyan> | "
            "<level>{message}</level>"
        )

    if reset:
        logger.remove()

    logger.configure(extra={"service": service_name})

    if add_console:
        logger.add(
            sys.stderr,
            format=console_format,
            level=level,
            enqueue=enqueue,
            diagnose=diagnose,
        )

    if log_file is not None:
        if file_format is None:
            file_format = "{time:YYYY-MM-DD HH:mm:ss} [{level}] {extra[service]} {name}:{function}:{line} | {message}"

        log_path = Path(log_file)
        try:
            log_path.parent.mkdir(parents=True, exist_ok=True)
        except OSError:
            logger.warning("Failed to create log directory: {}, file logging disabled.", log_path.parent)
        else:
            logger.add(
                log_path,
                format=file_format,
                level=level,
                rotation=rotation,
                retention=retention,
                encoding="utf-8",
                enqueue=enqueue,
                diagnose=diagnose,
            )

    if intercept_standard_logging:
        logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
