#!/usr/bin/env python
# -*- coding: utf-8 -*-

import sys
import logging
from typing import Tuple

from src.utils.config import Config
from src.utils.constants import FilePath
from src.utils.exceptions import ConfigError
from src.utils.logger import parse_level, setup_logger
from src.interface import CommandLineInterface


def logging_options(args) -> Tuple[int, str]:
    """
    日志级别与日志文件：命令行参数优先，其次是配置文件的 app 节

    Returns:
    --------
    Tuple[int, str]
        (日志级别, 日志文件路径)
    """
    try:
        app = Config(args.config).get_section('app')
    except ConfigError:
        # 配置文件本身的错误由 execute 报告
        app = {}
    log_level = logging.DEBUG if args.verbose else parse_level(app.get('log_level', logging.INFO))
    log_file = args.log_file or app.get('log_file') or FilePath.DEFAULT_LOG
    return log_level, log_file


def main(argv=None):
    """
    主函数

    Returns:
    --------
    int
        退出码
    """
    cli = CommandLineInterface()

    # 解析命令行参数
    try:
        args = cli.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    log_level, log_file = logging_options(args)

    # 初始化根日志器，各模块日志都汇总到这里
    setup_logger(None, level=log_level, log_file=log_file, console=True)
    logger = logging.getLogger("main")

    logger.info("生成树嵌入实验启动")
    code = cli.execute(args)
    logger.info(f"生成树嵌入实验退出，退出码 {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
