#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging
import os
import sys
from typing import Optional, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def parse_level(level: Union[int, str]) -> int:
    """
    将日志级别名称转换为 logging 常量

    Parameters:
    -----------
    level : int or str
        日志级别，如 logging.INFO 或 'DEBUG'

    Returns:
    --------
    int
        日志级别常量，无法识别时返回 INFO
    """
    if isinstance(level, int):
        return level
    return getattr(logging, str(level).upper(), logging.INFO)


def setup_logger(name: Optional[str] = None, level: Union[int, str] = logging.INFO,
                 log_file: Optional[str] = None, console: bool = True) -> logging.Logger:
    """
    设置日志器

    Parameters:
    -----------
    name : str, optional
        日志器名称，如果不提供则使用根日志器
    level : int or str, optional
        日志级别，默认为INFO
    log_file : str, optional
        日志文件路径，如果不提供则不输出到文件
    console : bool, optional
        是否输出到控制台，默认为True

    Returns:
    --------
    logging.Logger
        日志器对象
    """
    level = parse_level(level)
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.handlers = []  # 清除已有处理器

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    if console:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
