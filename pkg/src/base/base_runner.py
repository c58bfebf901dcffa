#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from src.utils.config import Config


class BaseRunner(ABC):
    """
    运行器基类，流水线与实验驱动都应继承此类
    """
    def __init__(self, config: Optional[Config] = None):
        """
        初始化运行器

        Parameters:
        -----------
        config : Config, optional
            配置对象，不提供时使用默认配置
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config = config or Config()
        self.results: Dict[str, Any] = {}  # 存储运行结果

    @abstractmethod
    def run(self, *args, **kwargs):
        """
        执行运行，子类必须实现
        """
        pass

    def get_result(self, result_key: Optional[str] = None) -> Any:
        """
        获取运行结果

        Parameters:
        -----------
        result_key : str, optional
            结果键，如果不提供则返回所有结果

        Returns:
        --------
        Any
            运行结果，键不存在时返回 None
        """
        if result_key is None:
            return self.results

        if result_key not in self.results:
            self.logger.warning(f"结果 {result_key} 不存在")
            return None

        return self.results[result_key]

    def export_result(self, exporter, filename: str, result_key: Optional[str] = None, **kwargs) -> str:
        """
        通过导出器导出运行结果

        Parameters:
        -----------
        exporter : BaseExporter
            导出器对象
        filename : str
            文件名（不含扩展名）
        result_key : str, optional
            只导出某一项结果
        **kwargs
            传给导出器的其他参数

        Returns:
        --------
        str
            导出文件路径
        """
        payload = self.results if result_key is None else {result_key: self.get_result(result_key)}
        path = exporter.export(payload, filename, **kwargs)
        self.logger.info(f"结果已导出至 {path}")
        return path

    def __str__(self):
        """
        返回运行器描述
        """
        return f"{self.__class__.__name__}: {len(self.results)} 个结果"
