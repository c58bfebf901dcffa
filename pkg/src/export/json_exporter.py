#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import math
from typing import Any, Dict

import numpy as np
import pandas as pd

from src.export.base_exporter import BaseExporter
from src.utils.exceptions import ExportError


def to_jsonable(value: Any) -> Any:
    """把 DataFrame、numpy 标量、带 to_dict 的对象转换为 JSON 友好的结构"""
    if isinstance(value, pd.DataFrame):
        return [to_jsonable(row) for row in value.to_dict(orient='records')]
    if hasattr(value, 'to_dict') and not isinstance(value, dict):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return None if math.isnan(value) else value
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class JsonExporter(BaseExporter):
    """JSON 导出器：汇总、试验报告与簇划分"""

    def export(self, results: Dict[str, Any], filename: str, indent: int = 2, **kwargs) -> str:
        """
        Parameters:
        -----------
        results : Dict[str, Any]
            要写出的结构
        filename : str
            文件名（不含扩展名）
        indent : int, optional
            缩进

        Returns:
        --------
        str
            文件路径

        Raises:
        -------
        ExportError
            写入失败
        """
        filepath = self._get_file_path(filename, 'json')
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(to_jsonable(results), f, ensure_ascii=False, indent=indent)
        except (OSError, TypeError, ValueError) as e:
            raise ExportError(f"写入 {filepath} 失败: {str(e)}") from e
        self.logger.info(f"已导出 JSON 到 {filepath}")
        return filepath
