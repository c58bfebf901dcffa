#!/usr/bin/env python
# -*- coding: utf-8 -*-

from typing import Any, Dict, List, Optional

import pandas as pd

from src.export.base_exporter import BaseExporter
from src.utils.constants import ColumnName
from src.utils.exceptions import ExportError


class CsvExporter(BaseExporter):
    """
    CSV 导出器

    只写出一张表；列顺序固定，缺失值写为空字段，同一输入逐字节相同。
    """
    def export(self, results: Dict[str, Any], filename: str, key: str = 'cells',
               columns: Optional[List[str]] = None, **kwargs) -> str:
        """
        Parameters:
        -----------
        results : Dict[str, Any]
            运行结果
        filename : str
            文件名（不含扩展名）
        key : str, optional
            要导出的表，默认 'cells'
        columns : List[str], optional
            列顺序，默认 ColumnName.CELL_COLUMNS（仅 cells 表）

        Returns:
        --------
        str
            文件路径

        Raises:
        -------
        ExportError
            表不存在或写入失败
        """
        data = results.get(key)
        if not self.validate_data(data):
            raise ExportError(f"结果 {key} 不是可导出的表")
        if columns is None and key == 'cells':
            columns = ColumnName.CELL_COLUMNS
        frame = data if columns is None else data.reindex(columns=columns)

        filepath = self._get_file_path(filename, 'csv')
        try:
            frame.to_csv(filepath, index=False, na_rep='', lineterminator='\n')
        except OSError as e:
            raise ExportError(f"写入 {filepath} 失败: {str(e)}") from e
        self.logger.info(f"已导出 {len(frame)} 行到 {filepath}")
        return filepath
