#!/usr/bin/env python
# -*- coding: utf-8 -*-

from typing import Any, Dict

import pandas as pd

from src.export.base_exporter import BaseExporter
from src.utils.exceptions import ExportError


class ExcelExporter(BaseExporter):
    """
    Excel导出器，每张表一个工作表
    """
    def export(self, results: Dict[str, Any], filename: str, **kwargs) -> str:
        """
        将结果中的所有 DataFrame 导出到单个 Excel 文件

        Parameters:
        -----------
        results : Dict[str, Any]
            结果字典，只导出其中的 DataFrame（如 cells、trials）
        filename : str
            输出的Excel文件名（不含路径和扩展名）

        Returns:
        --------
        str
            成功导出的文件路径

        Raises:
        -------
        ExportError
            没有可导出的表或写入失败
        """
        sheets = {name: df for name, df in results.items() if self.validate_data(df)}
        if not sheets:
            raise ExportError("没有可供导出的表")

        filepath = self._get_file_path(filename, "xlsx")
        try:
            with pd.ExcelWriter(filepath, engine='xlsxwriter') as writer:
                for name, df in sheets.items():
                    sheet = self._sanitize_sheet_name(name)
                    df.to_excel(writer, sheet_name=sheet, index=False)
                    worksheet = writer.sheets[sheet]
                    for col_idx, column in enumerate(df.columns):
                        width = max([len(str(column))] + [len(str(v)) for v in df[column].head(200)])
                        worksheet.set_column(col_idx, col_idx, min(width + 2, 40))
        except OSError as e:
            raise ExportError(f"导出Excel失败: {str(e)}") from e
        self.logger.info(f"已导出 {len(sheets)} 个工作表到 {filepath}")
        return filepath
