#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .base_exporter import BaseExporter
from .csv_exporter import CsvExporter
from .json_exporter import JsonExporter, to_jsonable
from .excel_exporter import ExcelExporter

__all__ = ['BaseExporter', 'CsvExporter', 'JsonExporter', 'ExcelExporter', 'to_jsonable']
