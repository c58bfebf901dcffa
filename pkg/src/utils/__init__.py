#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .logger import setup_logger
from .config import Config
from .rng import make_rng, derive_seed
from .stats_processor import StatsProcessor
from .performance_cache import PerformanceCache, get_cache, clear_global_cache

__all__ = [
    'setup_logger',
    'Config',
    'make_rng',
    'derive_seed',
    'StatsProcessor',
    'PerformanceCache',
    'get_cache',
    'clear_global_cache'
]
