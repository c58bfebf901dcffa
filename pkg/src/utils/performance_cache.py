#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
性能缓存管理器
同一实验单元内的宿主图与簇划分只计算一次，避免每个试验重复构造
"""

import hashlib
import logging
import time
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable, Optional


class PerformanceCache:
    """
    进程内 LRU 缓存

    每个工作进程持有自己的实例；缓存值只依赖键（键包含全部决定性输入），
    因此命中与否不影响结果。
    """

    def __init__(self, max_memory_size: int = 32):
        """
        初始化缓存管理器

        Parameters:
        -----------
        max_memory_size : int
            最大内存缓存项数
        """
        self.max_memory_size = max_memory_size
        self.memory_cache: "OrderedDict[str, Dict[str, Any]]" = OrderedDict()
        self.cache_stats = {
            'hits': 0,
            'misses': 0,
            'evictions': 0
        }
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def make_key(namespace: str, *parts: Hashable) -> str:
        """
        生成缓存键

        Parameters:
        -----------
        namespace : str
            命名空间，如 'host' 或 'partition'
        *parts
            决定缓存值的全部输入（需有稳定的 repr）

        Returns:
        --------
        str
            缓存键
        """
        key_data = f"{namespace}:{repr(parts)}"
        return hashlib.md5(key_data.encode('utf-8')).hexdigest()

    def get(self, key: str) -> Optional[Any]:
        """
        获取缓存项

        Parameters:
        -----------
        key : str
            缓存键

        Returns:
        --------
        Optional[Any]
            缓存值，如果不存在则返回None
        """
        item = self.memory_cache.get(key)
        if item is None:
            self.cache_stats['misses'] += 1
            return None
        self.memory_cache.move_to_end(key)
        self.cache_stats['hits'] += 1
        return item['data']

    def set(self, key: str, value: Any) -> None:
        """
        设置缓存项，超出容量时淘汰最久未使用的项

        Parameters:
        -----------
        key : str
            缓存键
        value : Any
            缓存值
        """
        if key in self.memory_cache:
            self.memory_cache.move_to_end(key)
        elif len(self.memory_cache) >= self.max_memory_size:
            self.memory_cache.popitem(last=False)
            self.cache_stats['evictions'] += 1

        self.memory_cache[key] = {'data': value, 'time': time.time()}

    def get_or_compute(self, key: str, factory: Callable[[], Any]) -> Any:
        """
        命中则返回缓存值，否则调用 factory 计算并缓存

        Parameters:
        -----------
        key : str
            缓存键
        factory : Callable[[], Any]
            计算函数

        Returns:
        --------
        Any
            缓存值或新计算的值
        """
        cached = self.get(key)
        if cached is not None:
            return cached
        value = factory()
        self.set(key, value)
        return value

    def clear(self) -> None:
        """清空所有缓存"""
        self.memory_cache.clear()

    def get_stats(self) -> Dict[str, float]:
        """
        获取缓存统计信息

        Returns:
        --------
        Dict[str, float]
            统计信息
        """
        total_requests = self.cache_stats['hits'] + self.cache_stats['misses']
        hit_rate = self.cache_stats['hits'] / total_requests if total_requests > 0 else 0

        return {
            'hits': self.cache_stats['hits'],
            'misses': self.cache_stats['misses'],
            'evictions': self.cache_stats['evictions'],
            'hit_rate': hit_rate,
            'memory_items': len(self.memory_cache)
        }


# 全局缓存实例（每个进程一个）
_global_cache = None


def get_cache() -> PerformanceCache:
    """
    获取全局缓存实例

    Returns:
    --------
    PerformanceCache
        缓存实例
    """
    global _global_cache
    if _global_cache is None:
        _global_cache = PerformanceCache()
    return _global_cache


def clear_global_cache() -> None:
    """清空全局缓存"""
    global _global_cache
    if _global_cache is not None:
        _global_cache.clear()
