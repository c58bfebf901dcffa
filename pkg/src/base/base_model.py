#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterator, Tuple

import numpy as np


class BaseStructure(ABC):
    """
    组合结构基类，图、树、森林都应继承此类

    子类在构造完成后不可变，可以在并发试验之间安全共享。
    """
    def __init__(self, n: int):
        """
        初始化组合结构

        Parameters:
        -----------
        n : int
            顶点数，顶点为 0..n-1 的整数（森林可以只使用其中一部分）
        """
        if n < 0:
            raise ValueError(f"顶点数不能为负: {n}")
        self.logger = logging.getLogger(self.__class__.__name__)
        self._n = int(n)

    @property
    def n(self) -> int:
        """顶点数"""
        return self._n

    @abstractmethod
    def edges(self) -> Iterator[Tuple[int, int]]:
        """
        按 (u, v), u < v 的字典序遍历所有边，子类必须实现
        """
        pass

    @abstractmethod
    def validate(self) -> bool:
        """
        验证结构不变量，失败时抛出对应的领域异常，子类必须实现
        """
        pass

    @abstractmethod
    def degree(self, v: int) -> int:
        """顶点 v 的度数"""
        pass

    def num_edges(self) -> int:
        """边数"""
        return sum(1 for _ in self.edges())

    def degree_sequence(self) -> np.ndarray:
        """
        度数序列（按顶点编号）

        Returns:
        --------
        np.ndarray
            长度为 n 的整数数组
        """
        return np.array([self.degree(v) for v in range(self.n)], dtype=np.int64)

    def max_degree(self) -> int:
        """最大度，空结构返回 0"""
        if self.n == 0:
            return 0
        return int(self.degree_sequence().max())

    def get_stats(self) -> Dict[str, Any]:
        """
        获取结构的基本统计信息

        Returns:
        --------
        Dict[str, Any]
            顶点数、边数、最大度
        """
        return {
            'n': self.n,
            'edges': self.num_edges(),
            'max_degree': self.max_degree(),
        }

    def __len__(self) -> int:
        return self.n

    def __str__(self):
        stats = self.get_stats()
        return f"{self.__class__.__name__}(n={stats['n']}, m={stats['edges']})"
