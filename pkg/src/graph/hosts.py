#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
宿主图规格解析与稠密宿主图生成
"""

import logging
from dataclasses import dataclass
from typing import Optional

from src.graph.graph import Graph, complete_bipartite, complete_graph, generate_gnp, min_degree, read_edge_list
from src.utils.constants import ErrorMessage, HostKind
from src.utils.exceptions import ConfigError, PreconditionError
from src.utils.rng import derive_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HostSpec:
    """
    宿主图规格

    Attributes:
    -----------
    kind : str
        gnp / bipartite / complete / file
    p : float
        gnp 的边概率
    a, b : int
        bipartite 两侧的比例 a:b
    path : str
        file 的边列表路径
    """
    kind: str
    p: float = 0.0
    a: int = 0
    b: int = 0
    path: Optional[str] = None

    def __str__(self):
        if self.kind == HostKind.GNP:
            return f"gnp:{self.p}"
        if self.kind == HostKind.BIPARTITE:
            return f"bipartite:{self.a}:{self.b}"
        if self.kind == HostKind.FILE:
            return f"file:{self.path}"
        return self.kind


def parse_host_spec(text: str) -> HostSpec:
    """
    解析宿主图规格字符串

    Parameters:
    -----------
    text : str
        `gnp:<p>`、`bipartite:<a>:<b>`、`complete` 或 `file:<path>`

    Returns:
    --------
    HostSpec
        解析结果

    Raises:
    -------
    ConfigError
        无法识别的规格
    """
    kind, _, rest = text.strip().partition(':')
    try:
        if kind == HostKind.GNP:
            p = float(rest)
            if not 0.0 <= p <= 1.0:
                raise ValueError(ErrorMessage.INVALID_PROBABILITY.format(p))
            return HostSpec(kind, p=p)
        if kind == HostKind.BIPARTITE:
            a_text, _, b_text = rest.partition(':')
            a, b = int(a_text), int(b_text)
            if a <= 0 or b <= 0:
                raise ValueError("二部图比例必须为正整数")
            return HostSpec(kind, a=a, b=b)
        if kind == HostKind.COMPLETE and not rest:
            return HostSpec(kind)
        if kind == HostKind.FILE and rest:
            return HostSpec(kind, path=rest)
    except ValueError as e:
        raise ConfigError(f"宿主图规格 {text!r} 非法: {str(e)}") from e
    raise ConfigError(f"无法识别的宿主图规格: {text!r}")


def bipartite_sides(n: int, a: int, b: int) -> tuple:
    """按比例 a:b 拆分 n，返回 (左侧大小, 右侧大小)"""
    left = (a * n) // (a + b)
    return left, n - left


def generate_dense_host(spec: HostSpec, n: int, alpha: float, seed: int,
                        max_attempts: int = 50, check_min_degree: bool = True) -> Graph:
    """
    按规格生成最小度不低于 αn 的稠密宿主图

    gnp 宿主图在最小度不足时用派生种子重采样，直到满足条件或达到次数上限。

    Parameters:
    -----------
    spec : HostSpec
        宿主图规格
    n : int
        顶点数
    alpha : float
        最小度比例
    seed : int
        随机种子
    max_attempts : int, optional
        gnp 重采样次数上限
    check_min_degree : bool, optional
        是否检查最小度条件（障碍实验中的二部图宿主可能需要关闭）

    Returns:
    --------
    Graph
        宿主图

    Raises:
    -------
    PreconditionError
        无法得到满足最小度条件的宿主图
    """
    threshold = alpha * n
    if spec.kind == HostKind.GNP:
        for attempt in range(max_attempts):
            host = generate_gnp(n, spec.p, derive_seed(seed, 'host', attempt))
            if not check_min_degree or n == 0 or min_degree_ok(host, alpha):
                if attempt:
                    logger.debug(f"第 {attempt + 1} 次采样得到满足最小度条件的宿主图")
                return host
        raise PreconditionError(
            f"{max_attempts} 次采样均未得到最小度 ≥ {threshold:.1f} 的 G({n}, {spec.p})")

    if spec.kind == HostKind.BIPARTITE:
        left, right = bipartite_sides(n, spec.a, spec.b)
        host = complete_bipartite(left, right)
    elif spec.kind == HostKind.COMPLETE:
        host = complete_graph(n)
    elif spec.kind == HostKind.FILE:
        host = read_edge_list(spec.path)
        if host.n != n:
            raise PreconditionError(f"图文件顶点数 {host.n} 与实验设置 n={n} 不一致")
    else:
        raise ConfigError(f"无法识别的宿主图类型: {spec.kind}")

    if check_min_degree and n > 0 and not min_degree_ok(host, alpha):
        raise PreconditionError(ErrorMessage.MIN_DEGREE_VIOLATED.format(min_degree(host), alpha, n))
    return host


def min_degree_ok(host: Graph, alpha: float) -> bool:
    """宿主图是否满足 δ(G) ≥ αn"""
    return host.n > 0 and min_degree(host) >= alpha * host.n - 1e-9
