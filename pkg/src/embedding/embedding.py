#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
嵌入映射与独立验证器
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from src.graph import Graph
from src.tree import Forest, Tree
from src.utils.exceptions import InvariantError


class Embedding:
    """
    树（森林）顶点到宿主图顶点的单射部分映射

    Parameters:
    -----------
    mapping : Mapping[int, int]
        树顶点 → 宿主顶点
    """
    def __init__(self, mapping: Optional[Mapping[int, int]] = None):
        self._map: Dict[int, int] = {int(k): int(v) for k, v in (mapping or {}).items()}
        self._used = frozenset(self._map.values())
        if len(self._used) != len(self._map):
            raise InvariantError("嵌入映射不是单射")

    @property
    def mapping(self) -> Mapping[int, int]:
        return MappingProxyType(self._map)

    @property
    def used(self) -> FrozenSet[int]:
        """已占用的宿主顶点"""
        return self._used

    def image(self, v: int) -> int:
        return self._map[v]

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._map.items()))

    def merged(self, other: 'Embedding') -> 'Embedding':
        """
        合并两个定义域不交、像集不交的嵌入

        Raises:
        -------
        InvariantError
            定义域或像集相交
        """
        if set(self._map) & set(other._map):
            raise InvariantError("合并的嵌入定义域相交")
        combined = dict(self._map)
        combined.update(other._map)
        return Embedding(combined)

    def restricted(self, vertices: Iterable[int]) -> 'Embedding':
        keep = set(vertices)
        return Embedding({k: v for k, v in self._map.items() if k in keep})

    def to_dict(self) -> Dict[str, int]:
        return {str(k): v for k, v in sorted(self._map.items())}

    def __contains__(self, v: int) -> bool:
        return v in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return self._map == other._map

    def __repr__(self):
        return f"Embedding({len(self._map)} 个顶点)"


@dataclass(frozen=True)
class VerificationResult:
    """
    验证结论

    Attributes:
    -----------
    valid : bool
        是否为合法嵌入
    kind : str, optional
        第一个违例的类型：missing / out_of_range / collision / non_edge
    violation : str, optional
        违例描述
    witness : tuple, optional
        违例涉及的顶点
    """
    valid: bool
    kind: Optional[str] = None
    violation: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.valid


def verify_embedding(t: Union[Tree, Forest], host: Graph, e: Embedding) -> VerificationResult:
    """
    独立验证嵌入：对 t 的每个顶点有定义、单射、每条边映射到宿主图的边

    只读取 t、host 和映射本身，不依赖嵌入器的任何簿记。

    Parameters:
    -----------
    t : Tree or Forest
        被嵌入的树或森林
    host : Graph
        宿主图
    e : Embedding
        待验证的映射

    Returns:
    --------
    VerificationResult
        第一个违例（按顶点、边的字典序）或验证通过
    """
    vertices = t.vertices if isinstance(t, Forest) else range(t.n)
    mapping = e.mapping

    owner: Dict[int, int] = {}
    for v in vertices:
        if v not in mapping:
            return VerificationResult(False, 'missing', f"树顶点 {v} 没有像", (v,))
        image = mapping[v]
        if not 0 <= image < host.n:
            return VerificationResult(False, 'out_of_range', f"树顶点 {v} 的像 {image} 超出宿主图范围", (v, image))
        if image in owner:
            return VerificationResult(False, 'collision',
                                      f"树顶点 {owner[image]} 与 {v} 都映射到 {image}",
                                      (owner[image], v, image))
        owner[image] = v

    for u, v in t.edges():
        if not host.has_edge(mapping[u], mapping[v]):
            return VerificationResult(False, 'non_edge',
                                      f"树边 ({u}, {v}) 的像 ({mapping[u]}, {mapping[v]}) 不是宿主图的边",
                                      (u, v))
    return VerificationResult(True)
