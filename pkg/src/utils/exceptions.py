#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
自定义异常类，集中管理项目中的所有异常
"""

from typing import Any, Dict, FrozenSet, Optional


class BaseError(Exception):
    """所有自定义异常的基类"""
    pass

class ConfigError(BaseError):
    """配置相关错误"""
    pass

class DataError(BaseError):
    """数据处理相关错误"""
    pass

class DataLoadError(DataError):
    """数据加载错误（图文件、树文件格式不正确等）"""
    pass

class DataValidationError(DataError):
    """数据验证错误"""
    pass

class GraphError(DataError):
    """图结构错误：顶点数不一致、顶点集合非法等"""
    pass

class TreeError(DataError):
    """树结构错误：不连通、含环、度数超限或生成参数不可行"""
    pass

class ExportError(BaseError):
    """导出过程中的错误"""
    pass

class InvalidArgumentError(BaseError):
    """函数参数无效"""
    pass

class PreconditionError(InvalidArgumentError):
    """操作的前置条件不满足（最小度、穷举规模上限等）"""
    pass

class InvariantError(BaseError):
    """结构不变量被破坏，属于程序错误，不会被当作试验失败处理"""
    pass


class StageError(BaseError):
    """
    流水线阶段失败

    试验失败是数据而不是异常：流水线捕获该异常并写入 TrialReport。

    Parameters:
    -----------
    stage : str
        失败阶段的标签
    message : str
        错误描述
    details : dict, optional
        诊断信息（剩余集合大小、失败簇对编号等）
    """
    def __init__(self, stage: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.stage = stage
        self.message = message
        self.details = dict(details or {})

    def __str__(self):
        return f"[{self.stage}] {self.message}"

class PartitionError(StageError):
    """簇划分构造或认证失败"""
    pass

class StarCoverError(StageError):
    """星覆盖失败"""
    pass

class EmbeddingError(StageError):
    """贪心森林嵌入在回溯预算内失败"""
    pass

class HallViolationError(StageError):
    """
    Hall 条件不成立，星形打包不可行

    Parameters:
    -----------
    witness : FrozenSet[int]
        违反 Hall 条件的集合 S
    """
    def __init__(self, stage: str, message: str, witness: FrozenSet[int],
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(stage, message, details)
        self.witness = frozenset(witness)

class BridgeError(StageError):
    """端点修正时找不到桥接边"""
    pass

class LedgerError(StageError):
    """簇大小调整账本不可行"""
    pass

class TemplatePathError(StageError):
    """按模板抽取的特殊路径数量不足"""
    pass

class CyclePackingError(StageError):
    """簇环打包在预算内失败"""
    pass
