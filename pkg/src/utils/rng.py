#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
随机数工具

所有随机选择都来自 numpy 的 PCG64 生成器，种子由 SeedSequence 从
(主种子, 键...) 派生，保证试验在不同机器上逐位复现。
"""

import hashlib
from typing import Sequence, Union

import numpy as np

SeedLike = Union[int, np.integer]


def key_digest(key: str) -> int:
    """整个字符串的 32 位摘要（不能用 hash()，它在进程间不稳定）"""
    return int.from_bytes(hashlib.blake2b(key.encode('utf-8'), digest_size=4).digest(), 'little')


def _normalize_keys(keys: Sequence[Union[int, str]]) -> tuple:
    normalized = []
    for key in keys:
        if isinstance(key, str):
            normalized.append(key_digest(key))
        else:
            normalized.append(int(key))
    return tuple(normalized)


def seed_sequence(seed: SeedLike, *keys: Union[int, str]) -> np.random.SeedSequence:
    """
    构造派生的 SeedSequence

    Parameters:
    -----------
    seed : int
        主种子（非负）
    *keys : int or str
        派生键，如 (单元编号, 试验编号, 'tree')

    Returns:
    --------
    np.random.SeedSequence
        派生种子序列
    """
    return np.random.SeedSequence(entropy=int(seed), spawn_key=_normalize_keys(keys))


def derive_seed(seed: SeedLike, *keys: Union[int, str]) -> int:
    """
    派生一个 63 位整数种子

    Parameters:
    -----------
    seed : int
        主种子
    *keys : int or str
        派生键

    Returns:
    --------
    int
        派生种子
    """
    state = seed_sequence(seed, *keys).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


def make_rng(seed: SeedLike, *keys: Union[int, str]) -> np.random.Generator:
    """
    构造 PCG64 随机数生成器

    Parameters:
    -----------
    seed : int
        主种子
    *keys : int or str
        派生键，不提供时直接使用主种子

    Returns:
    --------
    np.random.Generator
        随机数生成器
    """
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, *keys)))
