#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.graph import Graph, complete_bipartite, complete_graph, path_graph
from src.tree import Tree
from src.utils.performance_cache import clear_global_cache


@pytest.fixture(autouse=True)
def clear_cache():
    """每个测试使用干净的进程内缓存"""
    clear_global_cache()
    yield
    clear_global_cache()


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def c4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def k24() -> Graph:
    return complete_bipartite(2, 4)


@pytest.fixture
def path3() -> Graph:
    return path_graph(3)


@pytest.fixture
def star5() -> Tree:
    """K_{1,4}"""
    return Tree(5, [-1, 0, 0, 0, 0])


@pytest.fixture
def path_tree5() -> Tree:
    return Tree(5, [-1, 0, 1, 2, 3])


@pytest.fixture
def out_dir(tmp_path) -> str:
    return str(tmp_path / "output")
