#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .tree import Tree, Forest, generate_bounded_tree, count_leaves, bare_path_lower_bound, leaf_target
from .surgery import BarePathDecomposition, LeafRemoval, extract_bare_paths, remove_leaves

__all__ = [
    'Tree', 'Forest', 'generate_bounded_tree', 'count_leaves', 'bare_path_lower_bound',
    'leaf_target', 'BarePathDecomposition', 'LeafRemoval', 'extract_bare_paths', 'remove_leaves',
]
