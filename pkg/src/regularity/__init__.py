#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .params import (
    RegularityParams, StageConstants, combine_delta, robust_eps, robust_delta,
    superregular_core, large_subset_eps,
)
from .certify import Verdict, certify_dense, certify_super_regular, subset_inherits
from .star_cover import Star, star_cover, star_capacity, validate_star_cover
from .partition import ClusterId, ClusterPartition, bipartition, build_partition, flip

__all__ = [
    'RegularityParams', 'StageConstants', 'combine_delta', 'robust_eps', 'robust_delta',
    'superregular_core', 'large_subset_eps', 'Verdict', 'certify_dense', 'certify_super_regular',
    'subset_inherits', 'Star', 'star_cover', 'star_capacity', 'validate_star_cover',
    'ClusterId', 'ClusterPartition', 'bipartition', 'build_partition', 'flip',
]
