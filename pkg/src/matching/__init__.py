#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .star_packing import (
    StarDemand, StarPacking, HallCheck, check_hall_condition, find_star_packing,
    validate_star_packing, cross_degree_bound, beta_bound,
)
from .leaf_completion import Case1Result, complete_case1

__all__ = [
    'StarDemand', 'StarPacking', 'HallCheck', 'check_hall_condition', 'find_star_packing',
    'validate_star_packing', 'cross_degree_bound', 'beta_bound', 'Case1Result', 'complete_case1',
]
