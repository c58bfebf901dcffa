#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .types import (
    SpecialPair, Template, ClusterState, ConsumptionLedger, StageOutcome, TrialReport,
    check_balance, x_sizes,
)
from .ledger import AdjustmentLedger, PairBudget
from .forest_stage import ForestStageResult, stage_embed_forest, occupancy_check, certify_cluster_pairs
from .endpoint_stage import EndpointStageResult, stage_fix_endpoints
from .template_paths import TemplatePathResult, find_template_paths, split_slots
from .adjust_stage import AdjustStageResult, stage_adjust_clusters
from .cycle_stage import CycleStageResult, stage_complete_cycles, assignment_count
from .pipeline import PipelineConfig, EmbeddingPipeline, embed_spanning_tree

__all__ = [
    'SpecialPair', 'Template', 'ClusterState', 'ConsumptionLedger', 'StageOutcome', 'TrialReport',
    'check_balance', 'x_sizes', 'AdjustmentLedger', 'PairBudget', 'ForestStageResult',
    'stage_embed_forest', 'occupancy_check', 'certify_cluster_pairs', 'EndpointStageResult',
    'stage_fix_endpoints', 'TemplatePathResult', 'find_template_paths', 'split_slots',
    'AdjustStageResult', 'stage_adjust_clusters', 'CycleStageResult', 'stage_complete_cycles',
    'assignment_count', 'PipelineConfig', 'EmbeddingPipeline', 'embed_spanning_tree',
]
