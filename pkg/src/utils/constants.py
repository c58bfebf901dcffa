#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
常量定义文件，集中管理项目中的所有常量
"""

# 宿主图类型
class HostKind:
    GNP = "gnp"
    BIPARTITE = "bipartite"
    COMPLETE = "complete"
    FILE = "file"

# 树的形状
class TreeShape:
    UNIFORM_ATTACHMENT = "uniform-attachment"
    PATH = "path"
    CATERPILLAR = "caterpillar"
    BROOM = "broom"
    SUBDIVIDED = "subdivided"
    STAR = "star"
    FILE = "file"

    ALL = (UNIFORM_ATTACHMENT, PATH, CATERPILLAR, BROOM, SUBDIVIDED, STAR, FILE)

# 认证模式
class CertifyMode:
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"

# Hall 条件判定模式
class HallMode:
    EXHAUSTIVE = "exhaustive"
    MATCHING = "matching"

# 分支
class CaseName:
    LEAVES = "leaves"
    BARE_PATHS = "bare_paths"

# 阶段标签
class Stage:
    PRECONDITION = "precondition"
    DISPATCH = "dispatch"
    # 第一种情形
    REMOVE_LEAVES = "remove_leaves"
    ALMOST_SPANNING = "almost_spanning"
    STAR_PACKING = "star_packing"
    # 第二种情形
    PARTITION = "partition"
    BARE_PATHS = "bare_paths"
    EMBED_FOREST = "embed_forest"
    FIX_ENDPOINTS = "fix_endpoints"
    ADJUST_CLUSTERS = "adjust_clusters"
    COMPLETE_CYCLES = "complete_cycles"
    # 收尾
    ASSEMBLE = "assemble"
    VERIFY = "verify"

# 阶段状态
class StageStatus:
    OK = "ok"
    FAILED = "failed"
    SKIPPED = "skipped"

# 随机边的使用方式
class PhaseMode:
    RANDOM = "random"
    UNION = "union"

# 端点修正的目的地分配规则
class DestinationRule:
    ROUND_ROBIN = "round_robin"
    BALANCED = "balanced"

# 运行模式
class RunMode:
    EMBED = "embed"
    CALIBRATE = "calibrate"
    CERTIFY = "certify"

    ALL = (EMBED, CALIBRATE, CERTIFY)

# 结果表列名（顺序固定）
class ColumnName:
    N = "n"
    ALPHA = "alpha"
    DELTA_MAX = "delta_max"
    TREE_SHAPE = "tree_shape"
    K = "k"
    C = "c"
    TRIALS = "trials"
    SUCCESSES = "successes"
    RATE = "rate"
    WILSON_LO = "wilson_lo"
    WILSON_HI = "wilson_hi"
    MEAN_MS = "mean_ms"

    CELL_COLUMNS = [N, ALPHA, DELTA_MAX, TREE_SHAPE, K, C, TRIALS, SUCCESSES,
                    RATE, WILSON_LO, WILSON_HI, MEAN_MS]

# 环境变量
class EnvVar:
    PREFIX = "TREE_EMBED_"

# 文件路径和目录
class FilePath:
    CONFIG = "config.json"
    OUTPUT_DIR = "output"
    LOGS_DIR = "logs"
    DEFAULT_LOG = "logs/app.log"
    RESULTS_CSV = "results"
    SUMMARY_JSON = "summary"
    CALIBRATION_JSON = "calibration"
    PARTITION_JSON = "partition"
    CERTIFICATION_CSV = "certification"
    WORKBOOK = "results"

# 错误信息
class ErrorMessage:
    INVALID_PROBABILITY = "概率 p 必须在 [0, 1] 内，实际为 {}"
    VERTEX_COUNT_MISMATCH = "顶点数不一致: {} != {}"
    EMPTY_GRAPH = "空图没有最小度"
    INVALID_VERTEX_SET = "顶点集合必须非空且互不相交"
    INVALID_DEGREE_BOUND = "当 n >= 3 时最大度上界至少为 2，实际为 {}"
    SINGLE_VERTEX_TREE = "单顶点树没有叶子的定义"
    TOO_MANY_LEAVES = "要删除的叶子数 {} 超过叶子总数 {}"
    MIN_DEGREE_VIOLATED = "最小度 {} 小于 {} * {}"
    INVALID_DATA_TYPE = "{} 必须是 {} 类型"
    EXHAUSTIVE_TOO_LARGE = "穷举模式规模超限: {} > {}"
