#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .graph import (
    Graph, VertexSet, as_vertex_set, empty_graph, complete_graph, complete_bipartite, path_graph,
    generate_gnp, graph_union, union_all, min_degree, density, edge_count_between,
    random_permutation, relabel, read_edge_list, write_edge_list,
)
from .hosts import HostSpec, parse_host_spec, generate_dense_host, min_degree_ok, bipartite_sides
from .perturbation import PerturbationPlan, PHASE_COUNT

__all__ = [
    'Graph', 'VertexSet', 'as_vertex_set', 'empty_graph', 'complete_graph', 'complete_bipartite',
    'path_graph', 'generate_gnp', 'graph_union', 'union_all', 'min_degree', 'density',
    'edge_count_between', 'random_permutation', 'relabel', 'read_edge_list', 'write_edge_list',
    'HostSpec', 'parse_host_spec', 'generate_dense_host', 'min_degree_ok', 'bipartite_sides',
    'PerturbationPlan', 'PHASE_COUNT',
]
