#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from src.embedding import Embedding, embed_forest_greedy, verify_embedding
from src.graph import complete_graph, generate_gnp, path_graph
from src.tree import Forest, Tree, generate_bounded_tree
from src.utils.constants import Stage, TreeShape
from src.utils.exceptions import EmbeddingError, InvariantError


class TestVerifyEmbedding:
    def test_identity_path_in_triangle(self):
        result = verify_embedding(Tree(3, [-1, 0, 1]), complete_graph(3), Embedding({0: 0, 1: 1, 2: 2}))
        assert result.valid
        assert result.kind is None

    def test_missing_vertex(self):
        result = verify_embedding(Tree(3, [-1, 0, 1]), complete_graph(3), Embedding({0: 0, 1: 1}))
        assert not result
        assert result.kind == 'missing'
        assert result.witness == (2,)

    def test_out_of_range(self):
        result = verify_embedding(Tree(3, [-1, 0, 1]), complete_graph(3), Embedding({0: 0, 1: 1, 2: 5}))
        assert result.kind == 'out_of_range'

    def test_non_edge(self):
        result = verify_embedding(Tree(3, [-1, 0, 1]), path_graph(3), Embedding({0: 0, 1: 2, 2: 1}))
        assert result.kind == 'non_edge'
        assert result.witness == (0, 1)

    def test_forest_only_checks_its_vertices(self):
        forest = Forest([0, 1, 7], [(0, 1)])
        assert verify_embedding(forest, path_graph(3), Embedding({0: 1, 1: 2, 7: 0})).valid


class TestEmbedding:
    def test_non_injective_mapping_rejected(self):
        with pytest.raises(InvariantError):
            Embedding({0: 1, 1: 1})

    def test_merged(self):
        merged = Embedding({0: 3}).merged(Embedding({1: 4}))
        assert merged.mapping == {0: 3, 1: 4}
        assert merged.used == frozenset({3, 4})
        with pytest.raises(InvariantError):
            Embedding({0: 3}).merged(Embedding({1: 3}))
        with pytest.raises(InvariantError):
            Embedding({0: 3}).merged(Embedding({0: 4}))

    def test_restricted_and_dict(self):
        e = Embedding({0: 5, 1: 6, 2: 7}).restricted([0, 2])
        assert len(e) == 2
        assert 1 not in e
        assert e.to_dict() == {'0': 5, '2': 7}


class TestEmbedForestGreedy:
    def test_path_in_complete_graph(self, path_tree5):
        e = embed_forest_greedy(path_tree5, complete_graph(5), range(5), seed=1)
        assert verify_embedding(path_tree5, complete_graph(5), e).valid
        assert e.used == frozenset(range(5))

    def test_path_in_cycle(self, c4):
        path = Tree(4, [-1, 0, 1, 2])
        assert verify_embedding(path, c4, embed_forest_greedy(path, c4, range(4), seed=3)).valid

    def test_star_does_not_fit_cycle(self, c4):
        star = Tree(4, [-1, 0, 0, 0])
        with pytest.raises(EmbeddingError) as info:
            embed_forest_greedy(star, c4, range(4), seed=0, stage=Stage.EMBED_FOREST)
        assert info.value.stage == Stage.EMBED_FOREST

    def test_too_few_allowed_vertices(self, path_tree5):
        with pytest.raises(EmbeddingError) as info:
            embed_forest_greedy(path_tree5, complete_graph(10), range(4), seed=0)
        assert info.value.details['allowed'] == 4

    def test_respects_allowed_set(self):
        forest = Forest([0, 1, 2, 3], [(0, 1), (2, 3)])
        allowed = [10, 11, 12, 13, 14, 15]
        e = embed_forest_greedy(forest, complete_graph(20), allowed, seed=4)
        assert e.used <= frozenset(allowed)
        assert verify_embedding(forest, complete_graph(20), e).valid

    @pytest.mark.parametrize("seed", range(5))
    def test_bounded_tree_in_dense_random_graph(self, seed):
        tree = generate_bounded_tree(80, 3, TreeShape.UNIFORM_ATTACHMENT, seed=seed)
        host = generate_gnp(200, 0.5, seed=seed)
        e = embed_forest_greedy(tree, host, range(200), seed=seed)
        assert verify_embedding(tree, host, e).valid

    def test_deterministic(self, path_tree5):
        first = embed_forest_greedy(path_tree5, complete_graph(9), range(9), seed=6)
        again = embed_forest_greedy(path_tree5, complete_graph(9), range(9), seed=6)
        assert first == again
