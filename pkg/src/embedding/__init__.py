#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .embedding import Embedding, VerificationResult, verify_embedding
from .greedy import embed_forest_greedy

__all__ = ['Embedding', 'VerificationResult', 'verify_embedding', 'embed_forest_greedy']
