#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .base_model import BaseStructure
from .base_runner import BaseRunner

__all__ = ['BaseStructure', 'BaseRunner']
