#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .cli_interface import CommandLineInterface

__all__ = ['CommandLineInterface'] 