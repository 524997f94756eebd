# -*- coding: utf-8 -*-
"""Variance-based global sensitivity analysis on quasi-random designs."""
