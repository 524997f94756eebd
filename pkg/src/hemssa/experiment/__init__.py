# -*- coding: utf-8 -*-
"""Sensitivity study of daily household cost to irradiance errors and battery size."""
