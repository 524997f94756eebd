# -*- coding: utf-8 -*-
"""API for hemssa - home energy management cost sensitivity to solar forecast
errors and battery sizing."""

__version__ = "0.1.0"
