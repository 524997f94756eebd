# -*- coding: utf-8 -*-
"""Day-ahead scheduling of a household battery."""
