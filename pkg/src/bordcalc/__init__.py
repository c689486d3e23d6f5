"""Exact 2-primary bordism groups of MSpin, MSpin^c and MSpin^h."""

__version__ = "0.1.0"
