"""Exact Serre characteristics and Betti numbers of genus-0 stable-map spaces."""

__version__ = "0.1.0"
