"""Exact cut-generating-function toolkit: lattice-free sets, gauges, liftings."""

__version__ = "0.1.0"
