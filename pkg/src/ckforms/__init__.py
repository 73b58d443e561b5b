"""Exact obstruction checks for compact quotients of reductive homogeneous spaces."""

__version__ = "0.1.0"
