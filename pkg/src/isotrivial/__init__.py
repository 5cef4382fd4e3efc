"""Exact computations for isotrivial elliptic K3 surfaces and torus quotients."""

__version__ = "0.1.0"
