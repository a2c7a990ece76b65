"""Proof kernel, strategy compiler and game runtime for bounded-arithmetic game logics."""

__version__ = "0.1.0"
