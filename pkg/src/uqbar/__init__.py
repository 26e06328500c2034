"""Exact representation theory of the restricted quantum group at a 2p-th root of unity."""

__version__ = "0.1.0"
