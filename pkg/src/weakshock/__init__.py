"""Weak asymptotics for shock propagation and merging in scalar conservation laws."""

__version__ = "0.1.0"
