"""Exact p-adic L-functions of elliptic curves from modular symbols."""

__version__ = "0.1.0"
