"""Descent algebras of finite Coxeter groups: structure, Ext-quivers, representation type."""

__version__ = "0.1.0"
