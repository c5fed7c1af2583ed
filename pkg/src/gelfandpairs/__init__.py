"""Gelfand pairs for semidirect products: orbits, commutativity certificates
and exact spherical functions."""

__version__ = "0.1.0"
