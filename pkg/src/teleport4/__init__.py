"""Transformation-operator analysis and simulation of two-qubit teleportation
through four-qubit entangled channels."""

__version__ = "0.1.0"
