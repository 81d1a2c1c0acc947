"""Relative Gel'fand-Kalinin-Fuks cohomology of formal Hamiltonian vector fields."""

__version__ = "0.1.0"
