"""Verification laboratory for the elasticity and de Rham Hilbert complexes."""
__version__ = "0.1.0"
