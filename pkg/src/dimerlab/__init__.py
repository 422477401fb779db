"""Bose-Hubbard dimer dynamics, generalized Viviani curves and
semiclassical quantization."""

__version__ = "0.1.0"
