"""Quadrature squeezing spectra for self- and cross-phase modulation in an inertial Kerr medium."""

__version__ = "0.1.0"
