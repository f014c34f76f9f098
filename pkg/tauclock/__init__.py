"""Tunnelling-time amplitudes and the Larmor clock."""

__version__ = '1.0.0'
