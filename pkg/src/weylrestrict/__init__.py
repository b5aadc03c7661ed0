"""Exact verification toolkit for restricting Weyl-group invariants and spherical spectra
from a large symmetric-space rank to a smaller one."""

__version__ = "0.1.0"
