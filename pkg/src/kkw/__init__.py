"""Exact symbolic engine for boundary terms of noncommutative residues of
Dirac-type operators on 3-, 4- and 6-dimensional manifolds with boundary."""

__version__ = "0.1.0"
