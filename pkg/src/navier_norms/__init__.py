"""Exponent algebra, singular integral inequalities and spectral norm
diagnostics for incompressible flow estimates.

Three layers: exact rational exponent arithmetic with its admissibility
curves, a grid-model kit for Bihari-LaSalle type integral inequalities, and
a periodic pseudo-spectral solver that measures the mixed space-time norms
the exponent algebra classifies.
"""

__version__ = "0.1.0"

from .extrational import INF, ExtRational, Q

__all__ = ["ExtRational", "INF", "Q", "__version__"]
