"""Cluster algebras of infinity-gons: triangulations, mutations, snake graphs,
Laurent expansions and a hyperbolic oracle."""
from .surface import (Acc, Accumulating, Arc, BoundaryArc, Finite, Pt, Side, Surface,
                      make_infinity_gon, make_polygon, one_sided, two_sided)
from .triangulation import Triangulation, validate
from .laurent import LaurentPolynomial, Monomial, expand, ptolemy_check, skein_check

__version__ = "0.1.0"
