"""Bivariate tail dependence measures.

Copula sampling, tail dependence functions (tail copulas), mu-tail dependence
measures and the maximal-type coefficients, plus the nonparametric estimation
pipeline (pseudo-observations, empirical TDF, plateau threshold selection,
bootstrap intervals).
"""

from ._taildep import *  # noqa: F401,F403
from ._taildep import __doc__ as _doc

__doc__ = _doc
