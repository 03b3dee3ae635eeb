"""Exact computations in the Yangian of gl_n, twisted Yangians and enveloping algebras.

Everything is exact rational arithmetic.  The main entry points:

* :class:`Yangian` and :class:`EnvAlgebra` for PBW normal forms,
* :class:`Series` / :class:`SeriesMatrix` for generator matrices ``T(u)``,
* :mod:`yangian.qdet`, :mod:`yangian.twisted` and :mod:`yangian.casimir` for
  determinants, Sklyanin determinants and central elements,
* :func:`run_suite` for the packaged verification suites.
"""

__version__ = "0.1.0"

from .algebra import Element, HomMap, PBWAlgebra, TensorAlgebra, commutator
from .lie import (
    EnvAlgebra,
    LieSpec,
    make_g,
    make_gl,
    make_o_skew,
    signed_indices,
    theta,
)
from .scalars import Poly, var
from .series import PrecisionError, Series, SeriesMatrix, quasideterminant
from .suites import SUITES, run_suite
from .yangian import Yangian, relation_oracle

__all__ = [
    "SUITES",
    "Element",
    "EnvAlgebra",
    "HomMap",
    "LieSpec",
    "PBWAlgebra",
    "Poly",
    "PrecisionError",
    "Series",
    "SeriesMatrix",
    "TensorAlgebra",
    "Yangian",
    "commutator",
    "make_g",
    "make_gl",
    "make_o_skew",
    "quasideterminant",
    "relation_oracle",
    "run_suite",
    "signed_indices",
    "theta",
    "var",
]
