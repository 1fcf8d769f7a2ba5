"""
Exact-arithmetic workbench for Iwahori-Hecke algebras of finite and
affine Coxeter systems with general weight functions: Kazhdan-Lusztig
bases, structure constants, the a-function, the asymptotic ring J, and
conjugacy-class trace positivity. Library plus the ``hx`` batch CLI.
"""

from .coxeter import (ConjugacyClass, CoxeterSystem, Element, GatingError,
                      InfiniteGroupError, InternalCheckError, build_system)
from .hecke import (HeckeAlgebra, HeckeElement, UnequalParametersError,
                    WeightFunction, weight_catalog)
from .klbasis import (AFunction, JRing, KLBasis, a_function,
                      j_associativity_check, j_find_unit, j_table)
from .laurent import LaurentPoly, NEG_INF, ONE, V, ZERO, in_cone
from .positivity import TraceReport, class_report, classify_positive, n_trace

__version__ = "0.1.0"

__all__ = [
    "build_system", "CoxeterSystem", "Element", "ConjugacyClass",
    "GatingError", "InfiniteGroupError", "InternalCheckError",
    "LaurentPoly", "ZERO", "ONE", "V", "NEG_INF", "in_cone",
    "WeightFunction", "weight_catalog", "HeckeAlgebra", "HeckeElement",
    "UnequalParametersError",
    "KLBasis", "AFunction", "a_function", "JRing", "j_table",
    "j_associativity_check", "j_find_unit",
    "n_trace", "class_report", "classify_positive", "TraceReport",
    "__version__",
]
