"""Cartan decompositions g = h1 * lambda(t) * h2 over F_p(t) for GL_n, SL_n and Sp_2n."""

from .coeff import FpElem, Poly, RationalFn, TruncatedSeries, expand, series_inverse, valuation
from .descent import (
    ParabolicData,
    approximate_decomposition,
    big_cell_lift,
    bruhat_residue,
    descend,
    descend_decomposition,
    truncate_unipotent,
)
from .errors import (
    BudgetExceeded,
    DecompositionError,
    DescentError,
    FormViolation,
    PairingError,
    ParseError,
    PrecisionError,
)
from .harness import coset_census, verify
from .matrices import (
    CartanDecomposition,
    Cocharacter,
    GroupTag,
    MatFp,
    MatK,
    MatKhat,
    Ring,
    det,
    dominant_normalize,
    is_member,
    realize,
)
from .parsing import parse_coeff, parse_matrix, render_coeff, render_matrix
from .snf import divisor_invariant, double_coset_equal, normalize_torus_element, snf_decompose
from .symplectic import sp_decompose, sp_divisor_check

__all__ = [
    "BudgetExceeded",
    "CartanDecomposition",
    "Cocharacter",
    "DecompositionError",
    "DescentError",
    "FormViolation",
    "FpElem",
    "GroupTag",
    "MatFp",
    "MatK",
    "MatKhat",
    "PairingError",
    "ParabolicData",
    "ParseError",
    "Poly",
    "PrecisionError",
    "RationalFn",
    "Ring",
    "TruncatedSeries",
    "approximate_decomposition",
    "big_cell_lift",
    "bruhat_residue",
    "coset_census",
    "descend",
    "descend_decomposition",
    "det",
    "divisor_invariant",
    "dominant_normalize",
    "double_coset_equal",
    "expand",
    "is_member",
    "normalize_torus_element",
    "parse_coeff",
    "parse_matrix",
    "realize",
    "render_coeff",
    "render_matrix",
    "series_inverse",
    "snf_decompose",
    "sp_decompose",
    "sp_divisor_check",
    "truncate_unipotent",
    "valuation",
    "verify",
]

__version__ = "0.1.0"
