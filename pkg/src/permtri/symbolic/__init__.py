"""GF(2) polynomial engine and the scripted eliminations built on it."""

from .derivations import (
    CHAINS, GAMMA, DerivationReport, curve_polynomial, derive_curve, verify_case_chains,
    verify_curve, verify_two_conics_obstruction,
)
from .poly import (
    VARS, MultiPoly, coefficients2, det_bareiss, det_cofactor, divexact, reduce_i, resultant,
    substitute, sylvester_matrix,
)

__all__ = [
    "CHAINS", "GAMMA", "DerivationReport", "curve_polynomial", "derive_curve",
    "verify_case_chains", "verify_curve", "verify_two_conics_obstruction",
    "VARS", "MultiPoly", "coefficients2", "det_bareiss", "det_cofactor", "divexact",
    "reduce_i", "resultant", "substitute", "sylvester_matrix",
]
