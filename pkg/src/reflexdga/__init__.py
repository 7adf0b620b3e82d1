"""Exact computations with finite-dimensional DG algebras.

Hochschild (co)homology from the normalized bar construction, radicals and
semisimple quotients, Koszul duals, derived tensor products, a reflexivity
report, and a harness for reflexive and dualizable objects in small closed
symmetric monoidal categories.  All arithmetic is exact over Q or F_p.
"""

__version__ = "0.1.0"

from .errors import (InvariantViolation, NotAComplexError, ParseError, PreconditionError, ReflexError,
                     WindowError)
from .linalg import (QQ, FieldSpec, HomologyBasis, SparseMatrix, homology_at, homology_basis, image_basis,
                     kernel_basis, rank, solve)
from .algebra import (DGAlgebra, DGModule, IdealDescription, center, cohomology_dims, cone, cone_of_identity,
                      direct_product, free_module, j_plus, matrix_algebra_inflation, quotient_module, radical,
                      semisimple_module, semisimple_quotient, separability_check, validate_dga, validate_module)
from .complexes import BigradedComplex, SafeWindow, TruncationPolicy
from .bar import Coefficients, chain_window, cochain_complex, cyclic_chains, two_sided_bar
from .resolutions import (Resolution, bar_resolution, bimodule_bar_resolution,
                          shift_totalization_resolution)
from .hochschild import CupTable, HHTable, cup_product, hh_cohomology, hh_homology
from .koszul import (ExtAlgebra, ProbeResult, ReflexivityReport, TorResult, TruncatedPresentation,
                     derived_tensor_k_k, hh_comparison_with_dual, koszul_dual, perfectness_probe,
                     poly_t_truncated, polynomial_hh, reflexivity_report)
from . import examples, monoidal
from .io import parse_algebra, parse_document, serialize_algebra, serialize_module
from .catalogue import catalogue

__all__ = [n for n in dir() if not n.startswith("_")]
