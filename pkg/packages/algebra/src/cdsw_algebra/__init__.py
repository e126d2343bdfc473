"""cdsw algebra - exact computations for the cdsw toolkit.

This library provides:
- Root systems and Chevalley-basis Lie algebras
- The bigraded exterior algebra R and its quotients A, B and the Kostant quotient
- The affine Weyl group on alcoves and the abelian ideals of a Borel subalgebra
- Defining representations, trace invariants and loop-algebra cocycles
"""

from .abelian import (
    AbelianIdeal,
    XiBounds,
    dimension_series,
    enumerate_abelian_ideals,
    xi_o_and_bounds,
    zeta,
    zeta_map,
)
from .affweyl import (
    AffineWeight,
    AffWeylElt,
    alcove_position,
    check_alcove_geometry,
    check_d_degree_vanishing,
    check_rho_identities,
    d_degree,
    enumerate_aff2,
    from_word,
    inversion_set,
    length_series,
    rho_hat,
    weight_action,
)
from .cartan import RootSystem, build_root_system, cartan_matrix, validate_type
from .chevalley import LieAlgebra, chevalley_lie_algebra
from .defining import DefiningRepresentation, NormalizedForm, TracePower, invariant_form
from .exterior import ExtElement, ExteriorAlgebra
from .loopcocycle import LoopCocycle, LoopElement, OneForm, cocycle_check, loop, phi_P, residue
from .quotient import (
    QuotientAlgebra,
    graded_invariant_series,
    kostant_quotient_check,
    verify_part_i,
)

__version__ = "0.1.0"

__all__ = [
    # Root data
    "RootSystem",
    "build_root_system",
    "cartan_matrix",
    "validate_type",
    "LieAlgebra",
    "chevalley_lie_algebra",
    # Exterior algebra and quotients
    "ExtElement",
    "ExteriorAlgebra",
    "QuotientAlgebra",
    "verify_part_i",
    "graded_invariant_series",
    "kostant_quotient_check",
    # Affine Weyl group
    "AffWeylElt",
    "AffineWeight",
    "enumerate_aff2",
    "from_word",
    "alcove_position",
    "inversion_set",
    "weight_action",
    "rho_hat",
    "d_degree",
    "length_series",
    "check_rho_identities",
    "check_d_degree_vanishing",
    "check_alcove_geometry",
    # Abelian ideals
    "AbelianIdeal",
    "XiBounds",
    "enumerate_abelian_ideals",
    "dimension_series",
    "zeta",
    "zeta_map",
    "xi_o_and_bounds",
    # Invariants and cocycles
    "DefiningRepresentation",
    "NormalizedForm",
    "TracePower",
    "invariant_form",
    "LoopElement",
    "OneForm",
    "LoopCocycle",
    "loop",
    "residue",
    "phi_P",
    "cocycle_check",
]
