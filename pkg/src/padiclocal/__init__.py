"""Exact local arithmetic for toric period integrals.

The package computes, over a residue field of size q, the local integrals
pairing a torus embedding against new vectors of a special (twisted
Steinberg) representation: closed rational forms in q^(-s) with their
analytic continuation, the interpolation factors whose vanishing signals an
exceptional zero, group cocycles valued in additive characters of the
multiplicative group, finite-level measure algebras for the derivative
classes, and the lattice pairings giving rank-one and rank-two slope
invariants.  Everything is exact: Fractions, integer residues, and rational
function arithmetic, with floating point used only for display.
"""

from .padic_core import PrimeLocalField, absolute_value, residue_mod, valuation
from .rational_forms import LocalRationalFunction, PoleError, geometric_tail
from .torus_local import (
    LocalTorusCase,
    TorusCharacter,
    characters,
    characters_of_exact_conductor,
    shell_character_integral,
    shell_volume,
    trivial_character,
    unit_characters,
)
from .local_integrals import (
    SteinbergDatum,
    SymbolicValue,
    euler_factor,
    height_kernel,
    height_total,
    is_exceptional,
    l_factor,
    new_vector_inner_product,
    new_vector_inner_product_from_shells,
    steinberg_height_constant,
    toric_integral_oracle,
    toric_integral_proof_form,
    toric_integral_statement,
)
from .principal_series import (
    PrincipalSeriesVector,
    chart_route_integral,
    comparison_constant,
    hecke_operator,
    series_from_torus,
    spherical_vector,
    torus_route_integral,
)
from .steinberg_cocycles import (
    LocalHomomorphism,
    check_coboundary,
    check_cocycle_identity,
    cocycle_z,
    compact_support_decomposition,
    ord_homomorphism,
)
from .iwasawa_algebra import (
    CompatibleFamily,
    FiniteLevelGroup,
    GroupAlgebraElement,
    augmentation_quotient_order,
    convolve,
    phi_map,
    psi_class,
)
from .interpolation_engine import (
    LInvariantVector,
    PlaceData,
    TateLatticePairing,
    c_pi_steinberg,
    c_v_constant,
    derivative_class,
    derivative_measure,
    euler_factor_C,
    geometric_L_invariant,
    interpolation_value,
)
from .discrete_series_check import (
    TruncatedGOModule,
    solve_omega_structures,
    verify_extension_structure,
    verify_ladder_relations,
    verify_omega_structure,
    verify_rotation_exchange,
)

__version__ = "0.1.0"

__all__ = [
    "PrimeLocalField",
    "absolute_value",
    "residue_mod",
    "valuation",
    "LocalRationalFunction",
    "PoleError",
    "geometric_tail",
    "LocalTorusCase",
    "TorusCharacter",
    "characters",
    "characters_of_exact_conductor",
    "shell_character_integral",
    "shell_volume",
    "trivial_character",
    "unit_characters",
    "SteinbergDatum",
    "SymbolicValue",
    "euler_factor",
    "height_kernel",
    "height_total",
    "is_exceptional",
    "l_factor",
    "new_vector_inner_product",
    "new_vector_inner_product_from_shells",
    "steinberg_height_constant",
    "toric_integral_oracle",
    "toric_integral_proof_form",
    "toric_integral_statement",
    "PrincipalSeriesVector",
    "chart_route_integral",
    "comparison_constant",
    "hecke_operator",
    "series_from_torus",
    "spherical_vector",
    "torus_route_integral",
    "LocalHomomorphism",
    "check_coboundary",
    "check_cocycle_identity",
    "cocycle_z",
    "compact_support_decomposition",
    "ord_homomorphism",
    "CompatibleFamily",
    "FiniteLevelGroup",
    "GroupAlgebraElement",
    "augmentation_quotient_order",
    "convolve",
    "phi_map",
    "psi_class",
    "LInvariantVector",
    "PlaceData",
    "TateLatticePairing",
    "c_pi_steinberg",
    "c_v_constant",
    "derivative_class",
    "derivative_measure",
    "euler_factor_C",
    "geometric_L_invariant",
    "interpolation_value",
    "TruncatedGOModule",
    "solve_omega_structures",
    "verify_extension_structure",
    "verify_ladder_relations",
    "verify_omega_structure",
    "verify_rotation_exchange",
]
