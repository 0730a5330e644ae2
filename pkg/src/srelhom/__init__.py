"""Exact workbench for S-relative homological algebra.

Finite commutative F_p-algebras, their modules, Ext, S-relative
projective/injective dimensions and global dimension, plus an integer
backend over Z and Z/m and a registry of machine-checked statements.
"""

from .rings import (
    FiniteAlgebra,
    RingElement,
    MultSet,
    Ideal,
    IdealList,
    build_algebra,
    prime_field,
    truncated_polynomial,
    direct_product,
    mult_closure,
    enumerate_ideals,
    complement_multset,
    quotient_algebra,
    ring_from_spec,
    ring_to_spec,
    multset_from_spec,
    multset_to_spec,
)
from .modules import (
    Module,
    ModuleMap,
    free_module,
    regular_module,
    zero_module,
    direct_sum,
    hom_space,
    subquotient,
    submodule_from_columns,
    quotient_by_columns,
    find_module_isomorphism,
    module_from_spec,
    module_to_spec,
    map_from_spec,
    map_to_spec,
    character_dual,
    dual_map,
    is_uniformly_s_torsion,
    s_exactness_check,
    is_s_isomorphism,
    s_iso_inverse,
)
from .homology import (
    Resolution,
    AssembledResolution,
    resolution,
    free_resolution,
    ExtResult,
    ext,
    ext_with_resolution,
    long_ext_sequence,
    injective_cocover,
    comparison_isomorphisms,
)
from .zmodules import (
    ChangeOfRingsReport,
    FactorRingReport,
    ZDimResult,
    ZMod,
    ZMultSet,
    ZSplitWitness,
    ZTorsionWitness,
    change_of_rings_check,
    factor_ring_check,
    z_cyclic,
    z_direct_sum,
    z_ext,
    z_free,
    z_module,
    z_module_from_factors,
    z_module_from_spec,
    z_module_to_spec,
    z_multset,
    z_multset_from_spec,
    z_multset_to_spec,
    z_s_pd,
    z_uniform_torsion,
    random_z_module,
)
from .dimensions import (
    DEFAULT_BOUND,
    DimValue,
    dim_max,
    dim_add,
    SplitWitness,
    DimResult,
    GlobalDimReport,
    SemisimpleReport,
    LocalProfile,
    InequalityReport,
    ShiftReport,
    is_s_projective,
    is_s_injective,
    s_pd,
    s_id,
    s_gldim,
    is_s_semisimple,
    local_profile,
    check_inequalities,
    dimension_shift_check,
)
from .checks import (
    REGISTRY,
    TheoremCase,
    TrialOutcome,
    VerifyReport,
    verify,
    replay,
    full_suite,
    generate_instance,
)

__version__ = "0.1.0"
