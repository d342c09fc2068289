"""Exact linear and exterior algebra over prime fields, symplectic
operator triples, isotropic catalogs, extraspecial groups, and the
graded kernel sandwich they bound.

Everything is computed over F_p with integer arithmetic; no floats, no
randomness outside explicitly seeded checks.
"""

from .errors import (
    CatalogTooLargeError,
    DecompositionDefectError,
    DimensionMismatchError,
    FieldMismatchError,
    HomogeneityError,
    InfkerError,
    InvariantError,
    NotPrimeError,
    ParseError,
    PrimitivityError,
)
from .exterior import (
    Multivector,
    VariableOrder,
    compound_matrix,
    mono_rank,
    mono_unrank,
    monomials,
    parse,
    pullback_matrix,
    pure_wedge_coords,
    wedge_coords,
    wedge_monomials,
)
from .extraspecial import (
    ExtraspecialGroup,
    GroupElement,
    abelian_preimage_check,
    center,
    centralizer_image,
    commutator,
    group_type,
    make_group,
)
from .inflation import (
    CertificateRecord,
    CertificateReport,
    KernelSandwich,
    certificate,
    counterexample,
    ideal_component,
    quotient_basis,
    reduce_mod_ideal,
    sandwich,
    theorem1_verify,
    vanishing_space,
    verify_certificate_record,
)
from .isotropic import (
    CATALOG_LIMIT,
    IsotropicCatalog,
    RadicalSplit,
    annihilator,
    count_isotropic,
    enumerate_isotropic,
    iter_isotropic,
    perp,
    radical_split,
)
from .prime_linalg import (
    Fp,
    Matrix,
    Subspace,
    check_prime,
    count_subspaces,
    image_basis,
    inv_mod,
    is_prime,
    iter_subspaces,
    kernel_basis,
    rank,
    rref,
    solve,
    sum_and_intersection,
)
from .symplectic import (
    SIGMA,
    LadderSequence,
    Sl2Report,
    SymplecticSpace,
    calibrate_sigma,
    decompose,
    dim_wedge,
    gamma,
    gamma_dual,
    h_op,
    injectivity_surjectivity_probe,
    isotropic_span_basis,
    ladder,
    premet_suprunenko,
    primitive_basis,
    sl2_check,
    submodule_closure,
    transvection,
    x_minus,
    x_plus,
)
from .verify import run_all

__version__ = "1.0.0"

__all__ = [
    "CATALOG_LIMIT",
    "CatalogTooLargeError",
    "CertificateRecord",
    "CertificateReport",
    "DecompositionDefectError",
    "DimensionMismatchError",
    "ExtraspecialGroup",
    "FieldMismatchError",
    "Fp",
    "GroupElement",
    "HomogeneityError",
    "InfkerError",
    "InvariantError",
    "IsotropicCatalog",
    "KernelSandwich",
    "LadderSequence",
    "Matrix",
    "Multivector",
    "NotPrimeError",
    "ParseError",
    "PrimitivityError",
    "RadicalSplit",
    "SIGMA",
    "Sl2Report",
    "Subspace",
    "SymplecticSpace",
    "VariableOrder",
    "abelian_preimage_check",
    "annihilator",
    "calibrate_sigma",
    "center",
    "centralizer_image",
    "certificate",
    "check_prime",
    "commutator",
    "compound_matrix",
    "count_isotropic",
    "count_subspaces",
    "counterexample",
    "decompose",
    "dim_wedge",
    "enumerate_isotropic",
    "gamma",
    "gamma_dual",
    "group_type",
    "h_op",
    "ideal_component",
    "image_basis",
    "injectivity_surjectivity_probe",
    "inv_mod",
    "is_prime",
    "isotropic_span_basis",
    "iter_isotropic",
    "iter_subspaces",
    "kernel_basis",
    "ladder",
    "make_group",
    "mono_rank",
    "mono_unrank",
    "monomials",
    "parse",
    "perp",
    "premet_suprunenko",
    "primitive_basis",
    "pullback_matrix",
    "pure_wedge_coords",
    "quotient_basis",
    "radical_split",
    "rank",
    "reduce_mod_ideal",
    "rref",
    "run_all",
    "sandwich",
    "sl2_check",
    "solve",
    "submodule_closure",
    "sum_and_intersection",
    "theorem1_verify",
    "transvection",
    "vanishing_space",
    "verify_certificate_record",
    "wedge_coords",
    "wedge_monomials",
    "x_minus",
    "x_plus",
]
