"""Verification toolkit for isometry bounds on positively curved 4-manifolds."""

from .claims import ClassificationQuery, StatementRecord, classify
from .cohomology import (
    build_central_extension,
    classify_central_extensions,
    cocycle_representatives,
    cohomology_record,
    second_cohomology,
    verify_extension_isomorphism,
)
from .embeddings import (
    MatrixRep,
    build_recipe_rep,
    embed_into_so5,
    is_faithful_rep,
    polyhedral_so3,
    pu3_metacyclic,
    quat_pair_to_so4,
)
from .errors import (
    BudgetError,
    InvalidInputError,
    InvalidParametersError,
    UnsupportedCaseError,
)
from .fixedpoints import (
    FixedSetDescriptor,
    LinearSphereAction,
    batch_lefschetz_cp2,
    batch_lefschetz_s4,
    fixed_set_cp2,
    fixed_set_s4,
    involution_catalog,
    lefschetz_check_cp2,
    lefschetz_check_s4,
)
from .groups import (
    FiniteGroup,
    GroupKind,
    build_metacyclic,
    build_standard,
    find_isomorphism,
    is_isomorphic,
    matches_family,
    max_cyclic_normal_index,
    order_gl,
)
from .sphere import (
    ExtentConfig,
    ExtentReport,
    LensParams,
    SpherePoint,
    canonicalize_lens,
    extent_lower_bound,
    extent_upper_bound,
    isolated_fixed_point_budget,
    lens_distance,
    scan_extent,
    scan_extent_threshold,
)
from .verify import CheckRecord, VerifyConfig, exit_code, verify_all

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CheckRecord",
    "ClassificationQuery",
    "ExtentConfig",
    "ExtentReport",
    "FiniteGroup",
    "FixedSetDescriptor",
    "GroupKind",
    "InvalidInputError",
    "InvalidParametersError",
    "LensParams",
    "LinearSphereAction",
    "MatrixRep",
    "SpherePoint",
    "StatementRecord",
    "UnsupportedCaseError",
    "VerifyConfig",
    "__version__",
    "batch_lefschetz_cp2",
    "batch_lefschetz_s4",
    "build_central_extension",
    "build_metacyclic",
    "build_recipe_rep",
    "build_standard",
    "canonicalize_lens",
    "classify",
    "classify_central_extensions",
    "cocycle_representatives",
    "cohomology_record",
    "embed_into_so5",
    "exit_code",
    "extent_lower_bound",
    "extent_upper_bound",
    "find_isomorphism",
    "fixed_set_cp2",
    "fixed_set_s4",
    "involution_catalog",
    "is_faithful_rep",
    "is_isomorphic",
    "isolated_fixed_point_budget",
    "lefschetz_check_cp2",
    "lefschetz_check_s4",
    "lens_distance",
    "matches_family",
    "max_cyclic_normal_index",
    "order_gl",
    "polyhedral_so3",
    "pu3_metacyclic",
    "quat_pair_to_so4",
    "scan_extent",
    "scan_extent_threshold",
    "second_cohomology",
    "verify_all",
    "verify_extension_isomorphism",
]
