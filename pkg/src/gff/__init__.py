"""Finite-dimensional g-fusion frames and their tensor products."""
__version__ = "0.1.0"

from gff._backend import BACKEND
from gff.errors import (
    BadParams,
    DimensionMismatch,
    EmptySpan,
    GFFError,
    LocalSpaceMismatch,
    NonPositiveWeight,
    NotAFrame,
    NotHermitian,
    ParseError,
    SizeLimit,
)
from gff.gfusion import (
    CoefficientFamily,
    FrameBounds,
    GFusionComponent,
    GFusionSystem,
    analysis,
    canonical_dual,
    frame_operator,
    optimal_bounds,
    pair_frame_operator,
    reconstruct,
    synthesis,
    verify_system,
)
from gff.io import load_system, random_system, save_system
from gff.linalg import (
    Tolerance,
    hermitian_eig_extremes,
    kron,
    operator_norm_2,
    orthonormalize,
)
from gff.subspace import ClosedSubspace, image_under, projection, projection_swap_residual
from gff.tensor import (
    TensorSystem,
    TensorVerificationReport,
    tensor_operator,
    tensor_system,
    tensor_vector,
    verify_tensor_identities,
)
