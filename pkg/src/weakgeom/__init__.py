"""Geometry of qubit weak values: decomposition, extremal observables, noise inversion."""

from .errors import (
    DegenerateEnsemble,
    DegenerateGeneralizedEnsemble,
    DimensionMismatch,
    EigenbasisContainsPost,
    EmptyRange,
    InsensitiveObservable,
    InvalidParameter,
    NotDensityOperator,
    NotHermitian,
    NotInR,
    NotMUBTriple,
    NotTraceZero,
    WeakGeomError,
    ZeroVector,
)
from .extremal import (
    ExtremalReport,
    extremal_imag_projectors,
    extremal_real_projectors,
    real_bound,
    sweep_projectors,
)
from .hermitian import (
    HermitianOp,
    Ket,
    SPoint,
    decompose_in_mub_basis,
    distance,
    is_mutually_unbiased,
    ket_from_bloch,
    make_ket,
    mub_partner,
    orthogonal_complement,
    projector,
    scalar_product,
    state_image,
)
from .noise import (
    ChannelKind,
    Component,
    NoiseChannel,
    NoiseEstimate,
    apply_channel,
    expected_noisy_weak,
    infer_p,
    optimal_noise_probe,
)
from .qunit import (
    QunitFrame,
    ScanReport,
    build_frame,
    conjecture_scan,
    frame_from_bases,
    proposition_check,
)
from .weak import (
    DensityOp,
    KLine,
    PPSEnsemble,
    PPSPlane,
    WeakDecomposition,
    decompose_weak,
    generalized_weak_value,
    is_in_pps_plane,
    k_line,
    make_ensemble,
    mixture_decomposition,
    pps_plane,
    weak_value,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelKind",
    "Component",
    "DegenerateEnsemble",
    "DegenerateGeneralizedEnsemble",
    "DensityOp",
    "DimensionMismatch",
    "EigenbasisContainsPost",
    "EmptyRange",
    "ExtremalReport",
    "HermitianOp",
    "InsensitiveObservable",
    "InvalidParameter",
    "KLine",
    "Ket",
    "NoiseChannel",
    "NoiseEstimate",
    "NotDensityOperator",
    "NotHermitian",
    "NotInR",
    "NotMUBTriple",
    "NotTraceZero",
    "PPSEnsemble",
    "PPSPlane",
    "QunitFrame",
    "SPoint",
    "ScanReport",
    "WeakDecomposition",
    "WeakGeomError",
    "ZeroVector",
    "apply_channel",
    "build_frame",
    "conjecture_scan",
    "decompose_in_mub_basis",
    "decompose_weak",
    "distance",
    "expected_noisy_weak",
    "extremal_imag_projectors",
    "extremal_real_projectors",
    "frame_from_bases",
    "generalized_weak_value",
    "infer_p",
    "is_in_pps_plane",
    "is_mutually_unbiased",
    "k_line",
    "ket_from_bloch",
    "make_ensemble",
    "make_ket",
    "mixture_decomposition",
    "mub_partner",
    "optimal_noise_probe",
    "orthogonal_complement",
    "pps_plane",
    "projector",
    "proposition_check",
    "real_bound",
    "scalar_product",
    "state_image",
    "sweep_projectors",
    "weak_value",
]
