"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""


class WeakGeomError(ValueError):
    code = "invalid_input"


class ZeroVector(WeakGeomError):
    code = "zero_vector"


class NotHermitian(WeakGeomError):
    code = "not_hermitian"


class NotTraceZero(WeakGeomError):
    code = "not_trace_zero"


class DimensionMismatch(WeakGeomError):
    code = "dimension_mismatch"


class DegenerateEnsemble(WeakGeomError):
    code = "degenerate_ensemble"


class NotMUBTriple(WeakGeomError):
    code = "not_mub_triple"


class NotDensityOperator(WeakGeomError):
    code = "not_density_operator"


class DegenerateGeneralizedEnsemble(WeakGeomError):
    code = "degenerate_generalized_ensemble"


class EigenbasisContainsPost(WeakGeomError):
    code = "eigenbasis_contains_post"


class InvalidParameter(WeakGeomError):
    code = "invalid_parameter"


class InsensitiveObservable(WeakGeomError):
    code = "insensitive_observable"


class NotInR(WeakGeomError):
    code = "not_in_r"


class EmptyRange(WeakGeomError):
    code = "empty_range"
