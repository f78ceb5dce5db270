"""Concave composition counting functions ce, co1, co1', co2: exact and
modular coefficient tables, brute-force enumeration, congruence checks and
residue-class histograms."""

from ._backend import available_backends, backend_name, set_backend, use_backend
from .family import CompositionFamily
from .series import (
    CoefficientRing,
    TruncatedSeries,
    series_add,
    series_divide_sparse,
    series_from_sparse,
    series_mul,
    series_mul_sparse,
    series_neg,
    series_reduce_mod,
)
from .theta import (
    SparseSupport,
    WindowClassification,
    classify_window,
    family_numerator,
    is_triangular,
    pentagonal_denominator,
    representable_sieve,
    triangular_theta,
)

__version__ = "0.1.0"
