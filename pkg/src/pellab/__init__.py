"""pellab: exact P-fraction expansions, periodic generalized Jacobi
matrices, their spectra and m-functions, and the polynomial Pell system
deciding which functions (sqrt(R) - U)/V arise as periodic m-functions."""

from .exactpoly import (
    Poly,
    Rat,
    ScaledMatrixPoly,
    ScaledPoly,
    SeriesAtInfinity,
    normal_indices,
    poly_divmod,
    sqrt_series,
    squarefree_split,
)
from .jacobi import DenseKreinPair, PeriodData, companion, resolvent_m, symmetrizator, truncate
from .monodromy import (
    AdmissibilityReport,
    AlgebraicForm,
    PellCertificate,
    algebraic_form,
    check_admissible,
    monodromy,
    reconstruct,
)
from .pell import (
    RealizeReport,
    SurdState,
    pell_fundamental,
    pell_power,
    realize,
    surd_cf,
    verify_certificate,
)
from .pfrac import (
    PFraction,
    PStep,
    RationalTail,
    RecurrencePair,
    SeriesTail,
    SurdTail,
    expand,
    product,
    recurrence,
    step,
    to_series,
    transfer_matrix,
)
from .spectral import Discriminant, Spectrum, bands, discriminant, m_eval

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "Rat",
    "ScaledMatrixPoly",
    "ScaledPoly",
    "SeriesAtInfinity",
    "normal_indices",
    "poly_divmod",
    "sqrt_series",
    "squarefree_split",
    "DenseKreinPair",
    "PeriodData",
    "companion",
    "resolvent_m",
    "symmetrizator",
    "truncate",
    "AdmissibilityReport",
    "AlgebraicForm",
    "PellCertificate",
    "algebraic_form",
    "check_admissible",
    "monodromy",
    "reconstruct",
    "RealizeReport",
    "SurdState",
    "pell_fundamental",
    "pell_power",
    "realize",
    "surd_cf",
    "verify_certificate",
    "PFraction",
    "PStep",
    "RationalTail",
    "RecurrencePair",
    "SeriesTail",
    "SurdTail",
    "expand",
    "product",
    "recurrence",
    "step",
    "to_series",
    "transfer_matrix",
    "Discriminant",
    "Spectrum",
    "bands",
    "discriminant",
    "m_eval",
]
