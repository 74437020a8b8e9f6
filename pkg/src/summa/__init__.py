"""Exact residue obstructions for summability of special functions.

The package decides, with exact arithmetic and explicit certificates,
whether a function presented by finite pole data can be written as a
difference tau(g) - g, in three settings: elliptic (shift by a lattice
point of infinite order), rational with the unit shift, and rational
with a q-dilation.  Supporting machinery covers logarithmic derivatives
of divisor data, dependence testing through residue matrices, and a
fully symbolic ledger for reductions over unknowable constants.
"""

from .errors import (
    AnchorMove,
    DegreeViolation,
    EllipticityViolation,
    NotAdmissible,
    PreconditionError,
    SchemaError,
    SummaError,
    UnsplitDenominator,
)
from .scalars import Rat, SymScalar, sym_product
from .torus import HAT, OrbitPoint, shift_point
from .zexp import ZetaExpansion
from .reduce import (
    ReductionReport,
    RepinDelta,
    almost_summable,
    is_summable,
    oracle_certificate,
    oracle_summable,
    reduce,
    repin,
)
from .ratres import (
    RatPF,
    dres,
    pfd,
    q_certificate,
    q_log,
    q_orbit_table,
    q_summable,
    qres,
    qres_inf,
    shift_certificate,
    shift_orbit_table,
    shift_summable,
    tau_q,
    tau_shift,
)
from .logdiff import (
    DivisorData,
    ResidueMatrix,
    diffdep,
    logderiv,
    order_reduction_check,
    residue_matrix,
)
from .algledger import (
    FHAT,
    LedgerReport,
    ResidueTable,
    check_admissible,
    d_symbol,
    ledger_reduce,
    phi_symbol,
    psi_symbol,
)

__version__ = "0.1.0"

__all__ = [
    # scalars and points
    "Rat",
    "SymScalar",
    "sym_product",
    "HAT",
    "OrbitPoint",
    "shift_point",
    # elliptic tables
    "ZetaExpansion",
    "ReductionReport",
    "RepinDelta",
    "reduce",
    "is_summable",
    "almost_summable",
    "oracle_certificate",
    "oracle_summable",
    "repin",
    # rational settings
    "RatPF",
    "pfd",
    "dres",
    "qres",
    "qres_inf",
    "q_log",
    "shift_orbit_table",
    "shift_summable",
    "shift_certificate",
    "q_orbit_table",
    "q_summable",
    "q_certificate",
    "tau_shift",
    "tau_q",
    # divisors
    "DivisorData",
    "ResidueMatrix",
    "diffdep",
    "logderiv",
    "order_reduction_check",
    "residue_matrix",
    # ledger
    "FHAT",
    "LedgerReport",
    "ResidueTable",
    "check_admissible",
    "d_symbol",
    "ledger_reduce",
    "phi_symbol",
    "psi_symbol",
    # errors
    "SummaError",
    "SchemaError",
    "PreconditionError",
    "EllipticityViolation",
    "DegreeViolation",
    "NotAdmissible",
    "AnchorMove",
    "UnsplitDenominator",
]
