"""Sumset sizes over finite integer sets: exact computation, sharp lower
bounds, structure detection on equality cases, and exhaustive verification.
"""

from .bounds import (
    BoundFormula,
    BoundOutcome,
    BoundReport,
    bound_h_fold,
    bound_h_fold_restricted,
    bound_union,
    bound_union_restricted,
    catalog_bound,
    evaluate,
    extremal_example,
)
from .engine import (
    SumBitmap,
    SumsetKind,
    h_fold,
    h_fold_restricted,
    naive_h_fold,
    union_sumset,
)
from .errors import (
    ArityError,
    HypothesisError,
    IntegerOverflowError,
    InternalInconsistencyError,
    InvalidRangeError,
    OracleRefusedError,
    ParseError,
    SpaceTooLargeError,
    SumsetError,
    UnsupportedClassError,
)
from .intset import (
    HSet,
    IntSet,
    SetClass,
    classify,
    dilate,
    extrema,
    format_set,
    make_interval,
    parse_hset,
    parse_intset,
    translate,
)
from .structure import (
    APDescriptor,
    BlockDecomposition,
    InverseVerdict,
    StructureFacts,
    ap_descriptor,
    check_inverse,
    h_shifted_interval,
    is_dilated_interval,
    witness_blocks,
)
from .verifier import (
    SearchSpace,
    VerificationReport,
    ZeroMode,
    enumerate_pairs,
    find_extremal,
    verify,
)

__all__ = [
    "APDescriptor",
    "ArityError",
    "BlockDecomposition",
    "BoundFormula",
    "BoundOutcome",
    "BoundReport",
    "HSet",
    "HypothesisError",
    "IntSet",
    "IntegerOverflowError",
    "InternalInconsistencyError",
    "InvalidRangeError",
    "InverseVerdict",
    "OracleRefusedError",
    "ParseError",
    "SearchSpace",
    "SetClass",
    "SpaceTooLargeError",
    "StructureFacts",
    "SumBitmap",
    "SumsetError",
    "SumsetKind",
    "UnsupportedClassError",
    "VerificationReport",
    "ZeroMode",
    "ap_descriptor",
    "bound_h_fold",
    "bound_h_fold_restricted",
    "bound_union",
    "bound_union_restricted",
    "catalog_bound",
    "check_inverse",
    "classify",
    "dilate",
    "enumerate_pairs",
    "evaluate",
    "extrema",
    "extremal_example",
    "find_extremal",
    "format_set",
    "h_fold",
    "h_fold_restricted",
    "h_shifted_interval",
    "is_dilated_interval",
    "make_interval",
    "naive_h_fold",
    "parse_hset",
    "parse_intset",
    "translate",
    "union_sumset",
    "verify",
    "witness_blocks",
]

__version__ = "0.1.0"
