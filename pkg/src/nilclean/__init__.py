"""Constructive nil-clean decompositions A = E + N (E idempotent, N nilpotent).

Rings covered: square matrices over GF(2), over Z/2^k, over finite Boolean
rings F_2^m, and endomorphism rings of finite abelian 2-groups.  Every
decomposition returns a certificate that is re-verified before it is handed
back; brute-force oracles for tiny sizes provide independent ground truth.
"""

from .gf2 import (
    Gf2Matrix,
    Gf2Poly,
    ParseError,
    SingularMatrixError,
    VerificationError,
    format_gf2,
    parse_gf2,
)
from .canonical import FrobeniusForm, companion, frobenius_form, invariant_factors
from .decompose import (
    NilCleanCert,
    NotStronglyNilCleanError,
    StrongCert,
    companion_nil_clean,
    is_strongly_nil_clean,
    nil_clean_decompose,
    nilpotency_index,
    strongly_nil_clean_decompose,
    verify_cert,
)
from .rings import (
    BoolMatrix,
    Mod2kMatrix,
    lift_idempotent,
    nil_clean_decompose_boolean,
    nil_clean_decompose_mod2k,
    reduce_mod2,
)
from .abelian import (
    AbelianGroupSpec,
    GroupEndo,
    endo_nil_clean_decompose,
    group_nil_clean_verdict,
    group_strongly_nil_clean_verdict,
    strongly_witness,
)

__version__ = "0.1.0"

__all__ = [
    "Gf2Matrix",
    "Gf2Poly",
    "ParseError",
    "SingularMatrixError",
    "VerificationError",
    "parse_gf2",
    "format_gf2",
    "FrobeniusForm",
    "companion",
    "frobenius_form",
    "invariant_factors",
    "NilCleanCert",
    "StrongCert",
    "NotStronglyNilCleanError",
    "companion_nil_clean",
    "nil_clean_decompose",
    "verify_cert",
    "is_strongly_nil_clean",
    "strongly_nil_clean_decompose",
    "nilpotency_index",
    "Mod2kMatrix",
    "BoolMatrix",
    "reduce_mod2",
    "lift_idempotent",
    "nil_clean_decompose_mod2k",
    "nil_clean_decompose_boolean",
    "AbelianGroupSpec",
    "GroupEndo",
    "group_nil_clean_verdict",
    "group_strongly_nil_clean_verdict",
    "strongly_witness",
    "endo_nil_clean_decompose",
    "__version__",
]
