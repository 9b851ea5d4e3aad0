"""Nil-clean decompositions A = E + N over GF(2), with verified certificates.

The constructive core: every companion matrix over GF(2) splits into an
idempotent plus a nilpotent by one of three explicit patterns selected on the
top two polynomial coefficients; a general matrix is decomposed by conjugating
the block-diagonal certificate of its Frobenius form back through the
transform.  Each certificate records the exact nilpotency index and is
re-verified before it is returned.

Strongly nil-clean decompositions (E and N commute) exist exactly when
A + A^2 is nilpotent; the construction takes E = A^(2^m) for the first power
of two at or above n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .canonical import companion, frobenius_form
from .gf2 import Gf2Matrix, Gf2Poly, VerificationError


@dataclass(frozen=True, slots=True)
class NilCleanCert:
    """Certificate for a = e_part + n_part with e_part^2 = e_part and
    n_part^k = 0 exactly at k = nilpotency_index (index 1 means n_part = 0).

    Parts are matrices of whichever ring the decomposition ran in.
    """

    e_part: Any
    n_part: Any
    nilpotency_index: int


@dataclass(frozen=True, slots=True)
class StrongCert(NilCleanCert):
    """A NilCleanCert whose parts commute; carries the common product."""

    en_product: Any = None


class NotStronglyNilCleanError(ValueError):
    """No commuting decomposition exists; carries the failing witness a + a^2."""

    def __init__(self, witness: Gf2Matrix):
        super().__init__("matrix is not strongly nil-clean")
        self.witness = witness


def nilpotency_index(n_part: Any, bound: int) -> int:
    """Least k >= 1 with n_part^k = 0, or ValueError if no power up to the
    first power of two at or above ``bound`` vanishes.

    Repeated squaring brackets the index between consecutive powers of two;
    bisection with power-of-two gaps (one product per probe) pins it down.
    Works for any matrix type with ``*`` and ``is_zero``.
    """
    if n_part.is_zero():
        return 1
    powers = {}
    e = 1
    cur = n_part
    while not cur.is_zero():
        powers[e] = cur
        if e >= bound:
            raise ValueError(f"not nilpotent: power {e} is nonzero")
        cur = cur * cur
        e <<= 1
    lo = e >> 1
    x = powers[lo]
    gap = lo >> 1
    while gap:
        mid = x * powers[gap]
        if not mid.is_zero():
            x = mid
            lo += gap
        gap >>= 1
    return lo + 1


# ---------------------------------------------------------------------------
# companion blocks


@lru_cache(maxsize=512)
def companion_nil_clean(p: Gf2Poly) -> NilCleanCert:
    """Nil-clean certificate for the companion matrix of a monic polynomial.

    Three cases on the coefficients of p = t^n + c_{n-1} t^{n-1} + ... + c_0
    (indices below are 0-based rows/columns):

    * c_{n-1} = 1: N is the pure subdiagonal shift, E is zero except the last
      column (c_0, ..., c_{n-2}, 1).
    * c_{n-1} = 0, c_{n-2} = 1 (n >= 2): N adds entries (n-2, n-2),
      (n-2, n-1), (n-1, n-1) to the shift; E carries c_0 .. c_{n-3} in the
      last column of rows 0 .. n-3 plus diagonal ones at n-2 and n-1.
    * c_{n-1} = 0, c_{n-2} = 0 (n >= 3): N adds (n-3, n-2), (n-3, n-1),
      (n-2, n-2), (n-1, n-1); E carries c_0 .. c_{n-4} in the last column of
      rows 0 .. n-4, entries (n-3, n-2) = 1 and (n-3, n-1) = c_{n-3} + 1,
      plus diagonal ones at n-2 and n-1.

    Degree 1 is a direct table; degree 2 with p = t^2 uses E = 0, N = the
    companion itself.  The result is verified (E idempotent, E + N the
    companion, char poly of N equal to t^n, N of rank n-1 so the index is
    exactly n) before returning.
    """
    n = p.degree
    if n < 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    c = p.bits
    shift = tuple((1 << (i - 1)) if i else 0 for i in range(n))
    last = 1 << (n - 1)
    if n == 1:
        if c & 1:  # t + 1
            e_rows: tuple[int, ...] = (1,)
        else:  # t
            e_rows = (0,)
        n_rows: tuple[int, ...] = (0,)
    elif (c >> (n - 1)) & 1:
        # top coefficient present: shift nilpotent, last-column idempotent
        n_rows = shift
        e_rows = tuple(
            (last if (c >> i) & 1 else 0) if i < n - 1 else last for i in range(n)
        )
    elif n == 2 and c & 0b11 == 0:
        # p = t^2: the companion is itself nilpotent
        e_rows = (0, 0)
        n_rows = (0, 1)
    elif (c >> (n - 2)) & 1:
        rows = list(shift)
        rows[n - 2] |= (1 << (n - 2)) | last
        rows[n - 1] |= last
        n_rows = tuple(rows)
        rows = [(last if (c >> i) & 1 else 0) for i in range(n)]
        rows[n - 2] = 1 << (n - 2)
        rows[n - 1] = last
        e_rows = tuple(rows)
    else:
        if n < 3:
            raise VerificationError("unreachable case split")  # t^2 handled above
        rows = list(shift)
        rows[n - 3] |= (1 << (n - 2)) | last
        rows[n - 2] |= 1 << (n - 2)
        rows[n - 1] |= last
        n_rows = tuple(rows)
        rows = [(last if (c >> i) & 1 else 0) for i in range(n)]
        rows[n - 3] = (1 << (n - 2)) | (0 if (c >> (n - 3)) & 1 else last)
        rows[n - 2] = 1 << (n - 2)
        rows[n - 1] = last
        e_rows = tuple(rows)
    e = Gf2Matrix(n, n, e_rows)
    nn = Gf2Matrix(n, n, n_rows)
    if e * e != e:
        raise VerificationError("companion case produced a non-idempotent E")
    if e + nn != companion(p):
        raise VerificationError("companion case does not sum to the companion matrix")
    if not nn.is_nilpotent():
        raise VerificationError("companion case produced a non-nilpotent N")
    if nn.rank() != n - 1:
        # rank n-1 plus char poly t^n forces a single Jordan chain, which is
        # what makes the recorded index exact
        raise VerificationError("companion N does not have rank n-1")
    return NilCleanCert(e, nn, n)


# ---------------------------------------------------------------------------
# general matrices


def nil_clean_decompose(a: Gf2Matrix) -> NilCleanCert:
    """Nil-clean certificate for any square matrix over GF(2).

    Frobenius form, per-block companion certificates, conjugation back, then
    re-verification of the conjugated pair.  Deterministic.
    """
    if not a.is_square:
        raise ValueError("nil-clean decomposition needs a square matrix")
    form = frobenius_form(a)
    certs = [companion_nil_clean(f) for f in form.invariant_factors]
    e0 = Gf2Matrix.block_diag([cert.e_part for cert in certs])
    p = form.transform
    e = p * (e0 * p.inverse())
    n = a + e
    index = max(cert.nilpotency_index for cert in certs)
    if e * e != e:
        raise VerificationError("conjugated E is not idempotent")
    if e + n != a:
        raise VerificationError("certificate parts do not sum to the input")
    if not n.is_nilpotent():
        raise VerificationError("conjugated N is not nilpotent")
    return NilCleanCert(e, n, index)


def verify_cert(a: Any, cert: NilCleanCert) -> bool:
    """Independent check of a certificate against its matrix.

    Confirms shape/ring agreement, E^2 = E, E + N = a, N^index = 0 with
    N^(index-1) nonzero, and for StrongCert that the parts commute.  Returns
    False rather than raising on any mismatch.
    """
    e = cert.e_part
    n = cert.n_part
    idx = cert.nilpotency_index
    if type(e) is not type(a) or type(n) is not type(a):
        return False
    try:
        if e + n != a:
            return False
        if e * e != e:
            return False
        if not isinstance(idx, int) or idx < 1:
            return False
        if idx == 1:
            if not n.is_zero():
                return False
        else:
            try:
                if nilpotency_index(n, idx) != idx:
                    return False
            except ValueError:
                return False
        if isinstance(cert, StrongCert) and e * n != n * e:
            return False
    except (ValueError, TypeError):
        return False
    return True


# ---------------------------------------------------------------------------
# strongly nil-clean


def is_strongly_nil_clean(a: Gf2Matrix) -> bool:
    """True iff a has a commuting decomposition, i.e. iff a + a^2 is nilpotent."""
    if not a.is_square:
        raise ValueError("strong nil-cleanness needs a square matrix")
    return (a + a * a).is_nilpotent()


def strongly_nil_clean_decompose(a: Gf2Matrix) -> StrongCert:
    """Commuting certificate E = a^(2^m), N = a + E, for 2^m the first power
    of two at or above n.

    Raises:
        NotStronglyNilCleanError: carrying the witness a + a^2 when it is not
            nilpotent, which is exactly when no commuting decomposition exists.
    """
    if not a.is_square:
        raise ValueError("strong decomposition needs a square matrix")
    size = a.n_rows
    w = a + a * a
    if not w.is_nilpotent():
        raise NotStronglyNilCleanError(w)
    m = 0
    while (1 << m) < size:
        m += 1
    e = a ** (1 << m)
    n = a + e
    if e * e != e:
        raise VerificationError("Frobenius power is not idempotent")
    en = e * n
    if en != n * e:
        raise VerificationError("strong parts do not commute")
    idx = nilpotency_index(n, size)
    return StrongCert(e, n, idx, en)


# ---------------------------------------------------------------------------
# certificate text format


def format_cert(cert: NilCleanCert) -> str:
    """Render a certificate: E block, N block, index line, strong line.

    The strong line reports whether the emitted parts commute.
    """
    e = cert.e_part
    n = cert.n_part
    strong = "true" if e * n == n * e else "false"
    return (
        "E\n"
        + e.format_text()
        + "N\n"
        + n.format_text()
        + f"index {cert.nilpotency_index}\n"
        + f"strong {strong}\n"
    )
