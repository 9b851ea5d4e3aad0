"""Brute-force ground truth for tiny matrix sizes.

Everything here recomputes from first principles with naive entrywise
arithmetic over tuples -- no bit packing, no shared kernels with the fast
paths -- so disagreement with the constructive engine means a real bug.
Enumerations are capped at 4x4 (65,536 matrices over GF(2)); the all-pairs
strong check at 3x3.

Matrices are enumerated in the integer order of their packed bit codes,
where bit (i*n + j) of the code is entry (i, j); the F4 variants pack two
bits per entry the same way.  The four-element field is coded 0, 1, w, w+1
as 0..3 with explicit tables.
"""

from __future__ import annotations

from .decompose import NilCleanCert
from .gf2 import Gf2Matrix

_Entries = tuple[tuple[int, ...], ...]


def _entries(code: int, n: int) -> _Entries:
    return tuple(
        tuple((code >> (i * n + j)) & 1 for j in range(n)) for i in range(n)
    )


def _add2(a: _Entries, b: _Entries) -> _Entries:
    return tuple(tuple(x ^ y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mul2(a: _Entries, b: _Entries, n: int) -> _Entries:
    return tuple(
        tuple(sum(a[i][l] & b[l][j] for l in range(n)) & 1 for j in range(n))
        for i in range(n)
    )


def _is_zero(a: _Entries) -> bool:
    return not any(any(row) for row in a)


def _is_nilpotent2(a: _Entries, n: int) -> bool:
    x = a
    for _ in range(n - 1):
        x = _mul2(x, a, n)
    return _is_zero(x)


def _nil_index2(a: _Entries, n: int) -> int:
    k = 1
    x = a
    while not _is_zero(x):
        x = _mul2(x, a, n)
        k += 1
    return k


def enumerate_idempotents(n: int) -> list[Gf2Matrix]:
    """All idempotents of M_n(F2), n <= 4, in packed-code order."""
    if not 1 <= n <= 4:
        raise ValueError("enumeration is capped at 4x4")
    out = []
    for code in range(1 << (n * n)):
        a = _entries(code, n)
        if _mul2(a, a, n) == a:
            out.append(Gf2Matrix.from_entries(a))
    return out


def enumerate_nilpotents(n: int) -> list[Gf2Matrix]:
    """All nilpotents of M_n(F2), n <= 4, in packed-code order."""
    if not 1 <= n <= 4:
        raise ValueError("enumeration is capped at 4x4")
    out = []
    for code in range(1 << (n * n)):
        a = _entries(code, n)
        if _is_nilpotent2(a, n):
            out.append(Gf2Matrix.from_entries(a))
    return out


def brute_nil_clean(a: Gf2Matrix) -> NilCleanCert | None:
    """First nil-clean certificate found by exhaustive idempotent scan.

    Always succeeds over GF(2) (returns None only if scanning somehow finds
    nothing, which the tests treat as a failure).  Capped at 4x4.
    """
    if not a.is_square:
        raise ValueError("nil-clean search needs a square matrix")
    n = a.n_rows
    if n > 4:
        raise ValueError("brute-force search is capped at 4x4")
    target = tuple(tuple(row) for row in a.to_entries())
    for code in range(1 << (n * n)):
        e = _entries(code, n)
        if _mul2(e, e, n) != e:
            continue
        diff = _add2(target, e)
        if _is_nilpotent2(diff, n):
            return NilCleanCert(
                Gf2Matrix.from_entries(e),
                Gf2Matrix.from_entries(diff),
                _nil_index2(diff, n),
            )
    return None


def brute_strongly_nil_clean(n: int) -> tuple[list[bool], int]:
    """Strong nil-cleanness of every matrix in M_n(F2), n <= 3.

    Returns (verdicts, count): verdicts[code] says whether the matrix with
    that packed code admits a commuting decomposition, and count is how many
    do.
    """
    if not 1 <= n <= 3:
        raise ValueError("the all-pairs strong check is capped at 3x3")
    idems = []
    for code in range(1 << (n * n)):
        e = _entries(code, n)
        if _mul2(e, e, n) == e:
            idems.append(e)
    verdicts = []
    for code in range(1 << (n * n)):
        a = _entries(code, n)
        found = False
        for e in idems:
            diff = _add2(a, e)
            if _is_nilpotent2(diff, n) and _mul2(e, diff, n) == _mul2(diff, e, n):
                found = True
                break
        verdicts.append(found)
    return verdicts, sum(verdicts)


# ---------------------------------------------------------------------------
# the F4 negative control: matrix rings over any field other than F2 contain
# elements with no nil-clean decomposition at all

F4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


def f4_add(a: int, b: int) -> int:
    """Addition in the four-element field (codes 0, 1, w, w+1)."""
    return a ^ b


def _f4_entries(code: int, n: int) -> _Entries:
    return tuple(
        tuple((code >> (2 * (i * n + j))) & 3 for j in range(n)) for i in range(n)
    )


def _f4_add_m(a: _Entries, b: _Entries) -> _Entries:
    return tuple(tuple(x ^ y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _f4_mul_m(a: _Entries, b: _Entries, n: int) -> _Entries:
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for l in range(n):
                acc ^= F4_MUL[a[i][l]][b[l][j]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _f4_is_nilpotent(a: _Entries, n: int) -> bool:
    x = a
    for _ in range(n - 1):
        x = _f4_mul_m(x, a, n)
    return _is_zero(x)


def _f4_idempotents(n: int) -> list[_Entries]:
    out = []
    for code in range(1 << (2 * n * n)):
        a = _f4_entries(code, n)
        if _f4_mul_m(a, a, n) == a:
            out.append(a)
    return out


def f4_negative_check(n: int) -> list[_Entries]:
    """All matrices of M_n(F4) with no nil-clean decomposition, n in {1, 2}.

    Nonempty for both sizes -- over the four-element field the scalars w and
    w+1 already fail, and w*I does at every size -- which is what singles out
    F2 among fields.
    """
    if n not in (1, 2):
        raise ValueError("the negative control is provided for n = 1 and n = 2")
    idems = _f4_idempotents(n)
    bad = []
    for code in range(1 << (2 * n * n)):
        a = _f4_entries(code, n)
        if not any(_f4_is_nilpotent(_f4_add_m(a, e), n) for e in idems):
            bad.append(a)
    return bad
