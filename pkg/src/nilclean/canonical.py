"""Frobenius normal form over GF(2) with an explicit change of basis.

``frobenius_form(a)`` returns an invertible ``transform`` P and the invariant
factor chain f_1 | f_2 | ... | f_k such that P^-1 A P is the block-diagonal
matrix of their companion blocks, smallest factor first.

Algorithm: work with row vectors acting on the transpose (so companion
matrices come out exactly in subdiagonal-plus-last-column form and are fixed
points with P = I).  Find a cyclic vector whose local minimal polynomial is
the global one by scanning standard basis vectors in index order and
combining witnesses through a gcd-based coprime splitting; split off its
Krylov block; build an invariant complement from the dual Krylov chain of a
functional; recurse on the complement.  Every choice (scan order, free
variables in solves, nullspace basis order) is pinned to the lowest index, so
the output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from collections.abc import Callable

from .gf2 import Gf2Matrix, Gf2Poly, VerificationError, _byte_tables


@dataclass(frozen=True, slots=True)
class FrobeniusForm:
    """Invertible transform plus the invariant factor chain it exposes."""

    transform: Gf2Matrix
    invariant_factors: tuple[Gf2Poly, ...]

    def block_matrix(self) -> Gf2Matrix:
        """The block-diagonal companion matrix P^-1 A P."""
        return Gf2Matrix.block_diag([companion(f) for f in self.invariant_factors])


@lru_cache(maxsize=512)
def companion(p: Gf2Poly) -> Gf2Matrix:
    """Companion matrix of a monic polynomial of degree >= 1.

    Subdiagonal ones; last column carries the coefficients c_0 .. c_{n-1} of
    p = t^n + c_{n-1} t^{n-1} + ... + c_0.
    """
    n = p.degree
    if n < 1:
        raise ValueError("companion matrix needs a polynomial of degree >= 1")
    top = 1 << (n - 1)
    rows = []
    for i in range(n):
        r = (1 << (i - 1)) if i else 0
        if (p.bits >> i) & 1:
            r |= top
        rows.append(r)
    return Gf2Matrix(n, n, tuple(rows))


def frobenius_form(a: Gf2Matrix) -> FrobeniusForm:
    """Compute the Frobenius normal form with transform; deterministic.

    The assembled output is re-verified (a * P == P * blockdiag and P
    invertible) before returning.
    """
    if not a.is_square:
        raise ValueError("Frobenius form needs a square matrix")
    n = a.n_rows
    t = a.transpose()
    factors, basis = _frobenius_rows(list(t.rows), n)
    if sum(f.degree for f in factors) != n or len(basis) != n:
        raise VerificationError("invariant factor degrees do not sum to n")
    r_mat = Gf2Matrix._raw(n, n, tuple(basis))
    # a P == P blockdiag, checked in transposed form: R A^T must equal
    # B^T R, whose rows are just shifted basis rows plus one coefficient
    # combination per block
    rhs_rows = []
    offset = 0
    for f in factors:
        d = f.degree
        rhs_rows.extend(basis[offset + 1 : offset + d])
        last = 0
        bits = f.bits & ((1 << d) - 1)
        while bits:
            low = bits & -bits
            last ^= basis[offset + low.bit_length() - 1]
            bits ^= low
        rhs_rows.append(last)
        offset += d
    if r_mat * t != Gf2Matrix._raw(n, n, tuple(rhs_rows)):
        raise VerificationError("assembled transform does not conjugate to the blocks")
    transform = r_mat.transpose()
    transform.inverse()  # raises SingularMatrixError-as-bug if dependent; cached
    for f, g in zip(factors, factors[1:]):
        if not f.divides(g):
            raise VerificationError("invariant factors do not form a divisibility chain")
    return FrobeniusForm(transform, tuple(factors))


def invariant_factors(a: Gf2Matrix) -> tuple[Gf2Poly, ...]:
    """The invariant factor chain f_1 | f_2 | ... | f_k of a square matrix."""
    return frobenius_form(a).invariant_factors


# ---------------------------------------------------------------------------
# row-vector internals; a vector is an int, the operator is x -> x * M


def _make_applier(rows: list[int]) -> Callable[[int], int]:
    """A function computing v -> v * M for the row list of M.

    Small operators XOR rows per set bit; larger ones go through byte tables
    so repeated application (Krylov chains) costs one XOR per byte of v.
    """
    if len(rows) < 64:

        def apply(v: int) -> int:
            acc = 0
            while v:
                low = v & -v
                acc ^= rows[low.bit_length() - 1]
                v ^= low
            return acc

        return apply

    tables = _byte_tables(rows)

    def apply_wide(v: int) -> int:
        acc = 0
        g = 0
        while v:
            b = v & 255
            if b:
                acc ^= tables[g][b]
            v >>= 8
            g += 1
        return acc

    return apply_wide


def _apply_col(col: int, rows: list[int]) -> int:
    # column vector image: bit i = <row_i, col>
    out = 0
    bit = 1
    for r in rows:
        if (r & col).bit_count() & 1:
            out |= bit
        bit <<= 1
    return out


def _combine_from_chain(p: Gf2Poly, chain: list[int]) -> int:
    # p(M) v as a combination of the precomputed chain [v, vM, vM^2, ...];
    # requires p.degree < len(chain)
    acc = 0
    bits = p.bits
    while bits:
        low = bits & -bits
        acc ^= chain[low.bit_length() - 1]
        bits ^= low
    return acc


def _rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with lowest-bit pivots.

    Returns (pivots, reduced_rows), aligned lists in insertion order.  Each
    reduced row is the only one with its pivot bit set.
    """
    pivots: list[int] = []
    out: list[int] = []
    for row in rows:
        for p, r in zip(pivots, out):
            if (row >> p) & 1:
                row ^= r
        if row:
            p = (row & -row).bit_length() - 1
            for k, r in enumerate(out):
                if (r >> p) & 1:
                    out[k] = r ^ row
            pivots.append(p)
            out.append(row)
    return pivots, out


def _local_min_poly(
    v0: int, apply: Callable[[int], int], m: int
) -> tuple[Gf2Poly, list[int]]:
    """Minimal polynomial of the cyclic module generated by ``v0``.

    Returns (poly, chain) where chain = [v0, v0 M, ..., v0 M^{d-1}] is the
    independent Krylov prefix and poly is monic of degree d.  The echelon
    packs vector and coefficient word into one int (vector in the low m bits)
    so each reduction step is a single XOR; pivots are lowest set bits, which
    always land in the vector part while it is nonzero.
    """
    ech: list[int | None] = [None] * m
    chain: list[int] = []
    vec = v0
    deg = 0
    while True:
        x = vec | (1 << (m + deg))
        while True:
            p = (x & -x).bit_length() - 1
            if p >= m:
                return Gf2Poly(x >> m), chain
            e = ech[p]
            if e is None:
                ech[p] = x
                break
            x ^= e
        chain.append(vec)
        vec = apply(vec)
        deg += 1


def _coprime_split(f: Gf2Poly, g: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    """Split lcm(f, g) = f1 * g1 with f1 | f, g1 | g and gcd(f1, g1) = 1.

    f1 keeps the full f-power of every irreducible where f's exponent is at
    least g's; g1 keeps the rest.  Only gcds and exact divisions are used.
    """
    w = g // f.gcd(g)
    f1 = f
    while True:
        d = f1.gcd(w)
        if d.degree < 1:
            break
        f1 = f1 // d
    g1 = g
    while True:
        d = g1.gcd(f1)
        if d.degree < 1:
            break
        g1 = g1 // d
    return f1, g1


def _ech_insert(rows: list[int], v: int) -> bool:
    """Insert v into a lowest-bit-pivot echelon; True if the span grew."""
    while v:
        p = (v & -v).bit_length() - 1
        e = rows[p]
        if not e:
            rows[p] = v
            return True
        v ^= e
    return False


def _tracked_span(chain: list[int], m: int) -> tuple[list[int], list[int], list[int]]:
    """Echelon of the Krylov chain carrying chain coordinates.

    Returns (packed, plain, pivots): packed rows are vec | (combination << m)
    with the combination indexing chain positions, plain rows are the vector
    parts alone, pivots is the ascending pivot list.  Used to express any
    element of the chain's span as p(M) v by one reduction.
    """
    packed = [0] * m
    for i, vec in enumerate(chain):
        x = vec | (1 << (m + i))
        while True:
            p = (x & -x).bit_length() - 1
            if p >= m:
                raise VerificationError("Krylov chain is dependent")
            e = packed[p]
            if not e:
                packed[p] = x
                break
            x ^= e
    mask = (1 << m) - 1
    pivots = [p for p in range(m) if packed[p]]
    plain = [packed[p] & mask if packed[p] else 0 for p in range(m)]
    return packed, plain, pivots


def _quotient_ann(
    e: int,
    plain: list[int],
    pivots: list[int],
    apply: Callable[[int], int],
    m: int,
) -> tuple[Gf2Poly, list[int]]:
    """Annihilator of e in the quotient by the champion's (invariant) span.

    Walks e's Krylov chain, reducing each vector modulo the span, until the
    residues become dependent.  Returns (h, raw) with h monic of degree d and
    raw = [e, eM, ..., eM^d] the unreduced prefix, so h(M) e is a combination
    of raw and lands inside the span.
    """
    raw: list[int] = []
    ech: list[int] = [0] * m
    w = e
    deg = 0
    while True:
        if deg > m:
            raise VerificationError("quotient annihilator walk did not terminate")
        x = w
        for p in pivots:
            if (x >> p) & 1:
                x ^= plain[p]
        y = x | (1 << (m + deg))
        while True:
            p = (y & -y).bit_length() - 1
            if p >= m:
                raw.append(w)
                return Gf2Poly(y >> m), raw
            e2 = ech[p]
            if not e2:
                ech[p] = y
                break
            y ^= e2
        raw.append(w)
        w = apply(w)
        deg += 1


def _chain_coordinates(r: int, packed: list[int], m: int) -> Gf2Poly:
    """The polynomial a with a(M) v = r, for r in the span of v's chain."""
    x = r
    while x:
        p = (x & -x).bit_length() - 1
        if p >= m:
            break
        t = packed[p]
        if not t:
            raise VerificationError("remainder escaped the cyclic module")
        x ^= t
    return Gf2Poly(x >> m)


def _apply_poly(p: Gf2Poly, v: int, apply: Callable[[int], int]) -> int:
    # Horner evaluation of p(M) applied to the row vector v
    acc = 0
    for e in range(p.degree, -1, -1):
        acc = apply(acc)
        if (p.bits >> e) & 1:
            acc ^= v
    return acc


def _min_poly_witness(
    apply: Callable[[int], int], m: int
) -> tuple[Gf2Poly, int, list[int]]:
    """Minimal polynomial of the operator plus a vector achieving it.

    Scans standard basis vectors in index order; maintains the champion
    witness v with its annihilator mu, upgrading via the coprime splitting
    whenever a basis vector's annihilator does not divide mu.  A basis
    vector's annihilator is recovered without a full Krylov walk: with h its
    annihilator modulo the champion's span and a the chain coordinates of
    h(M) e, it equals h * (mu / gcd(mu, a)).  A cover echelon accumulates
    every vector whose annihilator is known to divide mu, so later basis
    vectors skip in one reduction and the scan stops once the cover is full.
    Returns (mu, v, chain) where chain is v's Krylov prefix of length
    deg(mu).
    """
    mu, chain = _local_min_poly(1, apply, m)
    v = 1
    if mu.degree == m:
        return mu, v, chain
    # below ~16 dimensions a full Krylov walk per candidate is cheaper than
    # the quotient bookkeeping
    small = m <= 16
    if not small:
        packed, plain, pivots = _tracked_span(chain, m)
    cover = [0] * m
    size = 0
    for w in chain:
        size += _ech_insert(cover, w)
    for i in range(1, m):
        if size == m:
            break
        e = 1 << i
        if not _ech_insert(cover, e):
            continue
        size += 1
        if small:
            g, raw = _local_min_poly(e, apply, m)
        else:
            h, raw = _quotient_ann(e, plain, pivots, apply, m)
            r = _combine_from_chain(h, raw)
            g = h * (mu // mu.gcd(_chain_coordinates(r, packed, m)))
        for w in raw[1:]:
            size += _ech_insert(cover, w)
        if g.divides(mu):
            continue
        if mu.divides(g):
            mu, v = g, e
            chain = _krylov_chain(e, g.degree, apply)
        else:
            # coprime halves never degenerate to 1 here (that would force one
            # annihilator to divide the other)
            f1, g1 = _coprime_split(mu, g)
            if small:
                second = _combine_from_chain(g // g1, raw)
            else:
                second = _apply_poly(g // g1, e, apply)
            v = _combine_from_chain(mu // f1, chain) ^ second
            mu = f1 * g1
            chain = _krylov_chain(v, mu.degree, apply)
        if mu.degree == m:
            return mu, v, chain
        if not small:
            packed, plain, pivots = _tracked_span(chain, m)
        for w in chain:
            size += _ech_insert(cover, w)
    return mu, v, chain


def _krylov_chain(v: int, length: int, apply: Callable[[int], int]) -> list[int]:
    chain = [v]
    for _ in range(length - 1):
        chain.append(apply(chain[-1]))
    return chain


def _frobenius_rows(rows: list[int], m: int) -> tuple[list[Gf2Poly], list[int]]:
    """Recursive invariant-factor extraction; returns (factors, basis rows).

    Basis rows are grouped in factor order: the rows for factor i are the
    Krylov chain of that block's generator.  Operators of dimension <= 3 are
    memoized: they show up as the recursion tail of almost every larger
    decomposition and there are at most 2 + 16 + 512 of them in total.
    """
    if m <= 3:
        factors, basis = _tiny_frobenius(tuple(rows), m)
        return list(factors), list(basis)
    return _frobenius_rows_impl(rows, m)


@lru_cache(maxsize=None)
def _tiny_frobenius(
    rows: tuple[int, ...], m: int
) -> tuple[tuple[Gf2Poly, ...], tuple[int, ...]]:
    factors, basis = _frobenius_rows_impl(list(rows), m)
    return tuple(factors), tuple(basis)


def _frobenius_rows_impl(rows: list[int], m: int) -> tuple[list[Gf2Poly], list[int]]:
    apply = _make_applier(rows)
    mu, v, chain = _min_poly_witness(apply, m)
    d = mu.degree
    if d == m:
        return [mu], chain
    # dual functional c with <chain[i], c> = [i == d-1]
    want = 1 << (m + 0)  # RHS carried in bit m of the augmented rows
    aug = [k | (want if i == d - 1 else 0) for i, k in enumerate(chain)]
    pivots, red = _rref(aug)
    c = 0
    for p, r in zip(pivots, red):
        if p >= m:
            raise VerificationError("dual functional system is inconsistent")
        if (r >> m) & 1:
            c |= 1 << p
    # invariant complement: w with <w, M^j c> = 0 for all j < d
    cons = []
    col = c
    for _ in range(d):
        cons.append(col)
        col = _apply_col(col, rows)
    piv_cols, red_cons = _rref(cons)
    if len(piv_cols) != d:
        raise VerificationError("dual Krylov chain is not independent")
    piv_set = set(piv_cols)
    free_cols = [j for j in range(m) if j not in piv_set]
    w_basis = []
    for fc in free_cols:
        w = 1 << fc
        for p, r in zip(piv_cols, red_cons):
            if (r >> fc) & 1:
                w |= 1 << p
        w_basis.append(w)
    # restriction of the operator to the complement, in w_basis coordinates
    sub_rows = []
    for w in w_basis:
        img = apply(w)
        coords = 0
        check = 0
        for j, fc in enumerate(free_cols):
            if (img >> fc) & 1:
                coords |= 1 << j
                check ^= w_basis[j]
        if check != img:
            raise VerificationError("complement is not invariant")
        sub_rows.append(coords)
    sub_factors, sub_basis = _frobenius_rows(sub_rows, m - d)
    lifted = []
    for s in sub_basis:
        vec = 0
        while s:
            low = s & -s
            vec ^= w_basis[low.bit_length() - 1]
            s ^= low
        lifted.append(vec)
    # place the top block among equal factors so the earliest witness leads
    idx = len(sub_factors)
    for k, f in enumerate(sub_factors):
        if f == mu:
            idx = k
            break
    offset = sum(f.degree for f in sub_factors[:idx])
    factors = sub_factors[:idx] + [mu] + sub_factors[idx:]
    basis = lifted[:offset] + chain + lifted[offset:]
    return factors, basis
