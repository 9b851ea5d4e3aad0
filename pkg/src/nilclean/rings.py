"""Nil-clean decompositions over Z/2^k and over Boolean rings F2^m.

Over Z/2^k the route is: decompose the mod-2 reduction, then lift its
idempotent part with the Newton step e <- 3e^2 - 2e^3, which doubles the
2-adic accuracy each round, so ceil(log2 k) rounds reach exactness.  The
nilpotent part N = A - E satisfies N^(n*k) = 0 because N mod 2 is nilpotent.

Over F2^m everything is componentwise: a matrix over the Boolean ring is an
m-tuple of GF(2) matrices glued along bit positions, and each component is
decomposed independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import NilCleanCert, nil_clean_decompose, nilpotency_index
from .gf2 import Gf2Matrix, ParseError, VerificationError, skip_blank

_MAX_K = 60


@dataclass(frozen=True, slots=True)
class Mod2kMatrix:
    """Square matrix over Z/2^k, entries stored as ints in [0, 2^k).

    k is capped at 60 so every entry and every product term stays inside a
    native machine word.
    """

    k: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.k <= _MAX_K:
            raise ValueError(f"modulus exponent k must be in 1..{_MAX_K}")
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")
        if len(self.entries) != self.n:
            raise ValueError("row count does not match n")
        top = 1 << self.k
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("column count does not match n")
            for v in row:
                if not 0 <= v < top:
                    raise ValueError(f"entry {v} outside [0, 2^{self.k})")

    @classmethod
    def zero(cls, k: int, n: int) -> Mod2kMatrix:
        return cls(k, n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, k: int, n: int) -> Mod2kMatrix:
        return cls(k, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.entries)

    def __add__(self, other: Mod2kMatrix) -> Mod2kMatrix:
        self._check_compatible(other)
        mask = (1 << self.k) - 1
        return Mod2kMatrix(
            self.k,
            self.n,
            tuple(
                tuple((a + b) & mask for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: Mod2kMatrix) -> Mod2kMatrix:
        self._check_compatible(other)
        mask = (1 << self.k) - 1
        return Mod2kMatrix(
            self.k,
            self.n,
            tuple(
                tuple((a - b) & mask for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __mul__(self, other: Mod2kMatrix) -> Mod2kMatrix:
        if not isinstance(other, Mod2kMatrix):
            return NotImplemented
        self._check_compatible(other)
        mask = (1 << self.k) - 1
        n = self.n
        bt = list(zip(*other.entries))  # columns of other
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) & mask for col in bt)
            for row in self.entries
        )
        return Mod2kMatrix(self.k, n, out)

    def __rmul__(self, scalar: int) -> Mod2kMatrix:
        if not isinstance(scalar, int):
            return NotImplemented
        mask = (1 << self.k) - 1
        return Mod2kMatrix(
            self.k, self.n, tuple(tuple((scalar * v) & mask for v in row) for row in self.entries)
        )

    def __pow__(self, e: int) -> Mod2kMatrix:
        if e < 0:
            raise ValueError("negative matrix power")
        result = Mod2kMatrix.identity(self.k, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _check_compatible(self, other: Mod2kMatrix) -> None:
        if self.k != other.k or self.n != other.n:
            raise ValueError("mismatched modulus or dimension")

    def format_text(self) -> str:
        return format_mod2k(self)


def reduce_mod2(a: Mod2kMatrix) -> Gf2Matrix:
    """The entrywise mod-2 image of a Z/2^k matrix."""
    return Gf2Matrix.from_entries(a.entries)


def lift_idempotent(e: Mod2kMatrix) -> Mod2kMatrix:
    """Lift a matrix that is idempotent mod 2 to an exact idempotent mod 2^k.

    Newton iteration e <- 3e^2 - 2e^3, run ceil(log2 k) times; each round
    doubles the power of 2 to which e^2 = e holds, and the mod-2 image never
    moves.

    Raises:
        ValueError: if the input is not idempotent modulo 2.
    """
    base = reduce_mod2(e)
    if not base.is_idempotent():
        raise ValueError("input is not idempotent modulo 2")
    x = e
    for _ in range((e.k - 1).bit_length()):
        x2 = x * x
        x = 3 * x2 - 2 * (x2 * x)
    if x * x != x:
        raise VerificationError("idempotent lifting did not converge")
    if reduce_mod2(x) != base:
        raise VerificationError("idempotent lifting moved the mod-2 image")
    return x


def nil_clean_decompose_mod2k(a: Mod2kMatrix) -> NilCleanCert:
    """Nil-clean certificate over Z/2^k: mod-2 decomposition, lifted.

    The nilpotent part always satisfies N^(n*k) = 0; the recorded index is
    the exact one.
    """
    base = nil_clean_decompose(reduce_mod2(a))
    e0 = Mod2kMatrix(a.k, a.n, tuple(tuple(row) for row in base.e_part.to_entries()))
    e = lift_idempotent(e0)
    n = a - e
    try:
        idx = nilpotency_index(n, a.n * a.k)
    except ValueError:
        raise VerificationError("lifted nilpotent part exceeded its bound") from None
    if e + n != a:
        raise VerificationError("certificate parts do not sum to the input")
    return NilCleanCert(e, n, idx)


# ---------------------------------------------------------------------------
# Boolean rings F2^m


@dataclass(frozen=True, slots=True)
class BoolMatrix:
    """Square matrix over the Boolean ring F2^m.

    Each entry is an m-bit mask; bit c is the entry's coordinate in the c-th
    F2 component.  Addition is XOR, multiplication distributes over the
    components, so the whole matrix algebra is m independent GF(2) matrix
    algebras in parallel.
    """

    m: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("component count must be positive")
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")
        if len(self.entries) != self.n:
            raise ValueError("row count does not match n")
        top = 1 << self.m
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("column count does not match n")
            for v in row:
                if not 0 <= v < top:
                    raise ValueError("entry mask has bits outside the component range")

    @classmethod
    def zero(cls, m: int, n: int) -> BoolMatrix:
        return cls(m, n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, m: int, n: int) -> BoolMatrix:
        one = (1 << m) - 1
        return cls(m, n, tuple(tuple(one if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_components(cls, mats) -> BoolMatrix:
        """Glue GF(2) matrices along bit positions: mats[c] becomes component c."""
        mats = list(mats)
        if not mats:
            raise ValueError("need at least one component")
        n = mats[0].n_rows
        for g in mats:
            if g.n_rows != n or g.n_cols != n:
                raise ValueError("components must be square matrices of equal size")
        entries = tuple(
            tuple(
                sum(g.entry(i, j) << c for c, g in enumerate(mats)) for j in range(n)
            )
            for i in range(n)
        )
        return cls(len(mats), n, entries)

    def project(self, c: int) -> Gf2Matrix:
        """Component c as a GF(2) matrix."""
        if not 0 <= c < self.m:
            raise ValueError("component index out of range")
        return Gf2Matrix.from_entries(
            [[(v >> c) & 1 for v in row] for row in self.entries]
        )

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.entries)

    def __add__(self, other: BoolMatrix) -> BoolMatrix:
        self._check_compatible(other)
        return BoolMatrix(
            self.m,
            self.n,
            tuple(
                tuple(a ^ b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    __sub__ = __add__

    def __mul__(self, other: BoolMatrix) -> BoolMatrix:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        self._check_compatible(other)
        bt = list(zip(*other.entries))
        out = []
        for row in self.entries:
            orow = []
            for col in bt:
                acc = 0
                for a, b in zip(row, col):
                    acc ^= a & b
                orow.append(acc)
            out.append(tuple(orow))
        return BoolMatrix(self.m, self.n, tuple(out))

    def __pow__(self, e: int) -> BoolMatrix:
        if e < 0:
            raise ValueError("negative matrix power")
        result = BoolMatrix.identity(self.m, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _check_compatible(self, other: BoolMatrix) -> None:
        if self.m != other.m or self.n != other.n:
            raise ValueError("mismatched component count or dimension")

    def format_text(self) -> str:
        return format_bool(self)


def nil_clean_decompose_boolean(a: BoolMatrix) -> NilCleanCert:
    """Componentwise nil-clean certificate over F2^m; the index is the
    largest component index."""
    parts = [nil_clean_decompose(a.project(c)) for c in range(a.m)]
    e = BoolMatrix.from_components([p.e_part for p in parts])
    n = a - e
    idx = max(p.nilpotency_index for p in parts)
    if e * e != e:
        raise VerificationError("assembled E is not idempotent")
    if e + n != a:
        raise VerificationError("certificate parts do not sum to the input")
    high = n ** (idx - 1) if idx > 1 else None
    if high is None:
        if not n.is_zero():
            raise VerificationError("index 1 certificate with nonzero N")
    elif high.is_zero() or not (high * n).is_zero():
        raise VerificationError("recorded nilpotency index is not exact")
    return NilCleanCert(e, n, idx)


# ---------------------------------------------------------------------------
# text formats
#   mod2k <k> <n>   then n lines of n decimal entries
#   bool <m> <n>    then n lines of n m-character 0/1 masks (bit c = char c)


def parse_mod2k_block(lines: list[str], i: int) -> tuple[Mod2kMatrix, int]:
    if i >= len(lines):
        raise ParseError("expected 'mod2k' header", i + 1)
    tokens = lines[i].split()
    if not tokens or tokens[0] != "mod2k":
        raise ParseError("expected 'mod2k' header", i + 1)
    if len(tokens) != 3:
        raise ParseError("mod2k header needs a modulus exponent and a dimension", i + 1)
    try:
        k = int(tokens[1])
        n = int(tokens[2])
    except ValueError:
        raise ParseError("mod2k header fields must be integers", i + 1) from None
    if not 1 <= k <= _MAX_K:
        raise ParseError(f"modulus exponent must be in 1..{_MAX_K}", i + 1)
    if n < 1:
        raise ParseError("matrix dimension must be positive", i + 1)
    top = 1 << k
    entries = []
    for r in range(n):
        li = i + 1 + r
        if li >= len(lines):
            raise ParseError("missing matrix row", li + 1)
        toks = lines[li].split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", li + 1)
        row = []
        for j, tok in enumerate(toks):
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"invalid entry {tok!r}", li + 1, j + 1) from None
            if not 0 <= v < top:
                raise ParseError(f"entry {v} outside [0, 2^{k})", li + 1, j + 1)
            row.append(v)
        entries.append(tuple(row))
    return Mod2kMatrix(k, n, tuple(entries)), i + 1 + n


def parse_bool_block(lines: list[str], i: int) -> tuple[BoolMatrix, int]:
    if i >= len(lines):
        raise ParseError("expected 'bool' header", i + 1)
    tokens = lines[i].split()
    if not tokens or tokens[0] != "bool":
        raise ParseError("expected 'bool' header", i + 1)
    if len(tokens) != 3:
        raise ParseError("bool header needs a component count and a dimension", i + 1)
    try:
        m = int(tokens[1])
        n = int(tokens[2])
    except ValueError:
        raise ParseError("bool header fields must be integers", i + 1) from None
    if m < 1 or n < 1:
        raise ParseError("component count and dimension must be positive", i + 1)
    entries = []
    for r in range(n):
        li = i + 1 + r
        if li >= len(lines):
            raise ParseError("missing matrix row", li + 1)
        toks = lines[li].split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", li + 1)
        row = []
        for j, tok in enumerate(toks):
            if len(tok) != m or any(ch not in "01" for ch in tok):
                raise ParseError(
                    f"entry must be {m} characters of 0/1, got {tok!r}", li + 1, j + 1
                )
            row.append(sum(1 << c for c, ch in enumerate(tok) if ch == "1"))
        entries.append(tuple(row))
    return BoolMatrix(m, n, tuple(entries)), i + 1 + n


def parse_mod2k(text: str) -> Mod2kMatrix:
    lines = text.splitlines()
    mat, nxt = parse_mod2k_block(lines, skip_blank(lines, 0))
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return mat


def parse_bool(text: str) -> BoolMatrix:
    lines = text.splitlines()
    mat, nxt = parse_bool_block(lines, skip_blank(lines, 0))
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return mat


def format_mod2k(a: Mod2kMatrix) -> str:
    lines = [f"mod2k {a.k} {a.n}"]
    for row in a.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def format_bool(a: BoolMatrix) -> str:
    lines = [f"bool {a.m} {a.n}"]
    for row in a.entries:
        lines.append(
            " ".join("".join("1" if (v >> c) & 1 else "0" for c in range(a.m)) for v in row)
        )
    return "\n".join(lines) + "\n"
