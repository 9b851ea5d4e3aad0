"""Exact linear algebra over GF(2) with bit-packed rows.

A matrix row is stored as one Python integer whose bit ``j`` holds the entry
in column ``j``.  Python integers are arbitrary-precision arrays of machine
words, so XOR-ing two rows is word-parallel C work no matter how wide the
matrix gets.  Every kernel below (products, elimination, Hessenberg
reduction) is organised around whole-row XORs, masks and popcounts; that is
what keeps exhaustive sweeps over all 4x4 matrices and dense 256x256
decompositions inside their time budgets without a compiled extension.

Also provided: polynomials over GF(2) stored as coefficient bit-vectors, and
the ``gf2`` text format shared by the command line tools.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache


class ParseError(ValueError):
    """Malformed text input, with 1-based line (and optional column) location."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is singular."""


class VerificationError(AssertionError):
    """An internal consistency check on a constructed object failed.

    This always indicates a bug in the library, never bad user input.
    """


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True, slots=True)
class Gf2Poly:
    """Polynomial over GF(2); bit ``i`` of ``bits`` is the coefficient of t^i.

    The zero polynomial is ``bits == 0``.  Every nonzero polynomial over GF(2)
    is monic, so no normalisation is ever needed.
    """

    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("coefficient mask must be non-negative")

    @classmethod
    def zero(cls) -> Gf2Poly:
        return cls(0)

    @classmethod
    def one(cls) -> Gf2Poly:
        return cls(1)

    @classmethod
    def t_power(cls, e: int) -> Gf2Poly:
        """The monomial t^e."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return cls(1 << e)

    @classmethod
    def from_coeffs(cls, coeffs) -> Gf2Poly:
        """Build from an iterable of coefficients, constant term first."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return self.bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def coefficient(self, i: int) -> int:
        return (self.bits >> i) & 1

    def coeffs(self) -> list[int]:
        """Coefficient list, constant term first ([] for the zero polynomial)."""
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        a = self.bits
        b = other.bits
        acc = 0
        while a:
            low = a & -a
            acc ^= b << (low.bit_length() - 1)
            a ^= low
        return Gf2Poly(acc)

    def __divmod__(self, other: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
        if other.bits == 0:
            raise ZeroDivisionError("polynomial division by zero")
        q = 0
        r = self.bits
        dlen = other.bits.bit_length()
        while r.bit_length() >= dlen:
            shift = r.bit_length() - dlen
            q |= 1 << shift
            r ^= other.bits << shift
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        if other.bits == 0:
            raise ZeroDivisionError("polynomial division by zero")
        r = self.bits
        d = other.bits
        dlen = d.bit_length()
        while r.bit_length() >= dlen:
            r ^= d << (r.bit_length() - dlen)
        return Gf2Poly(r)

    def gcd(self, other: Gf2Poly) -> Gf2Poly:
        # Euclid on raw bit representations; remainders of monic inputs stay
        # canonical over GF(2), so no normalization step is needed
        a, b = self.bits, other.bits
        while b:
            dlen = b.bit_length()
            while a.bit_length() >= dlen:
                a ^= b << (a.bit_length() - dlen)
            a, b = b, a
        return Gf2Poly(a)

    def lcm(self, other: Gf2Poly) -> Gf2Poly:
        if self.is_zero() or other.is_zero():
            return Gf2Poly(0)
        return (self * other) // self.gcd(other)

    def divides(self, other: Gf2Poly) -> bool:
        if self.bits == 0:
            return False
        if other.bits == 0:
            return True
        if other.bits.bit_length() < self.bits.bit_length():
            return False
        return (other % self).is_zero()

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for e in range(self.bits.bit_length() - 1, -1, -1):
            if (self.bits >> e) & 1:
                terms.append("1" if e == 0 else ("t" if e == 1 else f"t^{e}"))
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Gf2Poly({self})"


def parse_poly(text: str) -> Gf2Poly:
    """Parse the ``t^3+t+1`` notation emitted by ``str(Gf2Poly)``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return Gf2Poly(0)
    bits = 0
    for term in s.split("+"):
        if term == "1":
            bits ^= 1
        elif term == "t":
            bits ^= 2
        elif term.startswith("t^"):
            try:
                e = int(term[2:])
            except ValueError:
                raise ValueError(f"bad polynomial term {term!r}") from None
            if e < 0:
                raise ValueError(f"bad polynomial term {term!r}")
            bits ^= 1 << e
        else:
            raise ValueError(f"bad polynomial term {term!r}")
    return Gf2Poly(bits)


# ---------------------------------------------------------------------------
# matrices


def _byte_tables(rows: Sequence[int]) -> list[list[int]]:
    """XOR tables for groups of eight rows, keyed by a byte of the left operand.

    tables[g][b] is the XOR of rows[8*g + i] over the set bits i of b, so a
    row-vector/matrix product needs one lookup per byte instead of one XOR
    per set bit.
    """
    tables = []
    for start in range(0, len(rows), 8):
        grp = rows[start : start + 8]
        tab = [0] * (1 << len(grp))
        for byte in range(1, len(tab)):
            low = byte & -byte
            tab[byte] = tab[byte ^ low] ^ grp[low.bit_length() - 1]
        tables.append(tab)
    return tables


@dataclass(frozen=True, slots=True)
class Gf2Matrix:
    """Dense matrix over GF(2) with rows packed into integers.

    ``rows[i]`` bit ``j`` is the entry in row ``i``, column ``j``.  Instances
    are immutable and hashable; all operations return fresh matrices.
    """

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) != self.n_rows:
            raise ValueError("row count does not match n_rows")
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise ValueError("row word has bits outside the column range")

    # -- constructors

    @classmethod
    def _raw(cls, n_rows: int, n_cols: int, rows: tuple[int, ...]) -> Gf2Matrix:
        """Construction bypass for internal callers with known-valid rows."""
        self = object.__new__(cls)
        object.__setattr__(self, "n_rows", n_rows)
        object.__setattr__(self, "n_cols", n_cols)
        object.__setattr__(self, "rows", rows)
        return self

    @classmethod
    def zero(cls, n_rows: int, n_cols: int | None = None) -> Gf2Matrix:
        if n_cols is None:
            n_cols = n_rows
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_entries(cls, entries) -> Gf2Matrix:
        rows = []
        width = None
        for row in entries:
            row = list(row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            bits = 0
            for j, e in enumerate(row):
                if e & 1:
                    bits |= 1 << j
            rows.append(bits)
        if not rows or not width:
            raise ValueError("matrix dimensions must be positive")
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def random(cls, n_rows: int, n_cols: int, rng) -> Gf2Matrix:
        """Uniform random matrix drawn from ``rng`` (a ``random.Random``)."""
        return cls(n_rows, n_cols, tuple(rng.getrandbits(n_cols) for _ in range(n_rows)))

    @classmethod
    def block_diag(cls, blocks) -> Gf2Matrix:
        """Block-diagonal assembly of the given square or rectangular blocks."""
        blocks = list(blocks)
        if not blocks:
            raise ValueError("need at least one block")
        rows: list[int] = []
        off_c = 0
        for b in blocks:
            rows.extend(r << off_c for r in b.rows)
            off_c += b.n_cols
        return cls._raw(len(rows), off_c, tuple(rows))

    # -- basics

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_entries(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.is_square and all(r == 1 << i for i, r in enumerate(self.rows))

    def transpose(self) -> Gf2Matrix:
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return Gf2Matrix._raw(self.n_cols, self.n_rows, tuple(cols))

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n_cols))
            for r in self.rows
        )

    def format_text(self) -> str:
        """This matrix in the gf2 text format (header plus 0/1 rows)."""
        return format_gf2(self)

    # -- arithmetic

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise ValueError("shape mismatch in addition")
        return Gf2Matrix._raw(
            self.n_rows, self.n_cols, tuple(a ^ b for a, b in zip(self.rows, other.rows))
        )

    __sub__ = __add__

    def __mul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch in product")
        brows = other.rows
        out = []
        if (
            self.n_cols >= 64
            and self.n_rows >= 32
            and sum(r.bit_count() for r in self.rows) * 3 > self.n_rows * self.n_cols
        ):
            # dense: one XOR per byte of the left row, via per-group tables
            tables = _byte_tables(brows)
            for a in self.rows:
                acc = 0
                g = 0
                while a:
                    b = a & 255
                    if b:
                        acc ^= tables[g][b]
                    a >>= 8
                    g += 1
                out.append(acc)
        else:
            # sparse: one XOR per set bit of the left row
            for a in self.rows:
                acc = 0
                while a:
                    low = a & -a
                    acc ^= brows[low.bit_length() - 1]
                    a ^= low
                out.append(acc)
        return Gf2Matrix._raw(self.n_rows, other.n_cols, tuple(out))

    def __pow__(self, e: int) -> Gf2Matrix:
        if not self.is_square:
            raise ValueError("matrix power needs a square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        result = Gf2Matrix.identity(self.n_rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates

    def is_idempotent(self) -> bool:
        return self.is_square and self * self == self

    def is_nilpotent(self) -> bool:
        """True iff some power vanishes, i.e. iff a^n = 0; n rounds up to a
        power of two so repeated squaring needs only log2(n) products."""
        if not self.is_square:
            raise ValueError("nilpotency needs a square matrix")
        cur = self
        e = 1
        while e < self.n_rows and not cur.is_zero():
            cur = cur * cur
            e <<= 1
        return cur.is_zero()

    # -- elimination kernels

    def rank(self) -> int:
        ech: dict[int, int] = {}
        for row in self.rows:
            cur = row
            while cur:
                p = cur.bit_length() - 1
                e = ech.get(p)
                if e is None:
                    ech[p] = cur
                    break
                cur ^= e
        return len(ech)

    def inverse(self) -> Gf2Matrix:
        """Inverse via Gauss-Jordan on rows augmented with identity words.

        Raises:
            SingularMatrixError: if the matrix is not invertible.
        """
        if not self.is_square:
            raise SingularMatrixError("only square matrices can be inverted")
        return _cached_inverse(self)

    def char_poly(self) -> Gf2Poly:
        """Characteristic polynomial det(tI + A) via Hessenberg reduction.

        The similarity reduction pairs each batch of row operations with one
        word-parallel column pass (popcount against the eliminated-row mask),
        then runs the leading-principal-minor recurrence on the Hessenberg
        matrix with packed-integer polynomials.
        """
        if not self.is_square:
            raise ValueError("characteristic polynomial needs a square matrix")
        n = self.n_rows
        h = list(self.rows)
        for j in range(n - 2):
            s = j + 1
            piv = None
            for i in range(s, n):
                if (h[i] >> j) & 1:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != s:
                h[s], h[piv] = h[piv], h[s]
                # paired column swap keeps the conjugation a similarity
                flip = (1 << s) | (1 << piv)
                for r in range(n):
                    x = h[r]
                    if ((x >> s) ^ (x >> piv)) & 1:
                        h[r] = x ^ flip
            prow = h[s]
            mask = 0
            for i in range(s + 1, n):
                if (h[i] >> j) & 1:
                    h[i] ^= prow
                    mask |= 1 << i
            if mask:
                # one batched column pass: col s += sum of eliminated cols
                bcol = 1 << s
                for r in range(n):
                    if (h[r] & mask).bit_count() & 1:
                        h[r] ^= bcol
        # char poly of the Hessenberg matrix, leading principal minors
        polys = [1]
        for k in range(1, n + 1):
            p = polys[k - 1] << 1
            if (h[k - 1] >> (k - 1)) & 1:
                p ^= polys[k - 1]
            for m in range(1, k):
                if not (h[k - m] >> (k - m - 1)) & 1:
                    break  # subdiagonal product vanished for good
                if (h[k - 1 - m] >> (k - 1)) & 1:
                    p ^= polys[k - 1 - m]
            polys.append(p)
        return Gf2Poly(polys[n])


@lru_cache(maxsize=4096)
def _cached_inverse(m: Gf2Matrix) -> Gf2Matrix:
    n = m.n_rows
    rows = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if (rows[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        rows[c], rows[piv] = rows[piv], rows[c]
        prow = rows[c]
        for i in range(n):
            if i != c and (rows[i] >> c) & 1:
                rows[i] ^= prow
    return Gf2Matrix._raw(n, n, tuple(r >> n for r in rows))


# ---------------------------------------------------------------------------
# text format:  "gf2 <n_rows> <n_cols>" then one 0/1 string per row


def skip_blank(lines: list[str], i: int) -> int:
    """Index of the first non-blank line at or after ``i``."""
    while i < len(lines) and not lines[i].strip():
        i += 1
    return i


def parse_gf2_block(lines: list[str], i: int) -> tuple[Gf2Matrix, int]:
    """Parse one gf2 matrix block starting at line index ``i``.

    Returns the matrix and the index of the first line after the block.
    Raises ParseError with 1-based positions on malformed input.
    """
    if i >= len(lines):
        raise ParseError("expected 'gf2' header", i + 1)
    tokens = lines[i].split()
    if not tokens or tokens[0] != "gf2":
        raise ParseError("expected 'gf2' header", i + 1)
    if len(tokens) != 3:
        raise ParseError("gf2 header needs exactly two dimensions", i + 1)
    try:
        n_rows = int(tokens[1])
        n_cols = int(tokens[2])
    except ValueError:
        raise ParseError("gf2 dimensions must be integers", i + 1) from None
    if n_rows < 1 or n_cols < 1:
        raise ParseError("matrix dimensions must be positive", i + 1)
    rows = []
    for k in range(n_rows):
        li = i + 1 + k
        if li >= len(lines):
            raise ParseError("missing matrix row", li + 1)
        line = lines[li].strip()
        if len(line) != n_cols:
            raise ParseError(f"expected {n_cols} columns, got {len(line)}", li + 1)
        bits = 0
        for j, ch in enumerate(line):
            if ch == "1":
                bits |= 1 << j
            elif ch != "0":
                raise ParseError(f"invalid character {ch!r}", li + 1, j + 1)
        rows.append(bits)
    return Gf2Matrix(n_rows, n_cols, tuple(rows)), i + 1 + n_rows


def parse_gf2(text: str) -> Gf2Matrix:
    """Parse a document containing exactly one gf2 matrix."""
    lines = text.splitlines()
    mat, nxt = parse_gf2_block(lines, skip_blank(lines, 0))
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return mat


def format_gf2(m: Gf2Matrix) -> str:
    lines = [f"gf2 {m.n_rows} {m.n_cols}"]
    for r in m.rows:
        lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(m.n_cols)))
    return "\n".join(lines) + "\n"
