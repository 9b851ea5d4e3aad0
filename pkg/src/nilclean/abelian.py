"""Endomorphism rings of finite abelian groups: verdicts and decompositions.

End(G) for G a finite abelian 2-group is nil-clean; it is strongly nil-clean
exactly when G is cyclic.  For G = Z/2^{k_1} + ... + Z/2^{k_n} (exponents
ascending) an endomorphism is an integer matrix whose entry (i, j) is taken
mod 2^{k_i} and must be divisible by 2^{k_i - k_j} whenever k_i > k_j.

Decomposition works through the semisimple quotient: the diagonal blocks of
equal exponent, each a matrix ring over Z/2^k, are decomposed and lifted
independently; the block-diagonal assembly of exact idempotents is exactly
idempotent, and the leftover N = f - E is nilpotent because its image in the
product of the mod-2 block rings is, and the kernel of that projection is
nil.  A nilpotent endomorphism's index never exceeds the composition length
sum(k_i) of the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .decompose import NilCleanCert, nilpotency_index
from .gf2 import Gf2Matrix, ParseError, VerificationError, skip_blank
from .rings import Mod2kMatrix, nil_clean_decompose_mod2k

_MAX_K = 60


def _is_prime(v: int) -> bool:
    if v < 2:
        return False
    if v % 2 == 0:
        return v == 2
    d = 3
    r = isqrt(v)
    while d <= r:
        if v % d == 0:
            return False
        d += 2
    return True


def _prime_power(v: int) -> tuple[int, int]:
    """Split v >= 2 as (p, k) with p prime, or raise ValueError."""
    if v < 2:
        raise ValueError(f"{v} is not a prime power")
    p = v
    for d in range(2, isqrt(v) + 1):
        if v % d == 0:
            p = d
            break
    k = 0
    while v > 1:
        if v % p:
            raise ValueError(f"{v} is not a prime power")
        v //= p
        k += 1
    return p, k


@dataclass(frozen=True, slots=True)
class AbelianGroupSpec:
    """A finite abelian group as a multiset of prime-power cyclic factors.

    ``factors`` holds (prime, exponent) pairs and is kept sorted by prime,
    then exponent, so equal groups compare equal.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("a group spec needs at least one cyclic factor")
        for p, k in self.factors:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if k < 1:
                raise ValueError("factor exponents must be positive")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def from_orders(cls, orders) -> AbelianGroupSpec:
        """Build from cyclic factor orders, each a prime power (e.g. [2, 4])."""
        return cls(tuple(_prime_power(v) for v in orders))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_two_group(self) -> bool:
        return all(p == 2 for p, _ in self.factors)

    @property
    def order(self) -> int:
        total = 1
        for p, k in self.factors:
            total *= p**k
        return total

    def exponents(self) -> tuple[int, ...]:
        """Ascending 2-power exponents; only meaningful for a 2-group."""
        if not self.is_two_group:
            raise ValueError("exponent list is only defined for 2-groups")
        return tuple(k for _, k in self.factors)

    def exponent_runs(self) -> list[tuple[int, int, int]]:
        """Maximal runs of equal exponent as (start, size, exponent) triples."""
        exps = self.exponents()
        runs = []
        start = 0
        for i in range(1, len(exps) + 1):
            if i == len(exps) or exps[i] != exps[start]:
                runs.append((start, i - start, exps[start]))
                start = i
        return runs

    def __str__(self) -> str:
        return " ".join(f"{p}^{k}" for p, k in self.factors)


def group_nil_clean_verdict(g: AbelianGroupSpec) -> bool:
    """End(G) is nil-clean exactly when G is a (finite) 2-group."""
    return g.is_two_group


def group_strongly_nil_clean_verdict(g: AbelianGroupSpec) -> bool:
    """End(G) is strongly nil-clean exactly when G is a cyclic 2-group."""
    return g.is_two_group and g.rank == 1


@dataclass(frozen=True, slots=True)
class GroupEndo:
    """Endomorphism of a finite abelian 2-group in matrix form.

    Row i of ``matrix`` describes the component of the image landing in the
    i-th cyclic factor; entry (i, j) lives in [0, 2^{k_i}) and is divisible
    by 2^{k_i - k_j} when k_i > k_j (otherwise no such map exists).
    """

    group: AbelianGroupSpec
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        g = self.group
        if not g.is_two_group:
            raise ValueError("endomorphism matrices are only supported for 2-groups")
        exps = g.exponents()
        if any(k > _MAX_K for k in exps):
            raise ValueError(f"factor exponents are capped at {_MAX_K}")
        n = g.rank
        if len(self.matrix) != n:
            raise ValueError("row count does not match the group rank")
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError("column count does not match the group rank")
            for j, v in enumerate(row):
                if not 0 <= v < (1 << exps[i]):
                    raise ValueError(f"entry ({i}, {j}) outside [0, 2^{exps[i]})")
                need = exps[i] - exps[j]
                if need > 0 and v % (1 << need):
                    raise ValueError(
                        f"entry ({i}, {j}) = {v} must be divisible by 2^{need}"
                    )

    @classmethod
    def zero(cls, g: AbelianGroupSpec) -> GroupEndo:
        n = g.rank
        return cls(g, tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, g: AbelianGroupSpec) -> GroupEndo:
        n = g.rank
        return cls(g, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.matrix)

    def _check_compatible(self, other: GroupEndo) -> None:
        if self.group != other.group:
            raise ValueError("endomorphisms of different groups")

    def __add__(self, other: GroupEndo) -> GroupEndo:
        self._check_compatible(other)
        exps = self.group.exponents()
        return GroupEndo(
            self.group,
            tuple(
                tuple((a + b) & ((1 << exps[i]) - 1) for a, b in zip(ra, rb))
                for i, (ra, rb) in enumerate(zip(self.matrix, other.matrix))
            ),
        )

    def __sub__(self, other: GroupEndo) -> GroupEndo:
        self._check_compatible(other)
        exps = self.group.exponents()
        return GroupEndo(
            self.group,
            tuple(
                tuple((a - b) & ((1 << exps[i]) - 1) for a, b in zip(ra, rb))
                for i, (ra, rb) in enumerate(zip(self.matrix, other.matrix))
            ),
        )

    def __mul__(self, other: GroupEndo) -> GroupEndo:
        if not isinstance(other, GroupEndo):
            return NotImplemented
        self._check_compatible(other)
        exps = self.group.exponents()
        cols = list(zip(*other.matrix))
        out = tuple(
            tuple(
                sum(a * b for a, b in zip(row, col)) & ((1 << exps[i]) - 1)
                for col in cols
            )
            for i, row in enumerate(self.matrix)
        )
        return GroupEndo(self.group, out)

    def __rmul__(self, scalar: int) -> GroupEndo:
        if not isinstance(scalar, int):
            return NotImplemented
        exps = self.group.exponents()
        return GroupEndo(
            self.group,
            tuple(
                tuple((scalar * v) & ((1 << exps[i]) - 1) for v in row)
                for i, row in enumerate(self.matrix)
            ),
        )

    def __pow__(self, e: int) -> GroupEndo:
        if e < 0:
            raise ValueError("negative power")
        result = GroupEndo.identity(self.group)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mod2_blocks(self) -> list[Gf2Matrix]:
        """Diagonal equal-exponent blocks reduced mod 2 (the semisimple image)."""
        return [
            Gf2Matrix.from_entries(
                [
                    [self.matrix[start + r][start + c] & 1 for c in range(size)]
                    for r in range(size)
                ]
            )
            for start, size, _ in self.group.exponent_runs()
        ]

    def format_text(self) -> str:
        return format_endo(self)


def endo_nil_clean_decompose(f: GroupEndo) -> NilCleanCert:
    """Nil-clean certificate in End(G) for a finite abelian 2-group G.

    Each maximal equal-exponent diagonal block is decomposed over its own
    Z/2^k and the exact idempotents are assembled block-diagonally; the
    leftover is nilpotent with index at most sum(k_i), and the exact index is
    recorded.
    """
    g = f.group
    exps = g.exponents()
    n = g.rank
    e_rows = [[0] * n for _ in range(n)]
    for start, size, k in g.exponent_runs():
        sub = Mod2kMatrix(
            k,
            size,
            tuple(
                tuple(f.matrix[start + r][start + c] for c in range(size))
                for r in range(size)
            ),
        )
        cert = nil_clean_decompose_mod2k(sub)
        for r in range(size):
            for c in range(size):
                e_rows[start + r][start + c] = cert.e_part.entries[r][c]
    e = GroupEndo(g, tuple(tuple(row) for row in e_rows))
    nn = f - e
    if e * e != e:
        raise VerificationError("assembled block idempotent is not idempotent")
    if e + nn != f:
        raise VerificationError("certificate parts do not sum to the input")
    try:
        idx = nilpotency_index(nn, sum(exps))
    except ValueError:
        raise VerificationError("nilpotent part exceeded the composition length") from None
    return NilCleanCert(e, nn, idx)


def strongly_witness(f_group: AbelianGroupSpec) -> GroupEndo | None:
    """A unit of End(G) that is not unipotent, when one is exhibited.

    For a non-cyclic 2-group with two factors of equal exponent, embedding
    [[0,1],[1,1]] at the first such adjacent pair (identity elsewhere) gives
    a unit u with u - 1 not nilpotent, so End(G) is not strongly nil-clean.
    Returns None for cyclic groups, and also when all exponents are distinct
    (there every unit is unipotent, so no witness of this shape exists).

    Raises:
        ValueError: if the group is not a 2-group.
    """
    if not f_group.is_two_group:
        raise ValueError("witness search needs a finite 2-group")
    exps = f_group.exponents()
    n = f_group.rank
    if n < 2:
        return None
    pair = None
    for i in range(n - 1):
        if exps[i] == exps[i + 1]:
            pair = i
            break
    if pair is None:
        return None
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[pair][pair] = 0
    rows[pair][pair + 1] = 1
    rows[pair + 1][pair] = 1
    rows[pair + 1][pair + 1] = 1
    w = GroupEndo(f_group, tuple(tuple(row) for row in rows))
    for block in w.mod2_blocks():
        if block.rank() != block.n_rows:
            raise VerificationError("witness is not a unit")
    delta = w - GroupEndo.identity(f_group)
    try:
        nilpotency_index(delta, sum(exps))
    except ValueError:
        return w  # not nilpotent: exactly what makes it a witness
    raise VerificationError("witness turned out unipotent")


# ---------------------------------------------------------------------------
# text formats
#   group 2^1 2^2 ...          (cyclic factor orders as prime powers)
# an endomorphism is a group line followed by rank-many rows of entries


def _parse_factor(token: str, line: int, column: int) -> tuple[int, int]:
    base, sep, etext = token.partition("^")
    try:
        b = int(base)
        exp = int(etext) if sep else 1
    except ValueError:
        raise ParseError(f"bad factor {token!r}", line, column) from None
    if exp < 1:
        raise ParseError("factor exponents must be positive", line, column)
    if exp > 4096:
        raise ParseError("factor exponent too large", line, column)
    try:
        return _prime_power(b**exp)
    except ValueError:
        raise ParseError(f"{token!r} is not a prime power", line, column) from None


def parse_group_line(lines: list[str], i: int) -> tuple[AbelianGroupSpec, int]:
    if i >= len(lines):
        raise ParseError("expected 'group' header", i + 1)
    tokens = lines[i].split()
    if not tokens or tokens[0] != "group":
        raise ParseError("expected 'group' header", i + 1)
    if len(tokens) < 2:
        raise ParseError("group needs at least one cyclic factor", i + 1)
    factors = [_parse_factor(tok, i + 1, c + 2) for c, tok in enumerate(tokens[1:])]
    return AbelianGroupSpec(tuple(factors)), i + 1


def parse_group(text: str) -> AbelianGroupSpec:
    lines = text.splitlines()
    g, nxt = parse_group_line(lines, skip_blank(lines, 0))
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return g


def parse_endo_block(lines: list[str], i: int) -> tuple[GroupEndo, int]:
    g, i = parse_group_line(lines, i)
    if not g.is_two_group:
        raise ParseError("endomorphism matrices need a 2-group", i)
    exps = g.exponents()
    if any(k > _MAX_K for k in exps):
        raise ParseError(f"factor exponents are capped at {_MAX_K}", i)
    n = g.rank
    rows = []
    for r in range(n):
        li = i + r
        if li >= len(lines):
            raise ParseError("missing endomorphism row", li + 1)
        toks = lines[li].split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", li + 1)
        row = []
        for j, tok in enumerate(toks):
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"invalid entry {tok!r}", li + 1, j + 1) from None
            if not 0 <= v < (1 << exps[r]):
                raise ParseError(f"entry {v} outside [0, 2^{exps[r]})", li + 1, j + 1)
            need = exps[r] - exps[j]
            if need > 0 and v % (1 << need):
                raise ParseError(
                    f"entry {v} must be divisible by 2^{need}", li + 1, j + 1
                )
            row.append(v)
        rows.append(tuple(row))
    return GroupEndo(g, tuple(rows)), i + n


def parse_endo(text: str) -> GroupEndo:
    lines = text.splitlines()
    f, nxt = parse_endo_block(lines, skip_blank(lines, 0))
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return f


def format_group(g: AbelianGroupSpec) -> str:
    return f"group {g}\n"


def format_endo(f: GroupEndo) -> str:
    lines = [f"group {f.group}"]
    for row in f.matrix:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
