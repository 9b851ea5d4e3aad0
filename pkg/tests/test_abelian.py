"""Endomorphism rings of finite abelian 2-groups.

The independent reference here is the group itself: an endomorphism matrix is
checked by acting on actual tuples (x_0 mod 2^{k_0}, ...), so ring products
must agree with function composition.
"""

import itertools
import random

import pytest

from nilclean.abelian import (
    AbelianGroupSpec,
    GroupEndo,
    endo_nil_clean_decompose,
    format_endo,
    format_group,
    group_nil_clean_verdict,
    group_strongly_nil_clean_verdict,
    parse_endo,
    parse_group,
    strongly_witness,
)
from nilclean.decompose import nilpotency_index, verify_cert
from nilclean.gf2 import ParseError


def apply_endo(f, x):
    exps = f.group.exponents()
    return tuple(
        sum(f.matrix[i][j] * x[j] for j in range(len(x))) % (1 << exps[i])
        for i in range(len(x))
    )


def all_endos(group):
    """Every endomorphism of a small abelian 2-group."""
    exps = group.exponents()
    r = len(exps)
    choices = []
    for i, j in itertools.product(range(r), repeat=2):
        step = 1 << max(0, exps[i] - exps[j])
        choices.append([step * v for v in range((1 << exps[i]) // step)])
    for flat in itertools.product(*choices):
        yield GroupEndo(group, tuple(tuple(flat[i * r + j] for j in range(r)) for i in range(r)))


# ---------------------------------------------------------------------------
# group specs


def test_from_orders():
    g = AbelianGroupSpec.from_orders([4, 2])
    assert g.factors == ((2, 1), (2, 2))  # sorted
    assert str(g) == "2^1 2^2"
    assert g.rank == 2 and g.order == 8 and g.is_two_group
    assert g.exponents() == (1, 2)
    mixed = AbelianGroupSpec.from_orders([3, 2])
    assert mixed.factors == ((2, 1), (3, 1))
    assert not mixed.is_two_group
    for bad in ([6], [1], [0], [12]):
        with pytest.raises(ValueError, match="is not a prime power"):
            AbelianGroupSpec.from_orders(bad)
    with pytest.raises(ValueError, match="only defined for 2-groups"):
        AbelianGroupSpec.from_orders([3]).exponents()


def test_exponent_runs():
    g = AbelianGroupSpec.from_orders([2, 2, 4])
    assert g.exponents() == (1, 1, 2)
    assert g.exponent_runs() == [(0, 2, 1), (2, 1, 2)]
    assert AbelianGroupSpec.from_orders([8]).exponent_runs() == [(0, 1, 3)]


def test_verdict_table():
    table = {
        (2,): (True, True),
        (2, 4): (True, False),
        (8,): (True, True),
        (2, 2): (True, False),
        (3,): (False, False),
        (4, 4, 4): (True, False),
        (2, 3): (False, False),
        (3, 3): (False, False),
        (2, 8): (True, False),
    }
    for orders, (nc, strong) in table.items():
        g = AbelianGroupSpec.from_orders(orders)
        assert group_nil_clean_verdict(g) is nc, orders
        assert group_strongly_nil_clean_verdict(g) is strong, orders


# ---------------------------------------------------------------------------
# endomorphisms as matrices


def test_endo_validation():
    g = AbelianGroupSpec.from_orders([2, 4])
    GroupEndo(g, ((1, 1), (2, 3)))  # fine
    with pytest.raises(ValueError, match=r"entry \(1, 0\) = 1 must be divisible by 2\^1"):
        GroupEndo(g, ((1, 1), (1, 3)))
    with pytest.raises(ValueError, match=r"entry \(0, 0\) outside \[0, 2\^1\)"):
        GroupEndo(g, ((2, 1), (2, 3)))
    with pytest.raises(ValueError, match="only supported for 2-groups"):
        GroupEndo(AbelianGroupSpec.from_orders([3]), ((1,),))


def test_endo_count_z2_z4():
    g = AbelianGroupSpec.from_orders([2, 4])
    assert sum(1 for _ in all_endos(g)) == 32


def test_product_is_composition():
    rng = random.Random(13)
    g = AbelianGroupSpec.from_orders([2, 4, 4])
    exps = g.exponents()
    endos = list(all_endos(AbelianGroupSpec.from_orders([2, 4])))
    for f, h in itertools.product(endos[::5], endos[::7]):
        x = (1, 3)
        assert apply_endo(f * h, x) == apply_endo(f, apply_endo(h, x))
    # and on a bigger group with random picks
    pool = []
    while len(pool) < 8:
        m = []
        for i, ki in enumerate(exps):
            row = []
            for j, kj in enumerate(exps):
                step = 1 << max(0, ki - kj)
                row.append(step * rng.randrange((1 << ki) // step))
            m.append(tuple(row))
        pool.append(GroupEndo(g, tuple(m)))
    for f, h in itertools.product(pool, pool):
        for _ in range(4):
            x = tuple(rng.randrange(1 << k) for k in exps)
            assert apply_endo(f * h, x) == apply_endo(f, apply_endo(h, x))


def test_endo_ring_ops():
    g = AbelianGroupSpec.from_orders([2, 4])
    f = GroupEndo(g, ((1, 1), (2, 3)))
    assert GroupEndo.identity(g).matrix == ((1, 0), (0, 1))
    assert GroupEndo.zero(g).matrix == ((0, 0), (0, 0))
    assert (f * GroupEndo.identity(g)) == f
    assert (f + f - f) == f
    assert (f - f) == GroupEndo.zero(g)
    assert (f**2).matrix == ((1, 0), (0, 3))
    assert (3 * f).matrix == ((1, 1), (2, 1))
    assert f.mod2_blocks()[0].rows == (1,)
    assert f.mod2_blocks()[1].rows == (1,)


# ---------------------------------------------------------------------------
# nil-clean decompositions in End(G)


def test_endo_decompose_frozen():
    g = AbelianGroupSpec.from_orders([2, 4])
    f = GroupEndo(g, ((1, 1), (2, 3)))
    cert = endo_nil_clean_decompose(f)
    assert cert.e_part == GroupEndo.identity(g)
    assert cert.n_part.matrix == ((0, 1), (2, 2))
    assert cert.nilpotency_index == 3
    assert verify_cert(f, cert)

    g44 = AbelianGroupSpec.from_orders([4, 4])
    d = GroupEndo(g44, ((3, 0), (0, 1)))
    cert = endo_nil_clean_decompose(d)
    assert cert.e_part == GroupEndo.identity(g44)
    assert cert.n_part.matrix == ((2, 0), (0, 0))
    assert cert.nilpotency_index == 2


def test_endo_decompose_all_of_z2_z4():
    g = AbelianGroupSpec.from_orders([2, 4])
    seen = 0
    for f in all_endos(g):
        cert = endo_nil_clean_decompose(f)
        assert cert.e_part + cert.n_part == f
        assert cert.e_part * cert.e_part == cert.e_part
        assert verify_cert(f, cert)
        assert cert.nilpotency_index <= 3  # composition length 1 + 2
        seen += 1
    assert seen == 32


def test_endo_decompose_exhaustive_z2_z2():
    g = AbelianGroupSpec.from_orders([2, 2])
    for f in all_endos(g):
        assert verify_cert(f, endo_nil_clean_decompose(f))


def test_endo_decompose_random_mixed_exponents():
    rng = random.Random(21)
    g = AbelianGroupSpec.from_orders([2, 2, 4, 8])
    exps = g.exponents()
    for _ in range(25):
        m = []
        for i, ki in enumerate(exps):
            row = []
            for j, kj in enumerate(exps):
                step = 1 << max(0, ki - kj)
                row.append(step * rng.randrange((1 << ki) // step))
            m.append(tuple(row))
        f = GroupEndo(g, tuple(m))
        cert = endo_nil_clean_decompose(f)
        assert verify_cert(f, cert)
        assert cert.nilpotency_index <= sum(exps)


# ---------------------------------------------------------------------------
# strong witnesses


def test_strongly_witness():
    w = strongly_witness(AbelianGroupSpec.from_orders([2, 2]))
    assert w.matrix == ((0, 1), (1, 1))
    w = strongly_witness(AbelianGroupSpec.from_orders([4, 4]))
    assert w.matrix == ((0, 1), (1, 1))
    w = strongly_witness(AbelianGroupSpec.from_orders([2, 2, 4]))
    assert w.matrix == ((0, 1, 0), (1, 1, 0), (0, 0, 1))
    assert strongly_witness(AbelianGroupSpec.from_orders([2, 4])) is None
    assert strongly_witness(AbelianGroupSpec.from_orders([8])) is None
    with pytest.raises(ValueError):
        strongly_witness(AbelianGroupSpec.from_orders([3]))


def test_witness_is_a_non_unipotent_unit():
    g = AbelianGroupSpec.from_orders([4, 4])
    w = strongly_witness(g)
    # unit: invertible modulo 2
    for b in w.mod2_blocks():
        assert b.rank() == b.n_rows
    # not unipotent: w - 1 is not nilpotent
    delta = w - GroupEndo.identity(g)
    with pytest.raises(ValueError):
        nilpotency_index(delta, sum(g.exponents()))


# ---------------------------------------------------------------------------
# text format


def test_group_format_roundtrip():
    g = AbelianGroupSpec.from_orders([2, 4])
    assert format_group(g) == "group 2^1 2^2\n"
    assert parse_group(format_group(g)) == g
    assert parse_group("group 2^3\n").factors == ((2, 3),)


def test_group_parse_errors():
    with pytest.raises(ParseError, match="expected 'group' header"):
        parse_group("wat\n")
    with pytest.raises(ParseError, match="at least one cyclic factor"):
        parse_group("group\n")
    with pytest.raises(ParseError) as exc:
        parse_group("group 2^1 6^1\n")
    assert str(exc.value) == "line 1, column 3: '6^1' is not a prime power"
    with pytest.raises(ParseError, match="exponents must be positive"):
        parse_group("group 2^0\n")
    with pytest.raises(ParseError, match="exponent too large"):
        parse_group("group 2^9999\n")
    with pytest.raises(ParseError, match="bad factor '2\\^x'"):
        parse_group("group 2^x\n")
    with pytest.raises(ParseError, match="unexpected trailing content"):
        parse_group("group 2^1\nextra\n")


def test_endo_format_roundtrip():
    g = AbelianGroupSpec.from_orders([2, 4])
    f = GroupEndo(g, ((1, 1), (2, 3)))
    assert format_endo(f) == "group 2^1 2^2\n1 1\n2 3\n"
    assert parse_endo(format_endo(f)) == f


def test_endo_parse_errors():
    with pytest.raises(ParseError, match="need a 2-group"):
        parse_endo("group 3^1\n1\n")
    with pytest.raises(ParseError) as exc:
        parse_endo("group 2^1 2^2\n1 1\n1 3\n")
    assert str(exc.value) == "line 3, column 1: entry 1 must be divisible by 2^1"
    with pytest.raises(ParseError) as exc:
        parse_endo("group 2^1 2^2\n1 1\n2 4\n")
    assert str(exc.value) == "line 3, column 2: entry 4 outside [0, 2^2)"
    with pytest.raises(ParseError, match="missing endomorphism row"):
        parse_endo("group 2^1 2^2\n1 1\n")
    with pytest.raises(ParseError, match="expected 2 entries, got 3"):
        parse_endo("group 2^1 2^2\n1 1 1\n2 3\n")
    with pytest.raises(ParseError, match="invalid entry 'x'"):
        parse_endo("group 2^1 2^2\n1 x\n2 3\n")
