"""Acceptance gate: one test per criterion, each with its runtime budget.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail line per
criterion; add ``-s`` to see the measured timings.  Every check is exact —
the rings are finite, so there are no tolerances anywhere.
"""

import random
import time

from nilclean import oracle
from nilclean.abelian import (
    AbelianGroupSpec,
    GroupEndo,
    endo_nil_clean_decompose,
    group_nil_clean_verdict,
    group_strongly_nil_clean_verdict,
    strongly_witness,
)
from nilclean.canonical import frobenius_form
from nilclean.decompose import (
    NotStronglyNilCleanError,
    companion_nil_clean,
    is_strongly_nil_clean,
    nil_clean_decompose,
    nilpotency_index,
    strongly_nil_clean_decompose,
    verify_cert,
)
from nilclean.gf2 import Gf2Matrix, Gf2Poly
from nilclean.rings import Mod2kMatrix, nil_clean_decompose_mod2k, reduce_mod2


def all_square(n):
    mask = (1 << n) - 1
    for code in range(1 << (n * n)):
        yield Gf2Matrix(n, n, tuple((code >> (i * n)) & mask for i in range(n)))


def report(num, elapsed, budget, detail):
    line = f"criterion {num}: PASS in {elapsed:.2f}s (budget {budget:.0f}s) — {detail}"
    print(line)
    assert elapsed < budget, line.replace("PASS", "TOO SLOW")


def test_criterion_1_exhaustive_3x3_and_4x4():
    start = time.perf_counter()
    checked = 0
    bad = []
    for n in (3, 4):
        for a in all_square(n):
            cert = nil_clean_decompose(a)
            e, nil = cert.e_part, cert.n_part
            sq = nil * nil
            nn = sq * nil if n == 3 else sq * sq  # N^n, exactly
            if e + nil != a or e * e != e or not nn.is_zero():
                bad.append(a)
            checked += 1
    assert not bad
    assert checked == 512 + 65536
    report(1, time.perf_counter() - start, 5, f"{checked} matrices certified")


def test_criterion_2_companion_cases_degree_le_8():
    start = time.perf_counter()
    checked = 0
    for d in range(1, 9):
        for low in range(1 << d):
            p = Gf2Poly((1 << d) | low)
            cert = companion_nil_clean(p)  # verifies internally, raises on any slip
            assert cert.n_part.char_poly() == Gf2Poly.t_power(d)
            checked += 1
    report(2, time.perf_counter() - start, 1, f"{checked} monic polynomials")


def test_criterion_3_f4_negative_control():
    start = time.perf_counter()
    omega, omega1 = 2, 3
    assert oracle.f4_negative_check(1) == [((omega,),), ((omega1,),)]
    bad = oracle.f4_negative_check(2)
    assert bad
    assert ((omega, 0), (0, omega)) in bad
    report(3, time.perf_counter() - start, 1, f"1x1 exact, 2x2 found {len(bad)}")


def test_criterion_4_random_256x256():
    start = time.perf_counter()
    rng = random.Random(256)
    for _ in range(100):
        a = Gf2Matrix.random(256, 256, rng)
        assert verify_cert(a, nil_clean_decompose(a))
    report(4, time.perf_counter() - start, 10, "100 random 256x256 verified")


def test_criterion_5_mod2k_lifting():
    start = time.perf_counter()
    for code in range(256):
        vals = [(code >> (2 * t)) & 3 for t in range(4)]
        a = Mod2kMatrix(2, 2, ((vals[0], vals[1]), (vals[2], vals[3])))
        cert = nil_clean_decompose_mod2k(a)
        assert verify_cert(a, cert)
        assert cert.nilpotency_index <= 4  # so N^(n*k) = 0
        assert reduce_mod2(cert.e_part) == nil_clean_decompose(reduce_mod2(a)).e_part
    rng = random.Random(2000)
    for _ in range(2000):
        a = Mod2kMatrix(3, 3, tuple(tuple(rng.randrange(8) for _ in range(3)) for _ in range(3)))
        cert = nil_clean_decompose_mod2k(a)
        assert verify_cert(a, cert)
        assert cert.nilpotency_index <= 9
        assert reduce_mod2(cert.e_part) == nil_clean_decompose(reduce_mod2(a)).e_part
    report(5, time.perf_counter() - start, 2, "256 exhaustive mod 4 + 2000 random mod 8")


def test_criterion_6_strong_criterion_agreement():
    start = time.perf_counter()
    positives = 0
    for n in (1, 2, 3):
        verdicts, count = oracle.brute_strongly_nil_clean(n)
        mask = (1 << n) - 1
        for code, verdict in enumerate(verdicts):
            a = Gf2Matrix(n, n, tuple((code >> (i * n)) & mask for i in range(n)))
            assert verdict == is_strongly_nil_clean(a)
            if verdict:
                cert = strongly_nil_clean_decompose(a)
                assert cert.e_part * cert.n_part == cert.n_part * cert.e_part
                assert verify_cert(a, cert)
                positives += 1
            else:
                try:
                    strongly_nil_clean_decompose(a)
                except NotStronglyNilCleanError:
                    pass
                else:
                    raise AssertionError(f"decompose accepted a negative case {a.rows}")
        if n == 2:
            assert count == 14 and len(verdicts) == 16
    report(6, time.perf_counter() - start, 5, f"{positives} commuting certificates")


def test_criterion_7_groups():
    start = time.perf_counter()
    g24 = AbelianGroupSpec.from_orders([2, 4])
    import itertools

    exps = g24.exponents()
    r = len(exps)
    choices = []
    for i, j in itertools.product(range(r), repeat=2):
        step = 1 << max(0, exps[i] - exps[j])
        choices.append([step * v for v in range((1 << exps[i]) // step)])
    count = 0
    for flat in itertools.product(*choices):
        f = GroupEndo(g24, tuple(tuple(flat[i * r + j] for j in range(r)) for i in range(r)))
        assert verify_cert(f, endo_nil_clean_decompose(f))
        count += 1
    assert count == 32

    table = {
        (2,): (True, True),
        (2, 4): (True, False),
        (8,): (True, True),
        (2, 2): (True, False),
        (3,): (False, False),
    }
    for orders, (nc, strong) in table.items():
        g = AbelianGroupSpec.from_orders(orders)
        assert group_nil_clean_verdict(g) is nc
        assert group_strongly_nil_clean_verdict(g) is strong

    g22 = AbelianGroupSpec.from_orders([2, 2])
    w = strongly_witness(g22)
    assert w is not None
    for b in w.mod2_blocks():
        assert b.rank() == b.n_rows  # a unit
    delta = w - GroupEndo.identity(g22)
    try:
        nilpotency_index(delta, sum(g22.exponents()))
    except ValueError:
        pass  # not unipotent, as required
    else:
        raise AssertionError("witness is unipotent")
    report(7, time.perf_counter() - start, 1, "32 endomorphisms + verdict table + witness")


def test_criterion_8_frobenius_invariants():
    start = time.perf_counter()
    rng = random.Random(16)

    def check(a):
        form = frobenius_form(a)
        assert a * form.transform == form.transform * form.block_matrix()
        prod = Gf2Poly.one()
        prev = None
        for f in form.invariant_factors:
            if prev is not None:
                assert prev.divides(f)
            prev = f
            prod = prod * f
        assert prod == a.char_poly()
        return form

    for n in (1, 2, 3):
        for a in all_square(n):
            check(a)
    for _ in range(1000):
        a = Gf2Matrix.random(16, 16, rng)
        form = check(a)
        while True:
            p = Gf2Matrix.random(16, 16, rng)
            if p.rank() == 16:
                break
        conj = frobenius_form(p * a * p.inverse())
        assert conj.invariant_factors == form.invariant_factors
    report(8, time.perf_counter() - start, 5, "exhaustive n<=3 + 1000 random n=16 + conjugation")
