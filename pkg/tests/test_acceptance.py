"""Acceptance criteria, one test each, at their stated sizes and tolerances.

Every test prints a single ``criterion k: PASS|FAIL ...`` line (shown even
under output capture).  Run directly with ``python3 tests/test_acceptance.py``
for the summary alone.
"""

import random
import sys
import time

from cartan.coeff import RationalFn, TruncatedSeries, expand
from cartan.descent import approximate_decomposition, descend
from cartan.harness import BUDGET, coset_census, group_order, verify
from cartan.matrices import CartanDecomposition, Cocharacter, GroupTag, MatK, dominant_normalize, realize
from cartan.parsing import parse_coeff, render_coeff
from cartan.sampling import (
    random_gl_k,
    random_gl_r,
    random_rational,
    random_sp_k,
    random_sp_r,
)
from cartan.snf import divisor_invariant, snf_decompose
from cartan.symplectic import sp_decompose, sp_divisor_check

GRID = [(n, p) for n in (2, 3, 4) for p in (2, 3, 5)]

_lines = {}


def _report(k, ok, detail, capsys=None):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}"
    _lines[k] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


def _sl_version(g):
    d = g.det().inverse()
    return g.scale_rows([d] + [g.one()] * (g.size - 1))


_corpus_cache = {}


def corpus():
    """1,000 random matrices over F_p(t) per (n, p), entry degrees <= 4."""
    if not _corpus_cache:
        rng = random.Random(20240601)
        for n, p in GRID:
            _corpus_cache[n, p] = [random_gl_k(rng, n, p, 4) for _ in range(1000)]
    return _corpus_cache


def run_criterion_1(capsys=None):
    data = corpus()
    failures = []
    count = 0
    start = time.perf_counter()
    for (n, p), mats in data.items():
        for idx, g in enumerate(mats):
            for family, m in (("GL", g), ("SL", _sl_version(g))):
                dec = snf_decompose(m, family)
                report = verify(m, dec)
                count += 1
                if not report:
                    failures.append((family, n, p, idx, report.failed()))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    _report(1, ok, f"{count - len(failures)}/{count} GL+SL round trips verified in "
                   f"{elapsed:.1f}s (limit 60s)", capsys)
    return ok, failures, elapsed


def run_criterion_2(capsys=None):
    data = corpus()
    mismatches = []
    total = 0
    for (n, p), mats in data.items():
        for idx, g in enumerate(mats):
            total += 1
            if snf_decompose(g, "GL").lam.weights != divisor_invariant(g):
                mismatches.append((n, p, idx))
    ok = not mismatches
    _report(2, ok, f"{total - len(mismatches)}/{total} decompositions agree with the minor oracle",
            capsys)
    return ok, mismatches


def run_criterion_3(capsys=None):
    rng = random.Random(3)
    bad = []
    for k in range(500):
        n, p = GRID[k % len(GRID)]
        g = random_gl_k(rng, n, p, 4)
        h = random_gl_r(rng, n, p, factors=6, deg=3)
        h2 = random_gl_r(rng, n, p, factors=6, deg=3)
        if divisor_invariant(h @ g @ h2) != divisor_invariant(g):
            bad.append(k)
    ok = not bad
    _report(3, ok, f"{500 - len(bad)}/500 translates keep the divisor invariant", capsys)
    return ok, bad


def run_criterion_4(capsys=None):
    rng = random.Random(4)
    bad = []
    start = time.perf_counter()
    for k in range(300):
        p = (3, 5)[k % 2]
        g, lam = random_sp_k(rng, 2, p, vmax=4)
        expected = dominant_normalize(lam)[0]
        dec = sp_decompose(g, 2)
        checks = (
            dec.lam == expected,
            bool(verify(g, dec)),
            tuple(sp_divisor_check(g, 2)) == expected.weights,
        )
        if not all(checks):
            bad.append((k, checks))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    _report(4, ok, f"{300 - len(bad)}/300 Sp_4 inputs recovered, verified and paired in "
                   f"{elapsed:.1f}s (limit 60s)", capsys)
    return ok, bad, elapsed


def run_criterion_5(capsys=None):
    rng = random.Random(5)
    bad = []
    threshold_ok = 0
    for k in range(200):
        p = (2, 3, 5)[k % 3]
        g = random_gl_k(rng, 3, p, 3)
        try:
            approx = approximate_decomposition(g, "GL", 16)
            dec, cert = descend(g, approx)
        except ArithmeticError as exc:
            bad.append((k, repr(exc)))
            continue
        exact = dec.product() == g and dec.precision is None
        report = verify(g, dec)
        if cert.conjugated_valuation >= 0:
            threshold_ok += 1
        if not (exact and report):
            bad.append((k, report.failed()))
    ok = not bad and threshold_ok == 200
    _report(5, ok, f"{200 - len(bad)}/200 exact descents at N=16; threshold integrality held in "
                   f"{threshold_ok}/200", capsys)
    return ok, bad, threshold_ok


def run_criterion_6(capsys=None):
    start = time.perf_counter()
    res = coset_census(2, 2, 3, 1, seed=6)
    elapsed = time.perf_counter() - start
    within = group_order(2, 2, 3) <= BUDGET
    ok = within and res.consistent and elapsed < 120
    _report(6, ok, f"{len(res.rows)} classes, {len(res.false_merges)} false merges, "
                   f"{len(res.false_splits)} false splits, "
                   f"{res.translate_checks - res.translate_failures}/{res.translate_checks} "
                   f"translates in orbit, {elapsed:.1f}s (limit 120s)", capsys)
    return ok, res, elapsed


def _rand_series(rng, p, lo=-3, hi=3, max_len=8):
    v = rng.randint(lo, hi)
    length = rng.randint(1, max_len)
    coeffs = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(length - 1)]
    return TruncatedSeries(coeffs, v, v + length, p)


def _laws(rng):
    p = rng.choice((2, 3, 5, 7))
    x, y = random_rational(rng, p, 4), random_rational(rng, p, 4)
    # valuation additivity (and the ultrametric inequality)
    vx, vy = x.valuation(), y.valuation()
    val_ok = (x * y).valuation() == vx + vy
    s = (x + y).valuation()
    val_ok &= s >= min(vx, vy) and (vx == vy or s == min(vx, vy))
    # expand homomorphism on the coefficients both sides know
    hom_ok = True
    if not (x.is_zero() or y.is_zero()):
        N = rng.randint(max(vx, vy) + 1, max(vx, vy) + 8)
        ex, ey = expand(x, N), expand(y, N)
        hom_ok = (ex * ey).agrees(expand(x * y, (ex * ey).precision)) and \
            (ex + ey).agrees(expand(x + y, N) if (x + y).valuation() < N else
                             TruncatedSeries.zero(p, N))
    # precision propagation: stated rules, and the known digits are right
    a, b = _rand_series(rng, p), _rand_series(rng, p)
    ra, rb = a.to_rational(), b.to_rational()
    prod, tot, inv = a * b, a + b, a.inverse()
    va, vb, na, nb = a.valuation(), b.valuation(), a.precision, b.precision
    prec_ok = prod.precision == min(va + nb, vb + na) and tot.precision == min(na, nb) \
        and inv.precision == na - 2 * va
    prec_ok &= prod.agrees(_exp(ra * rb, prod.precision)) and \
        tot.agrees(_exp(ra + rb, tot.precision)) and inv.agrees(_exp(ra.inverse(), inv.precision))
    # parse / render
    parse_ok = parse_coeff(render_coeff(x), p) == x
    return val_ok, hom_ok, prec_ok, parse_ok


def _exp(x, N):
    if x.is_zero() or x.valuation() >= N:
        return TruncatedSeries.zero(x.p, N)
    return expand(x, N)


def run_criterion_7(capsys=None):
    rng = random.Random(7)
    passed = [0, 0, 0, 0]
    trials = 10_000
    for _ in range(trials):
        for i, ok in enumerate(_laws(rng)):
            passed[i] += bool(ok)
    ok = all(c == trials for c in passed)
    names = ("valuation", "expand", "precision", "parse/render")
    _report(7, ok, ", ".join(f"{n} {c}/{trials}" for n, c in zip(names, passed)), capsys)
    return ok, passed


def _tamper_corpus(rng, count):
    """Decompositions with non-constant weights across GL, SL and Sp."""
    out = []
    while len(out) < count:
        kind = len(out) % 3
        p = rng.choice((3, 5))
        if kind == 2:
            g, _ = random_sp_k(rng, 2, p, vmax=3)
            dec = sp_decompose(g, 2)
        else:
            family = "GL" if kind == 0 else "SL"
            tag = GroupTag(family, 3, p)
            w = [rng.randint(-3, 3) for _ in range(3)]
            if family == "SL":
                w[-1] = -sum(w[:-1])
            lam = Cocharacter(tuple(w), tag)
            g = random_gl_r(rng, 3, p, family=family) @ realize(lam) @ \
                random_gl_r(rng, 3, p, family=family)
            dec = snf_decompose(g, family)
        if len(set(dec.lam.weights)) > 1 or (dec.group.family == "SP" and any(dec.lam.weights)):
            out.append((g, dec))
    return out


def _tamper_membership(dec, rng):
    # h1 <- h1 D, h2 <- D^-1 h2 with D = diag(t^-1, t, 1, ...): same product, h1 leaves G(R)
    size = dec.h1.size
    p = dec.group.p
    if dec.group.family == "SP":
        n = size // 2
        ks = [0] * size
        ks[0], ks[n] = -1, 1
    else:
        ks = [-1, 1] + [0] * (size - 2)
    d = [RationalFn.monomial(1, k, p) for k in ks]
    d_inv = [x.inverse() for x in d]
    return CartanDecomposition(dec.h1.scale_columns(d), dec.lam, dec.h2.scale_rows(d_inv), dec.group)


def _tamper_reconstruction(dec, rng):
    # h2 <- h2 E with E a nontrivial element of G(R): membership survives
    size = dec.h2.size
    p = dec.group.p
    if dec.group.family == "SP":
        e = random_sp_r(rng, size // 2, p, factors=1)
        while e == MatK.identity(size, p):
            e = random_sp_r(rng, size // 2, p, factors=1)
    else:
        rows = [[int(i == j) for j in range(size)] for i in range(size)]
        i, j = rng.sample(range(size), 2)
        rows = [[RationalFn.from_int(x, p) for x in r] for r in rows]
        rows[i][j] = RationalFn.monomial(1, rng.randint(0, 2), p)
        e = MatK(rows, p)
    return CartanDecomposition(dec.h1, dec.lam, dec.h2 @ e, dec.group)


def _tamper_dominance(dec, rng):
    w = list(dec.lam.weights)
    if w[::-1] != w and (dec.group.family != "SP" or rng.random() < 0.5):
        w = w[::-1]
    else:  # only reachable for SP, whose corpus has a nonzero weight
        k = max(i for i, x in enumerate(w) if x)
        w[k] = -w[k]
    return CartanDecomposition(dec.h1, Cocharacter(tuple(w), dec.group), dec.h2, dec.group)


def run_criterion_8(capsys=None):
    rng = random.Random(8)
    data = _tamper_corpus(rng, 100)
    classes = (
        ("membership", _tamper_membership, ("h1_membership", "h2_membership")),
        ("reconstruction", _tamper_reconstruction, ("reconstruction",)),
        ("dominance", _tamper_dominance, ("dominance",)),
    )
    detected = {}
    clean = sum(bool(verify(g, dec)) for g, dec in data)
    for name, tamper, clauses in classes:
        hits = 0
        for g, dec in data:
            report = verify(g, tamper(dec, rng))
            hits += any(not report[c].passed for c in clauses)
        detected[name] = hits
    ok = clean == 100 and all(v == 100 for v in detected.values())
    _report(8, ok, ", ".join(f"{k} {v}/100" for k, v in detected.items()) +
            f" detected; untampered {clean}/100 pass", capsys)
    return ok, detected


def test_criterion_1_gl_sl_round_trip(capsys):
    ok, failures, elapsed = run_criterion_1(capsys)
    assert not failures, failures[:5]
    assert elapsed < 60


def test_criterion_2_oracle_agreement(capsys):
    ok, mismatches = run_criterion_2(capsys)
    assert not mismatches, mismatches[:5]


def test_criterion_3_double_coset_invariance(capsys):
    ok, bad = run_criterion_3(capsys)
    assert not bad


def test_criterion_4_symplectic_suite(capsys):
    ok, bad, elapsed = run_criterion_4(capsys)
    assert not bad, bad[:5]
    assert elapsed < 60


def test_criterion_5_descent_exactness(capsys):
    ok, bad, threshold_ok = run_criterion_5(capsys)
    assert not bad, bad[:5]
    assert threshold_ok == 200


def test_criterion_6_census(capsys):
    ok, res, elapsed = run_criterion_6(capsys)
    assert group_order(2, 2, 3) <= BUDGET
    assert not res.false_merges and not res.false_splits
    assert res.translate_failures == 0
    assert elapsed < 120


def test_criterion_7_coefficient_laws(capsys):
    ok, passed = run_criterion_7(capsys)
    assert passed == [10_000] * 4


def test_criterion_8_negative_paths(capsys):
    ok, detected = run_criterion_8(capsys)
    assert ok, detected


if __name__ == "__main__":
    runs = [run_criterion_1, run_criterion_2, run_criterion_3, run_criterion_4,
            run_criterion_5, run_criterion_6, run_criterion_7, run_criterion_8]
    results = [run()[0] for run in runs]
    sys.exit(0 if all(results) else 1)
