import random

import pytest
from hypothesis import given, strategies as st

from cartan.errors import DecompositionError, FormViolation, PairingError
from cartan.harness import verify
from cartan.matrices import (
    Cocharacter, GroupTag, MatK, dominant_normalize, is_member, realize,
    symplectic_form,
)
from cartan.parsing import parse_coeff, parse_matrix
from cartan.sampling import random_sp_k, random_sp_r
from cartan.snf import divisor_invariant
from cartan.symplectic import (
    sp_decompose, sp_divisor_check, sp_levi, sp_transvection, sp_unipotent,
)

odd_p = st.sampled_from([3, 5, 7])


def torus(p, d):
    return realize(Cocharacter(tuple(d), GroupTag("SP", len(d), p)))


def preserves_form(h, n):
    jj = symplectic_form(n, h.p)
    return h.transpose() @ jj @ h == jj


class TestGenerators:
    def test_unipotent_and_levi(self):
        p = 5
        s = parse_matrix("t,1+t;1+t,t^2", p)
        for lower in (False, True):
            assert preserves_form(sp_unipotent(s, lower), 2)
        assert preserves_form(sp_levi(parse_matrix("1,t;0,1+t", p)), 2)

    def test_unipotent_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sp_unipotent(parse_matrix("0,1;0,0", 5))

    def test_transvection(self):
        p = 7
        u = [parse_coeff(x, p) for x in ("1", "t", "0", "1+t")]
        assert preserves_form(sp_transvection(u, parse_coeff("3*t", p)), 2)

    @given(odd_p, st.integers(1, 3), st.integers(0, 10**6))
    def test_random_sp_r_is_integral_symplectic(self, p, n, seed):
        h = random_sp_r(random.Random(seed), n, p)
        assert is_member(h, GroupTag("SP", n, p), "R")


class TestExamples:
    def test_identity(self):
        dec = sp_decompose(MatK.identity(2, 5), 1)
        assert dec.lam.weights == (0,)
        assert dec.h1 == dec.h2 == MatK.identity(2, 5)

    def test_rank_one_torus(self):
        dec = sp_decompose(parse_matrix("t^3,0;0,t^-3", 5), 1)
        assert dec.lam.weights == (3,)

    def test_known_answer(self):
        rng = random.Random(11)
        p = 5
        g = random_sp_r(rng, 2, p) @ torus(p, (2, 1)) @ random_sp_r(rng, 2, p)
        dec = sp_decompose(g, 2)
        assert dec.lam.weights == (2, 1)
        assert verify(g, dec)

    def test_form_violation_reports_position(self):
        g = parse_matrix("t,0;0,t", 5)
        with pytest.raises(FormViolation) as info:
            sp_decompose(g, 1)
        assert info.value.position == (0, 1)

    def test_even_characteristic_rejected(self):
        with pytest.raises(DecompositionError):
            sp_decompose(MatK.identity(2, 2), 1)

    def test_odd_size_rejected(self):
        with pytest.raises(DecompositionError):
            sp_decompose(MatK.identity(3, 5))


class TestDivisorCheck:
    def test_examples(self):
        assert sp_divisor_check(parse_matrix("t^2,0;0,t^-2", 5), 1) == (2,)
        g = torus(5, (3, 1))
        assert divisor_invariant(g) == (3, 1, -1, -3)
        assert sp_divisor_check(g, 2) == (3, 1)

    def test_unpaired_divisors(self):
        with pytest.raises(PairingError):
            sp_divisor_check(parse_matrix("t^2,0;0,t^-1", 5), 1)


class TestProperties:
    @given(odd_p, st.integers(1, 3), st.integers(0, 10**6))
    def test_recovers_planted_cocharacter(self, p, n, seed):
        g, lam = random_sp_k(random.Random(seed), n, p, vmax=3)
        dec = sp_decompose(g, n)
        assert dec.lam == dominant_normalize(lam)[0]
        assert dec.lam.is_dominant()
        assert dec.product() == g
        assert is_member(dec.h1, dec.group, "R") and is_member(dec.h2, dec.group, "R")
        assert sp_divisor_check(g, n) == dec.lam.weights

    @given(odd_p, st.lists(st.integers(-4, 4), min_size=1, max_size=3))
    def test_idempotent_on_torus(self, p, d):
        dec = sp_decompose(torus(p, d), len(d))
        assert dec.lam.weights == tuple(sorted((abs(x) for x in d), reverse=True))
        assert dec.lam == dominant_normalize(Cocharacter(tuple(d), dec.group))[0]

    @given(odd_p, st.integers(0, 10**6))
    def test_gl_divisors_pair(self, p, seed):
        g, _ = random_sp_k(random.Random(seed), 2, p)
        d = divisor_invariant(g)
        assert d == tuple(-x for x in reversed(d))

    @given(odd_p, st.integers(0, 10**6))
    def test_completion_path(self, p, seed):
        g, lam = random_sp_k(random.Random(seed), 2, p, vmax=2)
        approx = sp_decompose(g.expand(30), 2)
        assert approx.lam == dominant_normalize(lam)[0]
        assert approx.precision == 30
        assert verify(g, approx)
