"""Seeded random generators for property suites and batch drivers.

Group elements over R are built as products of elementary matrices with
polynomial entries, so membership holds by construction.
"""

import random

from .coeff import Poly, RationalFn
from .matrices import Cocharacter, GroupTag, MatK, realize, weyl_sp
from .symplectic import sp_levi, sp_unipotent

__all__ = [
    "random_cocharacter",
    "random_gl_k",
    "random_gl_r",
    "random_integral",
    "random_polynomial",
    "random_rational",
    "random_sl_k",
    "random_sp_k",
    "random_sp_r",
    "random_unit",
]


def _rng(rng):
    return rng if isinstance(rng, random.Random) else random.Random(rng)


def random_polynomial(rng, p, deg, lowest=0):
    rng = _rng(rng)
    coeffs = [0] * lowest + [rng.randrange(p) for _ in range(deg + 1 - lowest)]
    return RationalFn(Poly(coeffs, p))


def _random_poly(rng, p, deg, nonzero_constant=False):
    coeffs = [rng.randrange(p) for _ in range(deg + 1)]
    if nonzero_constant:
        coeffs[0] = rng.randrange(1, p)
    return Poly(coeffs, p)


def random_rational(rng, p, deg):
    """Numerator and denominator of degree <= deg; may be zero."""
    rng = _rng(rng)
    num = _random_poly(rng, p, deg)
    den = _random_poly(rng, p, deg)
    while den.is_zero():
        den = _random_poly(rng, p, deg)
    return RationalFn(num, den)


def random_integral(rng, p, deg):
    """Element of R: denominator with nonzero constant term."""
    rng = _rng(rng)
    return RationalFn(_random_poly(rng, p, deg), _random_poly(rng, p, deg, True))


def random_unit(rng, p, deg):
    rng = _rng(rng)
    return RationalFn(_random_poly(rng, p, deg, True), _random_poly(rng, p, deg, True))


def random_gl_k(rng, n, p, deg=4):
    """Matrix with independent random entries of F_p(t), resampled until invertible."""
    rng = _rng(rng)
    while True:
        m = MatK([[random_rational(rng, p, deg) for _ in range(n)] for _ in range(n)], p)
        if not m.det().is_zero():
            return m


def random_sl_k(rng, n, p, deg=4):
    m = random_gl_k(rng, n, p, deg)
    d = m.det().inverse()
    return m.scale_rows([d] + [m.one()] * (n - 1))


def _elementary(n, p, i, j, x):
    rows = [[RationalFn.from_int(int(a == b), p) for b in range(n)] for a in range(n)]
    rows[i][j] = x
    return MatK(rows, p)


def random_gl_r(rng, n, p, factors=6, deg=2, family="GL"):
    """Random element of GL_n(R) (or SL_n(R)).

    A product of elementary matrices with polynomial entries, a permutation,
    and for GL a diagonal matrix of units.
    """
    rng = _rng(rng)
    one = RationalFn.from_int(1, p)
    m = MatK.identity(n, p)
    if n > 1:
        for _ in range(factors):
            i, j = rng.sample(range(n), 2)
            m = m @ _elementary(n, p, i, j, random_polynomial(rng, p, deg))
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    pm = MatK(rows, p)
    if family.upper() == "SL":
        if pm.det() != one:
            pm = pm.scale_columns([-one] + [one] * (n - 1))
        return pm @ m
    units = [random_unit(rng, p, 1) for _ in range(n)]
    return pm @ m.scale_columns(units)


def _random_symmetric(rng, n, p, deg):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_polynomial(rng, p, deg)
    return MatK(rows, p)


def random_sp_r(rng, n, p, factors=4, deg=2):
    """Random element of Sp_2n(R) from unipotent, Levi and Weyl factors."""
    rng = _rng(rng)
    m = MatK.identity(2 * n, p)
    for _ in range(factors):
        m = m @ sp_unipotent(_random_symmetric(rng, n, p, deg), lower=rng.random() < 0.5)
    m = m @ sp_levi(random_gl_r(rng, n, p, factors=3, deg=deg))
    perm = list(range(n))
    rng.shuffle(perm)
    flips = [i for i in range(n) if rng.random() < 0.5]
    return weyl_sp(n, p, perm, flips) @ m


def random_cocharacter(rng, group, vmax):
    """Uniform weights in [-vmax, vmax] (in [0, vmax] for SP; SL adjusts the last)."""
    rng = _rng(rng)
    lo = 0 if group.family == "SP" else -vmax
    w = [rng.randint(lo, vmax) for _ in range(group.n)]
    if group.family == "SL":
        w[-1] = -sum(w[:-1])
    return Cocharacter(tuple(w), group)


def random_sp_k(rng, n, p, vmax=3, factors=3, deg=2):
    """``u1 @ realize(lam) @ u2`` with u_i random in Sp_2n(R); returns (g, lam)."""
    rng = _rng(rng)
    tag = GroupTag("SP", n, p)
    lam = random_cocharacter(rng, tag, vmax)
    g = random_sp_r(rng, n, p, factors, deg) @ realize(lam) @ random_sp_r(rng, n, p, factors, deg)
    return g, lam
