"""Verification of decompositions and a brute-force double-coset census."""

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .coeff import RationalFn, expand
from .errors import BudgetExceeded
from .matrices import Cocharacter, GroupTag, MatK, MatKhat, Ring, is_member, realize
from .parsing import render_matrix
from .sampling import random_gl_r, random_polynomial
from .snf import divisor_invariant

__all__ = [
    "CensusResult",
    "ClauseResult",
    "VerificationReport",
    "coset_census",
    "group_order",
    "verify",
]


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    witness: str = ""
    position: tuple = None


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail per clause; truthy when every clause passes."""

    clauses: tuple

    def __bool__(self):
        return all(c.passed for c in self.clauses)

    @property
    def passed(self):
        return bool(self)

    def __getitem__(self, name):
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self):
        return [c.name for c in self.clauses if not c.passed]

    def lines(self):
        out = []
        for c in self.clauses:
            line = f"{c.name}: {'pass' if c.passed else 'FAIL'}"
            if not c.passed:
                line += f" ({c.witness})"
            out.append(line)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _reconstruction(g, dec):
    if g.size != dec.h1.size or g.size != dec.h2.size:
        return ClauseResult("reconstruction", False, "shape mismatch")
    if g.size != dec.group.size:
        return ClauseResult("reconstruction", False, f"g does not have size {dec.group.size}")
    try:
        prod = dec.product()
    except (TypeError, ValueError) as exc:
        return ClauseResult("reconstruction", False, str(exc))
    if isinstance(prod, MatKhat):
        target = g if isinstance(g, MatKhat) else g.expand(prod.precision)
        for (i, j), x in prod.entries():
            if not x.agrees(target[i, j]):
                return ClauseResult(
                    "reconstruction", False,
                    f"entry {(i, j)}: product {x} disagrees with g {target[i, j]}", (i, j))
        return ClauseResult("reconstruction", True)
    for (i, j), x in prod.entries():
        if x != g[i, j]:
            return ClauseResult(
                "reconstruction", False, f"entry {(i, j)}: product {x} != g {g[i, j]}", (i, j))
    return ClauseResult("reconstruction", True)


def _membership(name, h, group):
    ring = Ring.RHAT if isinstance(h, MatKhat) else Ring.R
    try:
        res = is_member(h, group, ring)
    except ArithmeticError as exc:
        return ClauseResult(name, False, str(exc))
    if res:
        return ClauseResult(name, True)
    where = f" at entry {res.position}" if res.position is not None else ""
    return ClauseResult(name, False, res.reason + where, res.position)


def _dominance(lam, group):
    w = lam.weights
    if lam.group != group:
        return ClauseResult("dominance", False, f"cocharacter of {lam.group}, expected {group}")
    for i in range(len(w) - 1):
        if w[i] < w[i + 1]:
            return ClauseResult("dominance", False, f"d_{i + 1} = {w[i]} < d_{i + 2} = {w[i + 1]}")
    if group.family == "SL" and sum(w):
        return ClauseResult("dominance", False, f"weights sum to {sum(w)}")
    if group.family == "SP" and w and w[-1] < 0:
        return ClauseResult("dominance", False, f"d_{len(w)} = {w[-1]} < 0")
    return ClauseResult("dominance", True)


def verify(g, dec):
    """Check a ``CartanDecomposition`` of ``g`` clause by clause.  Never raises."""
    return VerificationReport((
        _reconstruction(g, dec),
        _membership("h1_membership", dec.h1, dec.group),
        _membership("h2_membership", dec.h2, dec.group),
        _dominance(dec.lam, dec.group),
    ))


# --- census -----------------------------------------------------------------

BUDGET = 10**7
STATE_LIMIT = 2**26


def group_order(n, p, N):
    """Order of GL_n(R / t^N)."""
    order = 1
    for k in range(n):
        order *= p**n - p**k
    return order * p ** (n * n * (N - 1))


@dataclass
class CensusResult:
    """Double-coset classes found by closure, compared with the divisor invariant.

    ``rows`` holds (dominant d, class size, representative) per class.  Sizes
    count the orbit inside M_n(R / t^level) after scaling by t^vmax.
    """

    n: int
    p: int
    N: int
    vmax: int
    level: int
    rows: list = field(default_factory=list)
    false_merges: list = field(default_factory=list)
    false_splits: list = field(default_factory=list)
    translate_checks: int = 0
    translate_failures: int = 0

    @property
    def consistent(self):
        return not (self.false_merges or self.false_splits or self.translate_failures)

    def to_tsv(self):
        lines = ["d\tsize\trepresentative"]
        for d, size, rep in self.rows:
            lines.append(f"{','.join(str(x) for x in d)}\t{size}\t{rep}")
        return "\n".join(lines) + "\n"


class _Codec:
    # matrices over F_p[t]/t^L as integers, digits ordered (row, column, degree)
    def __init__(self, n, p, level):
        self.n, self.p, self.level = n, p, level
        self.count = p ** (n * n * level)
        self.powers = p ** np.arange(n * n * level, dtype=np.int64)

    def encode(self, digits):
        return digits.reshape(len(digits), -1) @ self.powers

    def decode(self, codes):
        out = np.empty((len(codes), self.n * self.n * self.level), dtype=np.int64)
        rest = codes.copy()
        for k in range(out.shape[1]):
            rest, out[:, k] = np.divmod(rest, self.p)
        return out.reshape(len(codes), self.n, self.n, self.level)

    def digits_of(self, a):
        # a: integral MatK
        n, level = self.n, self.level
        d = np.zeros((1, n, n, level), dtype=np.int64)
        for (i, j), x in a.entries():
            if x.is_zero() or x.valuation() >= level:
                continue
            s = expand(x, level)
            for k in range(level):
                d[0, i, j, k] = s.coefficient(k)
        return d


def _shift(block, k, level):
    # multiply polynomial digits (last axis) by t^k mod t^level
    if k == 0:
        return block
    out = np.zeros_like(block)
    out[..., k:] = block[..., : level - k]
    return out


def _generators(n, p, level):
    """Row/column operations generating GL_n(R / t^level) acting on both sides."""
    gens = []
    g = next(c for c in range(1, p) if len({pow(c, k, p) for k in range(p - 1)}) == p - 1)

    def row_add(i, j, k):
        def act(x):
            y = x.copy()
            y[:, i, :, :] = (y[:, i, :, :] + _shift(x[:, j, :, :], k, level)) % p
            return y
        return act

    def col_add(i, j, k):
        def act(x):
            y = x.copy()
            y[:, :, j, :] = (y[:, :, j, :] + _shift(x[:, :, i, :], k, level)) % p
            return y
        return act

    def row_unit(i, k):
        def act(x):
            y = x.copy()
            y[:, i, :, :] = (y[:, i, :, :] + _shift(x[:, i, :, :], k, level)) % p
            return y
        return act

    def col_unit(j, k):
        def act(x):
            y = x.copy()
            y[:, :, j, :] = (y[:, :, j, :] + _shift(x[:, :, j, :], k, level)) % p
            return y
        return act

    def row_scale(i):
        def act(x):
            y = x.copy()
            y[:, i, :, :] = (y[:, i, :, :] * g) % p
            return y
        return act

    def col_scale(j):
        def act(x):
            y = x.copy()
            y[:, :, j, :] = (y[:, :, j, :] * g) % p
            return y
        return act

    for i, j in product(range(n), repeat=2):
        if i != j:
            for k in range(level):
                gens += [row_add(i, j, k), col_add(i, j, k)]
    for i in range(n):
        for k in range(1, level):
            gens += [row_unit(i, k), col_unit(i, k)]
        if p > 2:
            gens += [row_scale(i), col_scale(i)]
    return gens


def _check_budget(n, p, N, vmax):
    if n < 1 or N < 1 or vmax < 0:
        raise ValueError("census needs n >= 1, N >= 1 and vmax >= 0")
    if group_order(n, p, N) > BUDGET:
        first = next(k for k in range(1, N + 1) if group_order(n, p, k) > BUDGET)
        raise BudgetExceeded(
            f"|GL_{n}(F_{p}[t]/t^N)| exceeds {BUDGET:.0e} already at N = {first} "
            f"(requested N = {N})"
        )
    level = N + 2 * vmax
    if p ** (n * n * level) > STATE_LIMIT:
        raise BudgetExceeded(
            f"state space p^(n^2 (N + 2 vmax)) = {p}^{n * n * level} exceeds {STATE_LIMIT}"
        )
    return level


def _seeds(n, p, vmax, level, rng, per_class):
    tag = GroupTag("GL", n, p)
    seeds = []
    weights = product(range(-vmax, vmax + 1), repeat=n)
    # dominant weights first so each class is represented by a sorted torus element
    for d in sorted(weights, key=lambda d: list(d) != sorted(d, reverse=True)):
        base = realize(Cocharacter(d, tag))
        seeds.append(base)
        for _ in range(per_class):
            rows = [[RationalFn.from_int(int(i == j), p) for j in range(n)] for i in range(n)]
            lower = rng.random() < 0.5
            for i, j in product(range(n), repeat=2):
                if (i > j if lower else i < j) and rng.random() < 0.75:
                    rows[i][j] = random_polynomial(rng, p, level - 1)
            u = MatK(rows, p)
            seeds.append(base @ u if rng.random() < 0.5 else u @ base)
    return seeds


def coset_census(n, p, N, vmax, seed=0, per_class=2, translates=500):
    """Enumerate double cosets of GL_n(R) on matrices with weights in [-vmax, vmax].

    Seeds ``realize(d) @ u`` (and ``u @ realize(d)``) are scaled by t^vmax,
    reduced mod t^(N + 2 vmax) and closed under row and column operations
    that generate GL_n(R / t^(N + 2 vmax)).  Orbit equality is then compared
    with equality of ``divisor_invariant``; ``translates`` random products
    ``h @ g @ h'`` with h, h' in GL_n(R) are checked to land in g's orbit.
    """
    level = _check_budget(n, p, N, vmax)
    rng = random.Random(seed)
    codec = _Codec(n, p, level)
    gens = _generators(n, p, level)
    scale = RationalFn.monomial(1, vmax, p)

    def code_of(g):
        a = g.map(lambda x: x * scale)
        return int(codec.encode(codec.digits_of(a))[0])

    label = np.full(codec.count, -1, dtype=np.int32)
    seeds = _seeds(n, p, vmax, level, rng, per_class)
    seed_label, invariants, sizes, reps = [], [], {}, {}
    for g in seeds:
        c = code_of(g)
        inv = divisor_invariant(g)
        invariants.append(inv)
        if label[c] < 0:
            cls = len(reps)
            reps[cls] = g
            label[c] = cls
            frontier = np.array([c], dtype=np.int64)
            count = 1
            while len(frontier) and gens:  # GL_1(F_2) at level 1 is trivial
                digits = codec.decode(frontier)
                new = np.unique(np.concatenate([codec.encode(act(digits)) for act in gens]))
                new = new[label[new] < 0]
                label[new] = cls
                count += len(new)
                frontier = new
            sizes[cls] = count
        seed_label.append(int(label[c]))

    result = CensusResult(n, p, N, vmax, level)
    by_label = {}
    for g, lab, inv in zip(seeds, seed_label, invariants):
        by_label.setdefault(lab, set()).add(inv)
    for lab, invs in sorted(by_label.items()):
        if len(invs) > 1:
            result.false_merges.append((lab, sorted(invs)))
    by_inv = {}
    for lab, inv in zip(seed_label, invariants):
        by_inv.setdefault(inv, set()).add(lab)
    for inv, labs in sorted(by_inv.items()):
        if len(labs) > 1:
            result.false_splits.append((inv, sorted(labs)))
    for lab in sorted(reps):
        inv = invariants[seed_label.index(lab)]
        result.rows.append((inv, sizes[lab], render_matrix(reps[lab])))
    result.rows.sort(key=lambda r: tuple(-x for x in r[0]))

    for _ in range(translates):
        k = rng.randrange(len(seeds))
        h = random_gl_r(rng, n, p, factors=4, deg=2)
        h2 = random_gl_r(rng, n, p, factors=4, deg=2)
        result.translate_checks += 1
        if label[code_of(h @ seeds[k] @ h2)] != seed_label[k]:
            result.translate_failures += 1
    return result
