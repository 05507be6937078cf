"""Independent reference implementations used only by the tests."""

import random
from fractions import Fraction
from itertools import combinations

PRIME = (1 << 61) - 1


def dense_rank_mod_p(dense, p=PRIME) -> int:
    """Textbook row reduction over F_p on a dense list-of-lists copy."""
    a = [[int(v) % p for v in row] for row in dense]
    nrows, ncols = len(a), len(a[0]) if a else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        a[rank] = [v * inv % p for v in a[rank]]
        for i in range(nrows):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def dense_rref(dense):
    """Textbook Gauss-Jordan over Fraction; returns the nonzero reduced rows."""
    a = [[Fraction(v) for v in row] for row in dense]
    nrows, ncols = len(a), len(a[0]) if a else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        lead = a[rank][c]
        a[rank] = [v / lead for v in a[rank]]
        for i in range(nrows):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return a[:rank]


def random_low_rank(rng: random.Random, nrows: int, ncols: int, lo: int = -3, hi: int = 3):
    """Dense integer matrix of random rank built as a product of two factors."""
    k = rng.randint(1, min(nrows, ncols))
    left = [[rng.randint(lo, hi) for _ in range(k)] for _ in range(nrows)]
    right = [[rng.randint(lo, hi) if rng.random() < 0.4 else 0 for _ in range(ncols)] for _ in range(k)]
    return [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(ncols)] for i in range(nrows)]


def minor_weight_sum(matrix_vars, rho) -> int:
    """Sum of the lowest rho-weights of the 2x2 minors of a 2 x n matrix of variables.

    Each minor x_a x_d - x_b x_c is a binomial; its lowest weight is the
    smaller of the two monomial weights.
    """
    top, bot = matrix_vars
    total = 0
    for i, j in combinations(range(len(top)), 2):
        w1 = rho[top[i]] + rho[bot[j]]
        w2 = rho[top[j]] + rho[bot[i]]
        total += min(w1, w2)
    return total
