"""Shared test helpers: random complexes and independent homology oracles."""

import random

from sympy import Matrix as SymMatrix
from sympy import ZZ
from sympy.matrices.normalforms import invariant_factors as sym_invariant_factors

from mbhomology.chain import ChainComplex
from mbhomology.exactalg import IntMatrix


def sym_rank(mat):
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return SymMatrix(mat.rows, mat.cols,
                     [x for row in mat.data for x in row]).rank()


def sym_torsion(mat):
    """Invariant factors > 1 of an integer matrix, via sympy."""
    if mat.rows == 0 or mat.cols == 0:
        return ()
    factors = sym_invariant_factors(
        SymMatrix(mat.rows, mat.cols, [x for row in mat.data for x in row]),
        domain=ZZ)
    return tuple(abs(int(d)) for d in factors if abs(int(d)) > 1)


def brute_homology(c, k):
    """(betti, torsion) by rank-nullity over Q plus invariant factors.

    betti_k = rank C_k - rank d_k - rank d_{k+1}; the torsion of H_k equals
    the torsion of C_k / im d_{k+1} because the ambient quotient's torsion
    lives inside the kernel of d_k.
    """
    betti = c.rank(k) - sym_rank(c.boundary(k)) - sym_rank(c.boundary(k + 1))
    return betti, sym_torsion(c.boundary(k + 1))


def random_complex(rng, max_total_rank=12, max_degree=3):
    """Random valid chain complex: an elementary model (zero maps and
    Z --d--> Z pieces) scrambled by integer basis changes that preserve
    d o d = 0."""
    lo = rng.randint(-1, 1)
    hi = lo + rng.randint(1, max_degree)
    ranks = {k: 0 for k in range(lo, hi + 1)}
    cols = {k: [] for k in range(lo, hi + 1)}  # boundary columns per degree
    total = 0
    while total < max_total_rank:
        kind = rng.random()
        k = rng.randint(lo, hi)
        if kind < 0.4:
            ranks[k] += 1
            cols[k].append(None)  # free generator, zero boundary
            total += 1
        else:
            if k == lo or total + 2 > max_total_rank:
                continue
            d = rng.choice([0, 1, 1, 2, 2, 3, 4, 6])
            target = ranks[k - 1]
            ranks[k - 1] += 1
            cols[k - 1].append(None)
            ranks[k] += 1
            cols[k].append((target, d))
            total += 2
        if rng.random() < 0.15:
            break

    boundaries = {}
    for k in range(lo, hi + 1):
        mat = [[0] * ranks[k] for _ in range(ranks.get(k - 1, 0))]
        for j, entry in enumerate(cols[k]):
            if entry is not None:
                i, d = entry
                mat[i][j] = d
        boundaries[k] = IntMatrix(ranks.get(k - 1, 0), ranks[k], mat)

    c = ChainComplex(ranks=ranks, boundaries=boundaries)
    scramble_basis(rng, c, steps=3 * max_total_rank)
    return c


def scramble_basis(rng, c, steps=20):
    """Apply random elementary basis changes in place; d o d stays zero."""
    for _ in range(steps):
        candidates = [k for k, r in c.ranks.items() if r >= 1]
        if not candidates:
            return
        k = rng.choice(candidates)
        n = c.ranks[k]
        lower = c.boundaries.get(k)
        upper = c.boundaries.get(k + 1)
        if rng.random() < 0.5 and n >= 2:
            # add c * (basis vector i) to basis vector j
            i, j = rng.sample(range(n), 2)
            coef = rng.choice([-2, -1, 1, 2])
            if lower is not None:
                rows = [list(r) for r in lower.data]
                for row in rows:
                    row[j] += coef * row[i]
                c.boundaries[k] = IntMatrix(lower.rows, lower.cols, rows)
            if upper is not None:
                rows = [list(r) for r in upper.data]
                for col in range(upper.cols):
                    rows[i][col] -= coef * rows[j][col]
                c.boundaries[k + 1] = IntMatrix(upper.rows, upper.cols, rows)
        else:
            perm = list(range(n))
            rng.shuffle(perm)
            if lower is not None:
                c.boundaries[k] = lower.submatrix_cols(perm)
            if upper is not None:
                rows = [upper.data[p] for p in perm]
                c.boundaries[k + 1] = IntMatrix(upper.rows, upper.cols, rows)
