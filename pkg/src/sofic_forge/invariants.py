"""Exact integer invariants: Smith form, signed Bowen-Franks class, entropy.

Integer matrices are plain lists of lists of Python ints so that elimination
never overflows; numpy arrays are accepted and converted on entry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import MissingWeight, NotIrreducible, NotNonnegative


def as_int_matrix(m) -> list:
    rows = [[int(x) for x in row] for row in (m.tolist() if isinstance(m, np.ndarray) else m)]
    n = len(rows)
    if n == 0 or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix must be non-empty and rectangular")
    return rows


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def adjacency_matrix(cover, weights: dict | None = None) -> list:
    """Entry (i, j) sums the weights of the labels on edges i -> j.

    A weight k on symbol a gives the adjacency matrix of the cover after
    fragmenting a into k symbols.
    """
    g = getattr(cover, "graph", cover)
    idx = {v: i for i, v in enumerate(g.ids)}
    n = len(idx)
    a = [[0] * n for _ in range(n)]
    for s, t, lab in g.edges:
        if weights is None:
            w = 1
        else:
            try:
                w = weights[lab]
            except KeyError:
                raise MissingWeight(lab) from None
            if int(w) < 1:
                raise ValueError(f"weight of {lab!r} must be positive")
        a[idx[s]][idx[t]] += int(w)
    return a


def det(m) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = as_int_matrix(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    D: list
    U: list
    V: list

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def smith_normal_form(m) -> SmithDecomposition:
    """D = U.M.V with U, V unimodular and d_1 | d_2 | ... on the diagonal.

    Pivots are chosen by least absolute value, ties broken row-major.
    """
    a = as_int_matrix(m)
    rows, cols = len(a), len(a[0])
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        for mat in (a, u):
            mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(src, dst, q):
        for mat in (a, v):
            for r in mat:
                r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                return SmithDecomposition(a, u, v)
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    add_row(t, i, -q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    add_col(t, j, -q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            # divisibility: fold an offending row into row t and go again
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            u[t] = [-x for x in u[t]]
            a[t] = [-x for x in a[t]]
    return SmithDecomposition(a, u, v)


@dataclass(frozen=True)
class BowenFranksClass:
    """Sign of det(Id - A) together with the group Z^n / Z^n (Id - A)."""

    sign: int
    torsion: tuple
    free_rank: int
    det: int

    @property
    def is_cyclic(self) -> bool:
        return len(self.torsion) + self.free_rank <= 1

    def __str__(self):
        return f"sign={self.sign} torsion=[{','.join(map(str, self.torsion))}] free_rank={self.free_rank} det={self.det}"

    def to_dict(self) -> dict:
        return {"sign": self.sign, "torsion": list(self.torsion), "free_rank": self.free_rank, "det": self.det}


def signed_bowen_franks(a) -> BowenFranksClass:
    a = as_int_matrix(a)
    n = len(a)
    m = [[int(i == j) - a[i][j] for j in range(n)] for i in range(n)]
    diag = smith_normal_form(m).diagonal
    d = det(m)
    return BowenFranksClass(
        (d > 0) - (d < 0),
        tuple(x for x in diag if x > 1),
        sum(1 for x in diag if x == 0),
        d,
    )


def is_irreducible(a) -> bool:
    a = np.asarray(as_int_matrix(a))
    n, labels = connected_components(a != 0, directed=True, connection="strong")
    return n == 1 and bool((a != 0).any())


def _is_single_cycle(a) -> bool:
    return all(sorted(r) == [0] * (len(r) - 1) + [1] for r in a) and all(
        sum(col) == 1 for col in zip(*a)
    )


class FlowEquivalence(enum.Enum):
    YES = "yes"
    NO = "no"
    TRIVIAL_GUARD = "trivial_guard"

    def __str__(self):
        return self.value


def flow_equivalent(a, b) -> FlowEquivalence:
    """Franks' criterion on two irreducible non-negative integer matrices."""
    a, b = as_int_matrix(a), as_int_matrix(b)
    for m in (a, b):
        if not is_irreducible(m):
            raise NotIrreducible("matrix is not irreducible")
    if _is_single_cycle(a) or _is_single_cycle(b):
        return FlowEquivalence.TRIVIAL_GUARD
    same = signed_bowen_franks(a) == signed_bowen_franks(b)
    return FlowEquivalence.YES if same else FlowEquivalence.NO


@dataclass(frozen=True)
class EntropyBracket:
    """log of the spectral radius with a certified enclosure [lower, upper]."""

    value: float
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _collatz_wielandt(a, x) -> tuple:
    lo = hi = None
    for row, xi in zip(a, x):
        r = sum(Fraction(c) * xj for c, xj in zip(row, x) if c) / xi
        lo = r if lo is None or r < lo else lo
        hi = r if hi is None or r > hi else hi
    return lo, hi


def entropy_bracket(a, tol: float = 1e-9, max_iter: int = 10_000) -> EntropyBracket:
    """Perron root by power iteration on A + Id, certified with exact arithmetic.

    For any positive vector x the ratios (Ax)_i / x_i bracket the spectral
    radius; the ratios are evaluated in exact rationals.
    """
    a = as_int_matrix(a)
    if any(x < 0 for r in a for x in r):
        raise NotNonnegative("entropy needs a non-negative matrix")
    if not is_irreducible(a):
        raise NotIrreducible("entropy needs an irreducible matrix")
    arr = np.array(a, dtype=float)
    vals, vecs = np.linalg.eig(arr)
    x = np.abs(np.real(vecs[:, int(np.argmax(np.real(vals)))]))
    x = np.maximum(x / x.max(), 1e-300)
    shifted = arr + np.eye(len(a))
    lo = hi = None
    for _ in range(max_iter):
        lo, hi = _collatz_wielandt(a, [Fraction(float(v)) for v in x])
        if math.log(hi) - math.log(lo) <= tol:
            break
        x = shifted @ x
        x /= x.max()
    llo, lhi = math.log(lo), math.log(hi)
    rho = float(np.max(np.real(vals)))
    value = min(max(math.log(rho), llo), lhi)
    return EntropyBracket(value, llo, lhi)


def entropy(a, tol: float = 1e-9) -> float:
    return entropy_bracket(a, tol).value
