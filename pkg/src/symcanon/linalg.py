"""Exact linear algebra over Q and GF(p).

Matrices are lists of rows of field scalars.  Over GF(p) the hot paths
(rank, rref, kernels, solving) run vectorized mod-p elimination in numpy
int64; over Q they run fraction-free Bareiss for ranks and exact Fraction
elimination otherwise.  Nothing here is ever approximate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ContractError
from .fields import FieldSpec, Scalar

Matrix = List[List[Scalar]]


def _is_modp(field: FieldSpec) -> bool:
    return field.kind == "prime_field"


def _np(rows: Sequence[Sequence[int]], p: int) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape((1, -1)) if len(rows) else a.reshape((0, 0))
    return a % p


def _np_rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = a % p
    m, n = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(rows: Matrix, field: FieldSpec) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form plus pivot column indices."""
    if not rows or not rows[0]:
        return [list(r) for r in rows], []
    if _is_modp(field):
        a, pivots = _np_rref(_np(rows, field.p), field.p)
        return [[int(x) for x in row] for row in a], pivots
    a = [[Fraction(x) for x in row] for row in rows]
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows: Matrix, field: FieldSpec) -> int:
    if not rows or not rows[0]:
        return 0
    if _is_modp(field):
        return len(_np_rref(_np(rows, field.p), field.p)[1])
    return _bareiss_rank(_clear_denominators(rows))


def _clear_denominators(rows: Matrix) -> List[List[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        out.append([int(f * lcm) for f in fracs])
    return out


def _bareiss_rank(a: List[List[int]]) -> int:
    """Fraction-free Gaussian elimination rank over the integers."""
    a = [row[:] for row in a]
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def nullspace(rows: Matrix, field: FieldSpec, ncols: Optional[int] = None) -> List[List[Scalar]]:
    """Basis of the right kernel {x : A x = 0}, deterministic order."""
    if not rows:
        if ncols is None:
            raise ContractError("nullspace of an empty matrix needs ncols")
        eye = []
        for i in range(ncols):
            v = [field.zero()] * ncols
            v[i] = field.one()
            eye.append(v)
        return eye
    n = len(rows[0])
    red, pivots = rref(rows, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * n
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def solve_particular(rows: Matrix, rhs: Sequence[Scalar], field: FieldSpec) -> Optional[List[Scalar]]:
    """One solution of A x = b with free variables set to zero, or None."""
    if not rows:
        return None if any(not field.is_zero(b) for b in rhs) else []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for r in range(len(red)):
        if all(field.is_zero(red[r][c]) for c in range(n)) and not field.is_zero(red[r][n]):
            return None
    x = [field.zero()] * n
    for r, pc in enumerate(pivots):
        if pc == n:
            return None
        x[pc] = red[r][n]
    return x


def det(rows: Matrix, field: FieldSpec) -> Scalar:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ContractError("determinant requires a square matrix")
    if n == 0:
        return field.one()
    a = [list(r) for r in rows]
    sign = field.one()
    acc = field.one()
    for c in range(n):
        pivot = next((i for i in range(c, n) if not field.is_zero(a[i][c])), None)
        if pivot is None:
            return field.zero()
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = field.neg(sign)
        acc = field.mul(acc, a[c][c])
        inv = field.inv(a[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(a[i][c]):
                f = field.mul(a[i][c], inv)
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[c])]
    return field.mul(sign, acc)


def inverse(rows: Matrix, field: FieldSpec) -> Matrix:
    n = len(rows)
    aug = [list(r) + [field.one() if i == j else field.zero() for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ContractError("matrix is not invertible")
    return [row[n:] for row in red[:n]]


def matmul(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    n = len(b)
    out = []
    for row in a:
        assert len(row) == n
        out_row = []
        for j in range(len(b[0])):
            s = field.zero()
            for k in range(n):
                s = field.add(s, field.mul(row[k], b[k][j]))
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(a: Matrix, x: Sequence[Scalar], field: FieldSpec) -> List[Scalar]:
    return [c[0] for c in matmul(a, [[v] for v in x], field)]


def identity(n: int, field: FieldSpec) -> Matrix:
    return [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def np_rank_modp(a: np.ndarray, p: int) -> int:
    """Rank of a (possibly large) int64 matrix mod p; used by the graded
    exactness checks where dimensions reach a few thousand."""
    if a.size == 0:
        return 0
    return len(_np_rref(a % p, p)[1])
