"""Symmetric presentation tableaux A = (alpha beta) and the (Op) calculus.

A tableau has square blocks alpha, beta of size (n+1) over k[x0..x4], cubic
forms in the first row, linear forms elsewhere, and satisfies the exact
symmetry alpha beta^t = beta alpha^t.  The six symmetry-preserving moves
(row mixes fixing the first row, the four column-coupling moves, pair swaps
and pair rotations) act on it; together they realize the PGl x PSp action.
Scalar tableaux (the n x (2n+2) degree-0 analogue) share the same column
moves through degree-0 polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import ContractError
from .fields import Scalar
from .ideals import (
    GBConfig,
    DEFAULT_GB_CONFIG,
    Ideal,
    dimension,
    saturate,
    zero_dim_analysis,
)
from .poly import Polynomial, PolyRing

PolyMatrix = List[List[Polynomial]]


def _matmul_poly(a: PolyMatrix, b: PolyMatrix, ring: PolyRing) -> PolyMatrix:
    out = []
    for row in a:
        out_row = []
        for j in range(len(b[0])):
            s = ring.zero()
            for k in range(len(b)):
                s = s + row[k] * b[k][j]
            out_row.append(s)
        out.append(out_row)
    return out


def _transpose(a: PolyMatrix) -> PolyMatrix:
    return [list(col) for col in zip(*a)]


def check_symmetry(
    alpha: PolyMatrix, beta: PolyMatrix, ring: PolyRing
) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Entrywise test of alpha beta^t = beta alpha^t.

    Returns (True, None) or (False, (i, j)) with the first failing entry in
    row-major order, 1-based.  Degree layout is not examined here, so scalar
    toys can be checked too.
    """
    left = _matmul_poly(alpha, _transpose(beta), ring)
    right = _matmul_poly(beta, _transpose(alpha), ring)
    m = len(alpha)
    for i in range(m):
        for j in range(m):
            if left[i][j] != right[i][j]:
                return False, (i + 1, j + 1)
    return True, None


def _validate_degree_layout(rows: PolyMatrix, first_row_degree: int) -> Optional[str]:
    for i, row in enumerate(rows):
        want = first_row_degree if i == 0 else 1
        for j, entry in enumerate(row):
            if entry.is_zero():
                continue
            if entry.homogeneous_degree() != want:
                return (
                    f"entry ({i + 1},{j + 1}) must be homogeneous of degree {want}, "
                    f"got {entry}"
                )
    return None


class SymmetricTableau:
    """The (n+1) x (2n+2) tableau A = (alpha beta) of Thm-1.5 degree layout.

    Constructors refuse asymmetric or badly graded data: symmetry is a
    structural invariant here, not a runtime flag.
    """

    def __init__(self, ring: PolyRing, alpha: PolyMatrix, beta: PolyMatrix):
        m = len(alpha)
        if m < 2:
            raise ContractError("tableau needs n >= 1 (at least 2 rows)")
        if any(len(r) != m for r in alpha) or len(beta) != m or any(len(r) != m for r in beta):
            raise ContractError("alpha and beta must be square of equal size")
        layout = _validate_degree_layout(
            [ar + br for ar, br in zip(alpha, beta)], first_row_degree=3
        )
        if layout:
            raise ContractError(f"degree layout violation: {layout}")
        ok, where = check_symmetry(alpha, beta, ring)
        if not ok:
            raise ContractError(
                f"symmetry alpha*beta^t = beta*alpha^t fails at entry {where}"
            )
        self.ring = ring
        self.n = m - 1
        self.alpha = [list(r) for r in alpha]
        self.beta = [list(r) for r in beta]

    # -- views ---------------------------------------------------------------

    def full_matrix(self) -> PolyMatrix:
        """A = (alpha beta), an (n+1) x (2n+2) matrix."""
        return [ar + br for ar, br in zip(self.alpha, self.beta)]

    def row(self, i: int) -> List[Polynomial]:
        return self.alpha[i] + self.beta[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricTableau)
            and self.ring == other.ring
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __repr__(self):
        return f"SymmetricTableau(n={self.n})"


# -- moves ---------------------------------------------------------------------

ROW_KINDS = ("rows",)
COLUMN_KINDS = ("add_col_same", "add_col_pair", "transfer", "swap", "rotate")


@dataclass(frozen=True)
class OpMove:
    """One of the six symmetry-preserving operations.

    kind/parameters (column indices are 0-based, lam a field scalar):
      rows(g)              row mix by g, first row fixed for graded tableaux
      add_col_same(lam,mu) alpha_mu += lam * beta_mu
      add_col_pair(lam,mu,nu) alpha_mu += lam*beta_nu and alpha_nu += lam*beta_mu
      transfer(lam,mu,nu)  alpha_mu += lam*alpha_nu and beta_nu -= lam*beta_mu
      swap(mu,nu)          exchange column pairs mu and nu
      rotate(mu)           alpha_mu -> beta_mu, beta_mu -> -alpha_mu
    """

    kind: str
    lam: Optional[Scalar] = None
    mu: Optional[int] = None
    nu: Optional[int] = None
    g: Optional[Tuple[Tuple[Scalar, ...], ...]] = None

    def __post_init__(self):
        if self.kind not in ROW_KINDS + COLUMN_KINDS:
            raise ContractError(f"unknown move kind {self.kind!r}")


def rows_move(g: Sequence[Sequence[Scalar]]) -> OpMove:
    return OpMove("rows", g=tuple(tuple(r) for r in g))


def _check_index(mu: int, width: int):
    if not 0 <= mu < width:
        raise ContractError(f"column index {mu} out of range 0..{width - 1}")


def _apply_column_move(alpha: PolyMatrix, beta: PolyMatrix, move: OpMove):
    """Shared column engine; mutates copies handed in by the caller."""
    width = len(alpha[0])
    kind = move.kind
    if kind == "swap":
        mu, nu = move.mu, move.nu
        _check_index(mu, width), _check_index(nu, width)
        for r in range(len(alpha)):
            alpha[r][mu], alpha[r][nu] = alpha[r][nu], alpha[r][mu]
            beta[r][mu], beta[r][nu] = beta[r][nu], beta[r][mu]
        return
    if kind == "rotate":
        mu = move.mu
        _check_index(mu, width)
        for r in range(len(alpha)):
            alpha[r][mu], beta[r][mu] = beta[r][mu], -alpha[r][mu]
        return
    lam = move.lam
    if kind == "add_col_same":
        mu = move.mu
        _check_index(mu, width)
        for r in range(len(alpha)):
            alpha[r][mu] = alpha[r][mu] + beta[r][mu].scale(lam)
        return
    if kind == "add_col_pair":
        mu, nu = move.mu, move.nu
        _check_index(mu, width), _check_index(nu, width)
        for r in range(len(alpha)):
            add_mu = beta[r][nu].scale(lam)
            add_nu = beta[r][mu].scale(lam)
            alpha[r][mu] = alpha[r][mu] + add_mu
            alpha[r][nu] = alpha[r][nu] + add_nu
        return
    if kind == "transfer":
        mu, nu = move.mu, move.nu
        if mu == nu:
            raise ContractError("transfer needs distinct column indices")
        _check_index(mu, width), _check_index(nu, width)
        for r in range(len(alpha)):
            alpha[r][mu] = alpha[r][mu] + alpha[r][nu].scale(lam)
            beta[r][nu] = beta[r][nu] - beta[r][mu].scale(lam)
        return
    raise ContractError(f"not a column move: {kind}")


def move_inverse(move: OpMove, ring: PolyRing) -> List[OpMove]:
    field = ring.field
    if move.kind == "swap":
        return [move]
    if move.kind == "rotate":
        return [move, move, move]
    if move.kind in ("add_col_same", "add_col_pair", "transfer"):
        return [OpMove(move.kind, field.neg(move.lam), move.mu, move.nu)]
    g = [list(r) for r in move.g]
    return [rows_move(linalg.inverse(g, field))]


def column_move_matrix(move: OpMove, width: int, ring: PolyRing) -> List[List[Scalar]]:
    """The symplectic 2*width x 2*width matrix of a column move (A -> A*M)."""
    field = ring.field
    m = linalg.identity(2 * width, field)
    k, mu, nu, lam = move.kind, move.mu, move.nu, move.lam
    if k == "swap":
        for base in (0, width):
            m[base + mu][base + mu] = field.zero()
            m[base + nu][base + nu] = field.zero()
            m[base + mu][base + nu] = field.one()
            m[base + nu][base + mu] = field.one()
    elif k == "rotate":
        m[mu][mu] = field.zero()
        m[width + mu][width + mu] = field.zero()
        m[width + mu][mu] = field.one()
        m[mu][width + mu] = field.neg(field.one())
    elif k == "add_col_same":
        m[width + mu][mu] = lam
    elif k == "add_col_pair":
        m[width + nu][mu] = field.add(m[width + nu][mu], lam)
        m[width + mu][nu] = field.add(m[width + mu][nu], lam)
    elif k == "transfer":
        m[nu][mu] = lam
        m[width + mu][width + nu] = field.neg(lam)
    else:
        raise ContractError(f"not a column move: {k}")
    return m


def apply_op(T: SymmetricTableau, move: OpMove) -> SymmetricTableau:
    """Apply one (Op) move; the result is rebuilt through the validating
    constructor, so symmetry is re-asserted exactly on every application."""
    ring = T.ring
    if move.kind == "rows":
        g = [list(r) for r in move.g]
        m = T.n + 1
        if len(g) != m or any(len(r) != m for r in g):
            raise ContractError("rows(g): g must be (n+1) x (n+1)")
        field = ring.field
        first_ok = all(
            (field.is_zero(c) if j else c == field.one()) for j, c in enumerate(g[0])
        ) and all(field.is_zero(g[i][0]) for i in range(1, m))
        if not first_ok:
            raise ContractError("rows(g): g must have the block form diag(1, phi)")
        if linalg.det(g, field) == field.zero():
            raise ContractError("rows(g): g must be invertible")
        gp = [[ring.constant(c) for c in row] for row in g]
        alpha = _matmul_poly(gp, T.alpha, ring)
        beta = _matmul_poly(gp, T.beta, ring)
        return SymmetricTableau(ring, alpha, beta)
    alpha = [list(r) for r in T.alpha]
    beta = [list(r) for r in T.beta]
    _apply_column_move(alpha, beta, move)
    return SymmetricTableau(ring, alpha, beta)


def apply_op_word(T: SymmetricTableau, moves: Sequence[OpMove]) -> SymmetricTableau:
    for m in moves:
        T = apply_op(T, m)
    return T


def symplectic_defect(S: List[List[Scalar]], ring: PolyRing) -> List[List[Scalar]]:
    """S J S^t - J for the standard form J = ((0, I), (-I, 0))."""
    field = ring.field
    size = len(S)
    half = size // 2
    J = [[field.zero()] * size for _ in range(size)]
    for i in range(half):
        J[i][half + i] = field.one()
        J[half + i][i] = field.neg(field.one())
    SJ = linalg.matmul(S, J, field)
    SJSt = linalg.matmul(SJ, linalg.transpose(S), field)
    return [
        [field.sub(SJSt[i][j], J[i][j]) for j in range(size)] for i in range(size)
    ]


def apply_symplectic(T: SymmetricTableau, S: List[List[Scalar]]) -> SymmetricTableau:
    """Transform the columns by a scalar symplectic S; rejected with the
    defect matrix S J S^t - J when S is not symplectic."""
    ring = T.ring
    size = 2 * (T.n + 1)
    if len(S) != size or any(len(r) != size for r in S):
        raise ContractError(f"symplectic matrix must be {size} x {size}")
    defect = symplectic_defect(S, ring)
    if any(not ring.field.is_zero(c) for row in defect for c in row):
        raise ContractError(f"matrix is not symplectic; defect = {defect}")
    Sp = [[ring.constant(c) for c in row] for row in S]
    full = _matmul_poly(T.full_matrix(), Sp, ring)
    half = T.n + 1
    alpha = [row[:half] for row in full]
    beta = [row[half:] for row in full]
    return SymmetricTableau(ring, alpha, beta)


# -- Fitting ideals and the degeneracy scheme -----------------------------------


def matrix_minor(rows: PolyMatrix, row_idx: Tuple[int, ...], col_idx: Tuple[int, ...], ring: PolyRing, _memo=None) -> Polynomial:
    """Determinant of a square submatrix by cofactor recursion, memoized on
    the(row, column) index pair."""
    if _memo is None:
        _memo = {}
    key = (row_idx, col_idx)
    if key in _memo:
        return _memo[key]
    k = len(row_idx)
    if k == 0:
        return ring.one()
    if k == 1:
        result = rows[row_idx[0]][col_idx[0]]
    else:
        result = ring.zero()
        r0 = row_idx[0]
        rest_rows = row_idx[1:]
        for pos, c in enumerate(col_idx):
            entry = rows[r0][c]
            if entry.is_zero():
                continue
            sub = matrix_minor(
                rows, rest_rows, col_idx[:pos] + col_idx[pos + 1 :], ring, _memo
            )
            term = entry * sub
            result = result + term if pos % 2 == 0 else result - term
    _memo[key] = result
    return result


def fitting_ideal(M: PolyMatrix, k: int, ring: PolyRing) -> Ideal:
    """Ideal of all k x k minors of M."""
    from itertools import combinations

    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if not 0 < k <= min(nrows, ncols):
        raise ContractError(f"minor size {k} out of range for {nrows} x {ncols}")
    memo: dict = {}
    gens = []
    for rows_sel in combinations(range(nrows), k):
        for cols_sel in combinations(range(ncols), k):
            gens.append(matrix_minor(M, rows_sel, cols_sel, ring, memo))
    return Ideal(ring, gens)


def erase_first_row(T: SymmetricTableau) -> PolyMatrix:
    """A' := A with the first row erased, an n x (2n+2) linear-form matrix."""
    return [row[:] for row in T.full_matrix()[1:]]


@dataclass
class DegeneracyScheme:
    ideal: Ideal  # saturated I_n(A')
    finite: bool
    reduced: Optional[bool]
    points: Optional[int]
    length: Optional[int] = None


def degeneracy_scheme(T: SymmetricTableau, config: GBConfig = DEFAULT_GB_CONFIG) -> DegeneracyScheme:
    """Saturated I_n(A') together with finiteness, reducedness and the
    distinct-point count; the nonnormal locus of the surface."""
    aprime = erase_first_row(T)
    I = fitting_ideal(aprime, T.n, T.ring)
    sat = saturate(I, config=config)
    if not sat.generators:
        # rank drops everywhere: the whole projective space degenerates
        return DegeneracyScheme(sat, False, None, None)
    if sat.contains_one():
        return DegeneracyScheme(sat, True, None, 0, 0)
    dim = dimension(sat)
    if dim > 1:
        return DegeneracyScheme(sat, False, None, None)
    analysis = zero_dim_analysis(sat, config=config)
    return DegeneracyScheme(sat, True, analysis.reduced, analysis.points, analysis.length)


# -- scalar tableaux -------------------------------------------------------------


class ScalarTableau:
    """Scalar pair (a b), n x (n+1) blocks with a b^t = b a^t.

    Shares the column move calculus with the graded tableau by running the
    same engine on degree-0 polynomials.
    """

    def __init__(self, ring: PolyRing, a: List[List[Scalar]], b: List[List[Scalar]]):
        n = len(a)
        if n < 1 or any(len(r) != n + 1 for r in a) or len(b) != n or any(
            len(r) != n + 1 for r in b
        ):
            raise ContractError("scalar tableau blocks must be n x (n+1)")
        field = ring.field
        for i in range(n):
            for j in range(n):
                lhs = sum_field(field, (field.mul(a[i][k], b[j][k]) for k in range(n + 1)))
                rhs = sum_field(field, (field.mul(b[i][k], a[j][k]) for k in range(n + 1)))
                if lhs != rhs:
                    raise ContractError(f"scalar symmetry a*b^t = b*a^t fails at ({i + 1},{j + 1})")
        self.ring = ring
        self.n = n
        self.a = [list(r) for r in a]
        self.b = [list(r) for r in b]

    def full_matrix(self) -> List[List[Scalar]]:
        return [ar + br for ar, br in zip(self.a, self.b)]

    def apply_column_move(self, move: OpMove) -> "ScalarTableau":
        ring = self.ring
        alpha = [[ring.constant(c) for c in row] for row in self.a]
        beta = [[ring.constant(c) for c in row] for row in self.b]
        _apply_column_move(alpha, beta, move)
        zero = ring.field.zero()
        a = [[e.coefficient((0,) * ring.nvars) if not e.is_zero() else zero for e in row] for row in alpha]
        b = [[e.coefficient((0,) * ring.nvars) if not e.is_zero() else zero for e in row] for row in beta]
        return ScalarTableau(ring, a, b)

    def apply_rows(self, g: List[List[Scalar]]) -> "ScalarTableau":
        field = self.ring.field
        if linalg.det(g, field) == field.zero():
            raise ContractError("row action must be invertible")
        return ScalarTableau(
            self.ring, linalg.matmul(g, self.a, field), linalg.matmul(g, self.b, field)
        )

    def apply_symplectic(self, S: List[List[Scalar]]) -> "ScalarTableau":
        ring = self.ring
        defect = symplectic_defect(S, ring)
        if any(not ring.field.is_zero(c) for row in defect for c in row):
            raise ContractError("matrix is not symplectic")
        full = linalg.matmul(self.full_matrix(), S, ring.field)
        w = self.n + 1
        return ScalarTableau(ring, [r[:w] for r in full], [r[w:] for r in full])

    def rank(self) -> int:
        return linalg.rank(self.full_matrix(), self.ring.field)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarTableau)
            and self.ring == other.ring
            and self.a == other.a
            and self.b == other.b
        )


def sum_field(field, items) -> Scalar:
    total = field.zero()
    for x in items:
        total = field.add(total, x)
    return total
