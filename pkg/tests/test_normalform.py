from __future__ import annotations

from itertools import product

import pytest

from symcanon import linalg
from symcanon.errors import ContractError
from symcanon.fields import DEFAULT_PRIME, DetRng, GF, QQ
from symcanon.ideals import ideal_equal
from symcanon.normalform import (
    NormalFormK11,
    OrbitClass,
    factor_symplectic,
    reduce_k11,
    scalar_orbit_reduce,
    verify_normal_shape,
)
from symcanon.paramgen import realize, sample
from symcanon.poly import PolyRing, parse_poly
from symcanon.tableau import (
    OpMove,
    ScalarTableau,
    SymmetricTableau,
    apply_op_word,
    column_move_matrix,
    degeneracy_scheme,
    symplectic_defect,
)

from conftest import random_move_word


# -- scalar orbits ---------------------------------------------------------------


def test_orbit_zero_matrix():
    field = GF(DEFAULT_PRIME)
    ring = PolyRing(field=field)
    zero = field.zero()
    M = ScalarTableau(ring, [[zero, zero]], [[zero, zero]])
    red = scalar_orbit_reduce(M)
    assert red.cls.k == 0
    assert red.canonical.a == [[zero, zero]] and red.canonical.b == [[zero, zero]]


def test_orbit_already_canonical():
    field = GF(DEFAULT_PRIME)
    ring = PolyRing(field=field)
    M = ScalarTableau(ring, [[field.one(), field.zero()]], [[field.zero()] * 2])
    red = scalar_orbit_reduce(M)
    assert red.cls.k == 1


def test_orbit_exhaustive_gf3():
    field = GF(3)
    ring = PolyRing(field=field)
    classes = {}
    for vals in product(range(3), repeat=4):
        M = ScalarTableau(ring, [[vals[0], vals[1]]], [[vals[2], vals[3]]])
        red = scalar_orbit_reduce(M)
        # witness factorization re-verified: canonical = left * M * right
        full = linalg.matmul(
            linalg.matmul(red.left, M.full_matrix(), field), red.right, field
        )
        assert full == red.canonical.full_matrix()
        assert red.cls.k == linalg.rank(M.full_matrix(), field)
        classes.setdefault(red.cls.k, 0)
        classes[red.cls.k] += 1
    assert set(classes) == {0, 1}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orbit_class_invariant_under_actions(n):
    field = GF(DEFAULT_PRIME)
    ring = PolyRing(field=field)
    rng = DetRng(100 + n)
    width = n + 1
    a = [[rng.scalar(field) for _ in range(width)] for _ in range(n)]
    b = [[field.zero()] * width for _ in range(n)]
    M = ScalarTableau(ring, a, b)  # a b^t = 0 symmetric
    base = scalar_orbit_reduce(M).cls.k
    current = M
    for trial in range(100):
        mv = random_move_word(rng, 1, width, field)[0]
        current = current.apply_column_move(mv)
        if trial % 10 == 0:
            g = [[rng.scalar(field) for _ in range(n)] for _ in range(n)]
            if linalg.det(g, field) != field.zero():
                current = current.apply_rows(g)
        assert scalar_orbit_reduce(current).cls.k == base


def test_orbit_random_move_words_gf3():
    field = GF(3)
    ring = PolyRing(field=field)
    rng = DetRng(55)
    M = ScalarTableau(ring, [[field.one(), field.of_int(2)]], [[field.of_int(2), field.one()]])
    base = scalar_orbit_reduce(M).cls.k
    current = M
    for mv in random_move_word(rng, 50, 2, field):
        current = current.apply_column_move(mv)
    assert scalar_orbit_reduce(current).cls.k == base


# -- symplectic factorization ------------------------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_factor_symplectic_random_products(seed):
    field = GF(DEFAULT_PRIME)
    ring = PolyRing(field=field)
    rng = DetRng(seed)
    total = linalg.identity(6, field)
    for mv in random_move_word(rng, 10, 3, field):
        total = linalg.matmul(total, column_move_matrix(mv, 3, ring), field)
    word = factor_symplectic(total, ring)
    replay = linalg.identity(6, field)
    for mv in word:
        replay = linalg.matmul(replay, column_move_matrix(mv, 3, ring), field)
    assert replay == total


def test_factor_symplectic_over_q():
    field = QQ
    ring = PolyRing(field=field)
    rng = DetRng(77)
    total = linalg.identity(4, field)
    for mv in random_move_word(rng, 8, 2, field):
        total = linalg.matmul(total, column_move_matrix(mv, 2, ring), field)
    word = factor_symplectic(total, ring)
    replay = linalg.identity(4, field)
    for mv in word:
        replay = linalg.matmul(replay, column_move_matrix(mv, 2, ring), field)
    assert replay == total


def test_factor_symplectic_rejects_nonsymplectic():
    field = GF(DEFAULT_PRIME)
    ring = PolyRing(field=field)
    bad = linalg.identity(6, field)
    bad[0][3] = field.one()
    bad[3][0] = field.one()
    with pytest.raises(ContractError):
        factor_symplectic(bad, ring)


# -- normal shape -------------------------------------------------------------------


def test_verify_normal_shape_golden(golden_tableau):
    assert verify_normal_shape(golden_tableau).ok


def test_verify_normal_shape_violation(golden_tableau):
    T = golden_tableau
    ring = T.ring
    alpha = [row[:] for row in T.alpha]
    alpha[2][2] = parse_poly("x0", ring)  # break the (3,3) zero
    with pytest.raises(ContractError):
        # symmetry now fails too; constructor refuses
        SymmetricTableau(ring, alpha, T.beta)
    # a shape violation that preserves symmetry: swap the column pairs
    moved = apply_op_word(T, [OpMove("swap", None, 0, 1)])
    report = verify_normal_shape(moved)
    assert not report.ok and report.violations


def test_verify_normal_shape_random_scramble(golden_tableau):
    rng = DetRng(19)
    word = random_move_word(rng, 10, 3, golden_tableau.ring.field)
    moved = apply_op_word(golden_tableau, word)
    report = verify_normal_shape(moved)
    assert not report.ok and len(report.violations) >= 2


# -- reduce_k11 ----------------------------------------------------------------------


def test_reduce_fixed_point(golden_tableau):
    nf = reduce_k11(golden_tableau)
    assert nf.tableau == golden_tableau
    assert nf.witness_moves == []


def test_reduce_roundtrip_and_witness(golden_tableau):
    rng = DetRng(7)
    T = golden_tableau
    for trial in range(3):
        word = random_move_word(rng, 20, 3, T.ring.field)
        scrambled = apply_op_word(T, word)
        nf = reduce_k11(scrambled)
        assert verify_normal_shape(nf.tableau).ok
        # witness replay is bit-exact
        assert apply_op_word(scrambled, nf.witness_moves) == nf.tableau
        # reduction is idempotent on its own output
        again = reduce_k11(nf.tableau)
        assert again.tableau == nf.tableau and again.witness_moves == []
        # degeneracy ideal untouched
        assert ideal_equal(
            degeneracy_scheme(scrambled).ideal, degeneracy_scheme(nf.tableau).ideal
        )


def test_reduce_preserves_points_as_ideals(golden_tableaux):
    rng = DetRng(71)
    T = golden_tableaux[1]
    word = random_move_word(rng, 30, 3, T.ring.field)
    scrambled = apply_op_word(T, word)
    nf = reduce_k11(scrambled)
    s1, s2 = degeneracy_scheme(scrambled), degeneracy_scheme(nf.tableau)
    assert (s1.points, s2.points) == (3, 3)
    assert ideal_equal(s1.ideal, s2.ideal)


def test_reduce_rejects_wrong_n():
    from conftest import k2_10_fixture

    T = k2_10_fixture(GF(DEFAULT_PRIME))
    with pytest.raises(ContractError, match="n = 2"):
        reduce_k11(T)


def test_reduce_rejects_degenerate(golden_tableau):
    ring = golden_tableau.ring
    zero = ring.zero()
    rng = DetRng(3)
    from conftest import random_linear

    a2, a3, b2, b3 = (random_linear(ring, rng) for _ in range(4))
    alpha = [[zero] * 3, [zero, a2, a3], [zero, a2, a3]]
    beta = [[zero] * 3, [zero, b2, b3], [zero, b2, b3]]
    T = SymmetricTableau(ring, alpha, beta)
    with pytest.raises(ContractError, match="three reduced points"):
        reduce_k11(T)
