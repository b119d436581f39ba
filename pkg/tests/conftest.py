from __future__ import annotations

import pytest

from symcanon.fields import DEFAULT_PRIME, DetRng, GF, QQ
from symcanon.koszul import RegularSequence, solve_skew
from symcanon.paramgen import realize, sample
from symcanon.poly import PolyRing, graded_basis
from symcanon.tableau import OpMove, SymmetricTableau

GOLDEN_SEEDS = (0, 1, 2, 3, 5, 7)


@pytest.fixture(scope="session")
def Fp():
    return GF(DEFAULT_PRIME)


@pytest.fixture(scope="session")
def Rp(Fp):
    return PolyRing(field=Fp)


@pytest.fixture(scope="session")
def Rq():
    return PolyRing(field=QQ)


@pytest.fixture(scope="session")
def golden_tableau(Fp):
    return realize(sample(GOLDEN_SEEDS[0], Fp))


@pytest.fixture(scope="session")
def golden_tableaux(Fp):
    return [realize(sample(s, Fp)) for s in GOLDEN_SEEDS]


def random_linear(ring, rng):
    return ring.linear_form([rng.scalar(ring.field) for _ in range(ring.nvars)])


def random_homogeneous(ring, rng, degree):
    return ring.from_terms({m: rng.scalar(ring.field) for m in graded_basis(ring, degree)})


def random_move(rng, width, field):
    kind = rng.randint(0, 4)
    mu = rng.randint(0, width - 1)
    nu = rng.randint(0, width - 1)
    lam = rng.scalar(field)
    if kind == 0:
        return OpMove("add_col_same", lam, mu)
    if kind == 1:
        return OpMove("add_col_pair", lam, mu, nu)
    if kind == 2 and mu != nu:
        return OpMove("transfer", lam, mu, nu)
    if kind == 3 and mu != nu:
        return OpMove("swap", None, mu, nu)
    return OpMove("rotate", None, mu)


def random_move_word(rng, length, width, field):
    return [random_move(rng, width, field) for _ in range(length)]


def k2_10_fixture(field, seed=4):
    """A valid K2 = 10 (n = 1) tableau: independent linear forms plus a
    random skew witness supply the first-row cubics.

    Coefficients are small integers drawn before field reduction, so the
    same seed yields literally the same data over Q and over GF(p).
    """
    ring = PolyRing(field=field)
    rng = DetRng(seed)

    def small_int_linear():
        return ring.linear_form([field.of_int(rng.randint(-3, 3)) for _ in range(5)])

    def small_int_quadric():
        return ring.from_terms(
            {m: field.of_int(rng.randint(-3, 3)) for m in graded_basis(ring, 2)}
        )

    while True:
        forms = [small_int_linear() for _ in range(4)]
        try:
            seq = RegularSequence.verify(forms)
            break
        except Exception:
            continue
    upper = [small_int_quadric() for _ in range(6)]
    from symcanon.koszul import _skew_from_upper

    S = _skew_from_upper(ring, 4, upper)
    W = S.apply(forms)  # (-B1, -B2, A1, A2)
    a1, a2, b1, b2 = forms
    B1, B2, A1, A2 = -W[0], -W[1], W[2], W[3]
    alpha = [[A1, A2], [a1, a2]]
    beta = [[B1, B2], [b1, b2]]
    return SymmetricTableau(ring, alpha, beta)
