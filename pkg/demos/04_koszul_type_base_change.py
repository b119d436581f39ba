"""Base changes making det(alpha), det(beta) a regular sequence.

A symmetric pair presents a codimension-2 module; a sequence of
symmetry-preserving column moves can always arrange that det(alpha) is
nonzero and det(beta) a nonzerodivisor modulo (det(alpha)).  The search
trades maximal minors that mix a column with its partner for strictly
better ones (a Pluecker-relation argument keeps the trade honest) and
certifies the result with independently replayable witnesses.

Run:  python demos/04_koszul_type_base_change.py
"""

from symcanon import DetRng, GF, PolyRing
from symcanon.basechange import SquareSymmetricPair, make_koszul_type
from symcanon.ideals import Ideal, ideal_equal, ideal_quotient

FIELD = GF(32003)
rng = DetRng(31)
ring = PolyRing(field=FIELD)


def lin():
    return ring.linear_form([rng.scalar(FIELD) for _ in range(5)])


# a pair with singular alpha whose maximal-minor ideal still has grade 2
l, m, b11, b12 = lin(), lin(), lin(), lin()
c = rng.nonzero_scalar(FIELD)
zero = ring.zero()
pair = SquareSymmetricPair(
    ring,
    [[l, m], [zero, zero]],
    [[b11, b12], [m.scale(c), -(l.scale(c))]],
)
print("det(alpha) initially:", "0 (singular)" )

cert = make_koszul_type(pair, seed=5)
print(f"certificate found with {len(cert.moves)} move(s)")
print("det(alpha) after:", str(cert.det_alpha)[:64], "...")
print("det(beta)  after:", str(cert.det_beta)[:64], "...")

print("\nindependent re-verification:")
print("  det(alpha) nonzero:", not cert.det_alpha.is_zero())
principal = Ideal(ring, [cert.det_alpha])
print(
    "  (det(alpha)) : det(beta) = (det(alpha)):",
    ideal_equal(ideal_quotient(principal, cert.det_beta), principal),
)
print("  full replay from the original pair:", cert.reverify(pair))
