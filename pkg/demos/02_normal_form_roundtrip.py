"""Scramble a tableau with symmetry-preserving moves, then reduce it back.

The six (Op) moves generate the row-and-symplectic-column action on
symmetric tableaux.  Scrambling destroys the normal-form zero pattern but
not the cokernel module; the reduction finds the three special generalized
rows of A' as the roots of a binary quintic, builds a symplectic basis
adapted to their kernels, and emits a replayable move word.

Run:  python demos/02_normal_form_roundtrip.py
"""

from symcanon import DetRng, GF, apply_op_word, degeneracy_scheme, ideal_equal
from symcanon.normalform import reduce_k11, verify_normal_shape
from symcanon.paramgen import realize, sample
from symcanon.tableau import OpMove

FIELD = GF(32003)
rng = DetRng(99)

T = realize(sample(0, FIELD))
print("golden tableau in normal shape:", verify_normal_shape(T).ok)

word = []
for _ in range(30):
    kind = rng.randint(0, 4)
    mu, nu = rng.randint(0, 2), rng.randint(0, 2)
    lam = rng.scalar(FIELD)
    if kind == 0:
        word.append(OpMove("add_col_same", lam, mu))
    elif kind == 1:
        word.append(OpMove("add_col_pair", lam, mu, nu))
    elif kind == 2 and mu != nu:
        word.append(OpMove("transfer", lam, mu, nu))
    elif kind == 3 and mu != nu:
        word.append(OpMove("swap", None, mu, nu))
    else:
        word.append(OpMove("rotate", None, mu))

scrambled = apply_op_word(T, word)
print(f"after {len(word)} random moves, normal shape:", verify_normal_shape(scrambled).ok)

print("reducing ...")
nf = reduce_k11(scrambled)
print("reduced tableau in normal shape:", verify_normal_shape(nf.tableau).ok)
print(f"witness word length: {len(nf.witness_moves)}")
print("witness replays bit-exactly:", apply_op_word(scrambled, nf.witness_moves) == nf.tableau)

s1 = degeneracy_scheme(scrambled)
s2 = degeneracy_scheme(nf.tableau)
print("degeneracy points unchanged:", s1.points == s2.points == 3)
print("saturated degeneracy ideals equal:", ideal_equal(s1.ideal, s2.ideal))
