"""The moduli dimension ledger: 161 parameters down to a 38-dimensional
family.

The parameter count splits as 22 linear forms, 3 quadratic forms and 6
scalars.  Each skew witness is unique only up to the kernel of the middle
Koszul differential in its degree; those kernel dimensions (19 for the two
quadric-entry witnesses, 10 for the two linear-entry ones) are recomputed
live from a sampled instance, and the three stabilizer groups contribute
24 + 32 + 9.

Run:  python demos/03_moduli_ledger.py
"""

from symcanon.paramgen import ledger

led = ledger()
print("dim P                      :", led.dim_P)
print("quadric witness ambiguities:", list(led.quadric_witness_ambiguities), "(kernel dims, degree 4)")
print("linear witness ambiguities :", list(led.linear_witness_ambiguities), "(kernel dims, degree 3)")
print("dim G (coordinate changes) :", led.dim_G)
print("dim H (row automorphisms)  :", led.dim_H)
print("dim L (column stabilizer)  :", led.dim_L)
print("-" * 46)
total = (
    led.dim_P
    - sum(led.quadric_witness_ambiguities)
    - sum(led.linear_witness_ambiguities)
    - led.dim_G
    - led.dim_H
    - led.dim_L
)
print("moduli dimension           :", led.result, "=", total)
assert led.result == 38
