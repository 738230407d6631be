"""Radicals, B-triviality and idempotent lifting on small rings.

Run: python3 demos/lifting_z4.py
"""

from peirce import b_dimension, gallery, ideal, jacobson_radical, lift_idempotent, zmod
from peirce.radical import classify_j_b_trivial, weakly_lifting_report

z12 = zmod(12)
res = lift_idempotent(z12, ideal(z12, [(6,)]), (3,))
print(f"Z/12 modulo 6: 3 lifts to {res.element[0]} after {res.iterations} step(s)")

entry = gallery("z4_not_1B")
r, e11 = entry.ring, entry.elements["E11"]
rad = jacobson_radical(r)
print(f"{r.name}: |J| = {rad.jacobson.size}, |B| = {rad.prime_radical.size}, methods {sorted(rad.methods)}")
rec = classify_j_b_trivial(r, e11)
print(f"E11 J-trivial {rec.is_j_trivial}, B-trivial {rec.is_b_trivial}")
print("b_dimension:", b_dimension(r).dimension)

w = weakly_lifting_report(r)
for lift in w.lifts:
    print(f"  class {lift.central_idempotent} lifts to {lift.lift} in {lift.iterations} step(s)")
