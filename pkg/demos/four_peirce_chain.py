"""The 2^16-element 4-Peirce ring over Z/2 and its dyadic chain.

Each diagonal block is a 2 x 2 generalized matrix ring over Z/2 with zero
pairings; the outer ring uses the regular bimodule on both off-diagonal
slots.  Run: python3 demos/four_peirce_chain.py
"""

from peirce import complete_one_peirce_set, gallery, peirce_dimension
from peirce.peirce import all_pivot_dimensions

r = gallery("four_peirce_z2").ring
res = peirce_dimension(r)
print(f"|R| = {r.size}, Peirce dimension {res.dimension}")

rep = complete_one_peirce_set(r, res)
for p in rep.dyadic_chain:
    print("  " + " ".join("{" + "".join(map(str, b)) + "}" for b in p))
print(f"D(R)-: {rep.d_minus.subgroup.size} elements, nilpotency index {rep.d_minus.nilpotency_index}")

corner_dims = sorted({p.corner_dimension for p in all_pivot_dimensions(r)})
print("corner dimensions over all Peirce trivial idempotents:", corner_dims)
