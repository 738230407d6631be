"""A 1-Peirce ring whose corner at f = diag(1,1,0) is 2-Peirce.

The ring is the subring of M_3(Z/8) with entries constrained by the grid
[[1,4,2],[2,1,2],[2,2,1]].  Run: python3 demos/warning2_corner.py
"""

from peirce import (complete_one_peirce_set, corner_ring, diag, enumerate_idempotents, gallery,
                    is_peirce_trivial, peirce_dimension)

entry = gallery("warning2_3x3")
r = entry.ring
print(f"|R| = {r.size} = 2^{r.size.bit_length() - 1}")

idems = enumerate_idempotents(r)
trivial = [rec.element for rec in idems if rec.is_trivial]
print(f"{len(idems)} idempotents, Peirce trivial ones: {trivial}")
print("Peirce dimension of R:", peirce_dimension(r).dimension)

f = diag(r, 1, 1, 0)
c = corner_ring(r, f)
print("Peirce dimension of fRf:", peirce_dimension(c.ring).dimension)
parts = [c.embed(e) for e in complete_one_peirce_set(c.ring).idempotents]
print("complete 1-Peirce set of fRf:", parts)
print("E11 Peirce trivial in R:", is_peirce_trivial(r, diag(r, 1)))
