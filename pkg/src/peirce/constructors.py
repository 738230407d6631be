"""Builders for generalized matrix rings and the standard ring families."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .ring import AxiomError, FiniteRing, RingError, StructureError, verify_axioms


class ClosureError(RingError):
    """A submatrix grid is not closed under matrix multiplication."""


def is_prime(p):
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


def zmod(m):
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return FiniteRing((), [], (), name="Z/1")
    return FiniteRing((m,), [[[1]]], (1,), names=("1",), name=f"Z/{m}", layout=((0, 0, 0, 1),))


def gf(p):
    if not is_prime(p):
        raise ValueError(f"GF({p}) needs a prime")
    r = zmod(p)
    r.name = f"GF({p})"
    return r


@dataclass
class GenMatrixSpec:
    """Data of an ``n x n`` generalized matrix ring.

    ``diagonal[i]`` is the ring in slot ``(i, i)``.  ``modules[(i, j)]``
    (``i != j``, 0-based) gives the generator orders of the abelian group in
    slot ``(i, j)``; absent slots are zero.  ``products[(i, j, l)]`` is an
    integer array of shape ``(k_ij, k_jl, k_il)`` giving the product of slot
    generators; this covers left actions ``(i, i, j)``, right actions
    ``(i, j, j)`` and pairings.  Diagonal products ``(i, i, i)`` come from the
    diagonal rings; any other missing product is zero.
    """

    n: int
    diagonal: list
    modules: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)
    module_names: dict = field(default_factory=dict)
    name: str = ""


def _slot_orders(spec, i, j):
    if i == j:
        return spec.diagonal[i].orders
    return tuple(spec.modules.get((i, j), ()))


def gen_matrix(spec, check=True):
    """Assemble the generalized matrix ring of ``spec``.

    All bimodule and Morita associativity conditions are equivalent to
    associativity of the assembled ring on generator triples, which is
    verified; a failure raises ``AxiomError`` naming the first bad triple.
    """
    n = spec.n
    if n < 1 or len(spec.diagonal) != n:
        raise StructureError("gen_matrix needs n >= 1 diagonal rings")
    offsets = {}
    orders = []
    names = []
    layout = []
    for i in range(n):
        for j in range(n):
            o = _slot_orders(spec, i, j)
            offsets[(i, j)] = len(orders)
            orders.extend(o)
            if i == j:
                base_names = spec.diagonal[i].names
            else:
                base_names = spec.module_names.get((i, j)) or tuple(f"m{a}" for a in range(len(o)))
            for a in range(len(o)):
                names.append(f"[{i + 1},{j + 1}]{base_names[a]}" if n > 1 else base_names[a])
                layout.append((i, j, a, 1))
    k = len(orders)
    T = np.zeros((k, k, k), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            kij = len(_slot_orders(spec, i, j))
            for l in range(n):
                kjl = len(_slot_orders(spec, j, l))
                kil = len(_slot_orders(spec, i, l))
                if not (kij and kjl and kil):
                    continue
                if i == j == l:
                    P = spec.diagonal[i].table
                else:
                    P = spec.products.get((i, j, l))
                    if P is None:
                        continue
                    P = np.asarray(P, dtype=np.int64)
                    if P.shape != (kij, kjl, kil):
                        raise StructureError(
                            f"product table for slots ({i + 1},{j + 1})x({j + 1},{l + 1}) has shape "
                            f"{P.shape}, expected {(kij, kjl, kil)}")
                a0, b0, c0 = offsets[(i, j)], offsets[(j, l)], offsets[(i, l)]
                T[a0:a0 + kij, b0:b0 + kjl, c0:c0 + kil] = P
    one = [0] * k
    for i in range(n):
        o = offsets[(i, i)]
        for a, v in enumerate(spec.diagonal[i].one):
            one[o + a] = v
    ring = FiniteRing(orders, T, one, names=tuple(names), name=spec.name or f"GenMatrix({n})",
                      layout=tuple(layout))
    if check:
        report = verify_axioms(ring)
        if not report.ok:
            raise AxiomError(report)
    return ring


def regular_bimodule(spec, i, j):
    """Make slot ``(i, j)`` a copy of ``R_i == R_j`` acting by multiplication.

    Fills in the module and both actions; pairings stay zero unless set.
    """
    A = spec.diagonal[i]
    B = spec.diagonal[j]
    if not A.same_structure(B):
        raise StructureError("regular bimodule needs equal diagonal rings")
    spec.modules[(i, j)] = A.orders
    spec.module_names[(i, j)] = A.names
    spec.products[(i, i, j)] = A.table
    spec.products[(i, j, j)] = A.table
    return spec


def matrix_ring(n, base, name=None):
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = GenMatrixSpec(n=n, diagonal=[base] * n, name=name or f"M{n}({base.name})")
    for i in range(n):
        for j in range(n):
            if i != j:
                spec.modules[(i, j)] = base.orders
                spec.module_names[(i, j)] = base.names
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if not i == j == l:
                    spec.products[(i, j, l)] = base.table
    return gen_matrix(spec)


def triangular_ring(n, base, name=None):
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = GenMatrixSpec(n=n, diagonal=[base] * n, name=name or f"T{n}({base.name})")
    for i in range(n):
        for j in range(i + 1, n):
            spec.modules[(i, j)] = base.orders
            spec.module_names[(i, j)] = base.names
    for i in range(n):
        for j in range(i, n):
            for l in range(j, n):
                if not i == j == l:
                    spec.products[(i, j, l)] = base.table
    return gen_matrix(spec)


def direct_product(rings, name=None):
    rings = list(rings)
    if not rings:
        raise ValueError("direct_product needs at least one ring")
    label = name or " x ".join(r.name for r in rings)
    spec = GenMatrixSpec(n=len(rings), diagonal=rings, name=label)
    return gen_matrix(spec)


def submatrix_ring(n, m, grid, name=None):
    """Subring of ``M_n(Z/m)`` whose ``(i, j)`` entries range over ``d_ij Z/m``.

    The generator of slot ``(i, j)`` is ``g_ij E_ij`` with ``g_ij = gcd(d_ij, m)``;
    slots with ``g_ij = m`` vanish.  Closure needs ``g_il | g_ij g_jl``.
    """
    if n < 1 or m < 2:
        raise ValueError("submatrix_ring needs n >= 1 and m >= 2")
    if len(grid) != n or any(len(r) != n for r in grid):
        raise StructureError("grid must be n x n")
    g = [[gcd(int(grid[i][j]), m) for j in range(n)] for i in range(n)]
    for i in range(n):
        if g[i][i] != 1:
            raise ClosureError(f"diagonal entry ({i + 1},{i + 1}) must generate Z/{m}")
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if (g[i][j] * g[j][l]) % g[i][l]:
                    raise ClosureError(
                        f"grid not closed: ({i + 1},{j + 1})*({j + 1},{l + 1}) = "
                        f"{g[i][j] * g[j][l]}Z/{m} is not inside {g[i][l]}Z/{m} at ({i + 1},{l + 1})")
    slots = [(i, j) for i in range(n) for j in range(n) if g[i][j] != m]
    pos = {s: a for a, s in enumerate(slots)}
    orders = [m // g[i][j] for i, j in slots]
    k = len(slots)
    T = np.zeros((k, k, k), dtype=np.int64)
    for (i, j) in slots:
        for (jj, l) in slots:
            if jj != j or (i, l) not in pos:
                continue
            gil = g[i][l]
            coeff = (g[i][j] * g[j][l]) // gil
            T[pos[(i, j)], pos[(j, l)], pos[(i, l)]] = coeff % (m // gil)
    one = [1 if i == j else 0 for i, j in slots]
    names = tuple(f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1}_{j + 1}" for i, j in slots)
    layout = tuple((i, j, 0, g[i][j]) for i, j in slots)
    ring = FiniteRing(orders, T, one, names=names, name=name or f"SubMatrix({n},{m})", layout=layout)
    report = verify_axioms(ring)
    if not report.ok:
        raise AxiomError(report)
    return ring


# -- matrix views ---------------------------------------------------------


def from_matrix(ring, entries):
    """Element of a matrix-layout ring from ``{(i, j): value}`` (1-based slots).

    For rings over a cyclic base the value is the actual matrix entry and
    must be a multiple of the slot generator; for general bases it is the
    coordinate vector in the base ring.
    """
    if ring.layout is None:
        raise StructureError("ring has no matrix layout")
    x = [0] * ring.k
    used = set()
    for a, (i, j, b, scale) in enumerate(ring.layout):
        val = entries.get((i + 1, j + 1))
        if val is None:
            continue
        if isinstance(val, (tuple, list)):
            x[a] = val[b]
        else:
            if b != 0:
                continue
            if val % scale:
                raise StructureError(f"entry {val} at ({i + 1},{j + 1}) is not a multiple of {scale}")
            x[a] = val // scale
        used.add((i + 1, j + 1))
    for key, val in entries.items():
        if key not in used and val:
            raise StructureError(f"slot {key} is not part of the ring")
    return ring.elem(x)


def to_matrix(ring, x):
    """``{(i, j): entry}`` for a cyclic-base matrix-layout ring (nonzero entries)."""
    out = {}
    for a, (i, j, b, scale) in enumerate(ring.layout):
        if x[a]:
            out[(i + 1, j + 1)] = out.get((i + 1, j + 1), 0) + int(x[a]) * scale
    return out


def matrix_unit(ring, i, j, value=1):
    return from_matrix(ring, {(i, j): value})


def diag(ring, *values):
    return from_matrix(ring, {(i + 1, i + 1): v for i, v in enumerate(values) if v})


def block_idempotents(ring):
    """Identities of the diagonal blocks of a matrix-layout ring, in block order."""
    if ring.layout is None:
        raise StructureError("ring has no matrix layout")
    blocks = sorted({i for i, j, _, _ in ring.layout if i == j})
    out = []
    for blk in blocks:
        x = [v if (i == j == blk) else 0 for v, (i, j, _, _) in zip(ring.one, ring.layout)]
        out.append(ring.elem(x))
    return out
