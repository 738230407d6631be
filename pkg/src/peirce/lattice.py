"""Linear algebra over finite abelian groups ``Z/m_1 + ... + Z/m_k``.

A subgroup ``S`` of ``G = Z/m_1 + ... + Z/m_k`` is identified with the
full-rank lattice ``L = S + diag(m) Z^k`` in ``Z^k``.  Its Hermite normal
form is unique, which gives a canonical generator matrix: an upper
triangular ``k x k`` integer matrix with positive pivots ``d_j | m_j`` and
every entry above a pivot reduced into ``[0, d_j)``.

Everything else (kernels, intersections, preimages) is reduced to that one
normal form by stacking extra columns.
"""

from __future__ import annotations

from math import prod

import numpy as np


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class LatticeBuilder:
    """Incremental Hermite form of ``span(vectors) + diag(orders) Z^k``.

    Starts as the zero subgroup (pivot rows ``m_j e_j``) and absorbs vectors
    one at a time.  Every pivot column always has a pivot, so membership is a
    straight top-down reduction.
    """

    __slots__ = ("orders", "k", "rows")

    def __init__(self, orders):
        self.orders = tuple(int(m) for m in orders)
        self.k = len(self.orders)
        self.rows = []
        for j, m in enumerate(self.orders):
            row = [0] * self.k
            row[j] = m
            self.rows.append(row)

    def copy(self):
        other = object.__new__(LatticeBuilder)
        other.orders = self.orders
        other.k = self.k
        other.rows = [r.copy() for r in self.rows]
        return other

    def add(self, vec):
        """Absorb ``vec``; return True when the subgroup grew."""
        orders = self.orders
        k = self.k
        v = [int(x) % m for x, m in zip(vec, orders)]
        grew = False
        for j in range(k):
            a = v[j]
            if a == 0:
                continue
            piv = self.rows[j]
            d = piv[j]
            if a % d == 0:
                q = a // d
                for jj in range(j, k):
                    v[jj] = (v[jj] - q * piv[jj]) % orders[jj]
                continue
            g, x, y = xgcd(d, a)
            dg, ag = d // g, a // g
            new_piv = [0] * k
            other = [0] * k
            new_piv[j] = g
            for jj in range(j + 1, k):
                p, r = piv[jj], v[jj]
                new_piv[jj] = (x * p + y * r) % orders[jj]
                other[jj] = (ag * p - dg * r) % orders[jj]
            self.rows[j] = new_piv
            v = other
            grew = True
        return grew

    def add_all(self, vecs):
        grew = False
        for v in vecs:
            if self.add(v):
                grew = True
        return grew

    def contains(self, vec):
        orders = self.orders
        k = self.k
        v = [int(x) % m for x, m in zip(vec, orders)]
        for j in range(k):
            a = v[j]
            if a == 0:
                continue
            piv = self.rows[j]
            d = piv[j]
            if a % d:
                return False
            q = a // d
            for jj in range(j, k):
                v[jj] = (v[jj] - q * piv[jj]) % orders[jj]
        return True

    def pivots(self):
        return tuple(self.rows[j][j] for j in range(self.k))

    def size(self):
        """Cardinality of the subgroup modulo the relations."""
        return prod(m // d for m, d in zip(self.orders, self.pivots()))

    def canonical(self):
        """Fully reduced Hermite normal form as a tuple of row tuples."""
        rows = [r.copy() for r in self.rows]
        k = self.k
        for j in range(k):
            d = rows[j][j]
            pj = rows[j]
            for i in range(j):
                q = rows[i][j] // d
                if q:
                    ri = rows[i]
                    for jj in range(j, k):
                        ri[jj] -= q * pj[jj]
        return tuple(tuple(r) for r in rows)


def hnf(vectors, orders):
    b = LatticeBuilder(orders)
    b.add_all(vectors)
    return b.canonical()


def canonical_generators(form, orders):
    """Rows of a canonical form that are nonzero in the group."""
    out = []
    for row in form:
        if any(x % m for x, m in zip(row, orders)):
            out.append(tuple(x % m for x, m in zip(row, orders)))
    return out


def batch_member_mask(form, orders, vecs):
    """Vectorised membership test of many vectors against a canonical form."""
    V = np.array(vecs, dtype=np.int64).reshape(-1, len(orders))
    if V.size == 0:
        return np.ones(V.shape[0], dtype=bool)
    mods = np.array(orders, dtype=np.int64)
    V = V % mods
    ok = np.ones(V.shape[0], dtype=bool)
    F = np.array(form, dtype=np.int64)
    for j in range(len(orders)):
        d = F[j, j]
        col = V[:, j]
        ok &= col % d == 0
        q = col // d
        V = (V - q[:, None] * F[j]) % mods
    return ok


def _stacked(blocks_orders):
    orders = []
    for o in blocks_orders:
        orders.extend(o)
    return orders


def kernel(images, domain_orders, codomain_orders):
    """Canonical form of ``ker(phi)`` where ``phi(e_i) = images[i]``.

    Uses the lattice of pairs ``(phi(x), x)``: the members with vanishing first
    block are exactly the kernel.
    """
    kc = len(codomain_orders)
    kd = len(domain_orders)
    b = LatticeBuilder(_stacked([codomain_orders, domain_orders]))
    for i in range(kd):
        unit = [0] * kd
        unit[i] = 1
        b.add(list(images[i]) + unit)
    gens = [row[kc:] for row in b.rows[kc:]]
    return hnf(gens, domain_orders)


def intersection(form_a, form_b, orders):
    """Canonical form of the intersection of two subgroups."""
    k = len(orders)
    b = LatticeBuilder(_stacked([orders, orders]))
    for row in form_a:
        b.add(list(row) + list(row))
    for row in form_b:
        b.add(list(row) + [0] * k)
    gens = [row[k:] for row in b.rows[k:]]
    return hnf(gens, orders)


def group_exponent(orders):
    from math import lcm

    e = 1
    for m in orders:
        e = lcm(e, m)
    return e


def solve(images, target, domain_orders, codomain_orders):
    """Find ``x`` with ``phi(x) = target`` or return None.

    The lattice carries an extra scalar column ``c`` (taken modulo the
    codomain exponent) with generator ``(-target, 1, 0)``; the system is
    solvable iff the pivot of that column is 1.
    """
    kc = len(codomain_orders)
    kd = len(domain_orders)
    if kc == 0:
        return tuple([0] * kd)
    e = group_exponent(codomain_orders)
    b = LatticeBuilder(_stacked([codomain_orders, [e], domain_orders]))
    for i in range(kd):
        unit = [0] * kd
        unit[i] = 1
        b.add(list(images[i]) + [0] + unit)
    b.add([-t for t in target] + [1] + [0] * kd)
    row = b.rows[kc]
    if row[kc] != 1:
        return None
    return tuple(x % m for x, m in zip(row[kc + 1:], domain_orders))


# --- bases of subgroups and quotients -------------------------------------


def _is_pure(form, orders, rows_only_diagonal):
    for j, row in enumerate(form):
        d = row[j]
        s = orders[j] // d
        if rows_only_diagonal:
            if any(row[jj] for jj in range(len(row)) if jj != j):
                return False
        else:
            if any((s * x) % m for x, m in zip(row, orders)):
                return False
    return True


def smith_form(A):
    """Smith normal form ``U A V = D`` of an integer matrix (lists of ints).

    Returns ``(D, U, V)`` with ``D`` diagonal, each diagonal entry dividing the
    next, and ``U, V`` unimodular.
    """
    n = len(A)
    mcols = len(A[0]) if n else 0
    D = [list(r) for r in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(mcols)] for i in range(mcols)]

    def row_combine(i1, i2, x, y, u, v):
        # (r1, r2) <- (x r1 + y r2, u r1 + v r2)
        for M in (D, U):
            r1, r2 = M[i1], M[i2]
            M[i1] = [x * a + y * b for a, b in zip(r1, r2)]
            M[i2] = [u * a + v * b for a, b in zip(r1, r2)]

    def col_combine(j1, j2, x, y, u, v):
        for M in (D, V):
            for r in M:
                a, b = r[j1], r[j2]
                r[j1] = x * a + y * b
                r[j2] = u * a + v * b

    t = 0
    while t < min(n, mcols):
        # choose smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, n):
            for j in range(t, mcols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        for M in (D, V):
            for r in M:
                r[t], r[j] = r[j], r[t]
        while True:
            done = True
            for i in range(t + 1, n):
                if D[i][t]:
                    a, b = D[t][t], D[i][t]
                    if b % a == 0:
                        # plain elimination keeps the pivot row, so no cycling
                        row_combine(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        row_combine(t, i, x, y, -b // g, a // g)
                    done = False
            for j in range(t + 1, mcols):
                if D[t][j]:
                    a, b = D[t][t], D[t][j]
                    if b % a == 0:
                        col_combine(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        col_combine(t, j, x, y, -b // g, a // g)
                    done = False
            if not done:
                continue
            # divisibility: the pivot must divide the rest of the block
            p = D[t][t]
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, mcols):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_combine(t, bad, 1, 1, 0, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def _inverse_unimodular(M):
    """Exact inverse of a unimodular integer matrix via fraction-free elimination."""
    from fractions import Fraction

    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for row in A:
        vals = row[n:]
        assert all(v.denominator == 1 for v in vals)
        out.append([int(v) for v in vals])
    return out


class SubgroupBasis:
    """A direct-sum basis of a subgroup, with coordinate extraction.

    ``generators[a]`` has order ``gen_orders[a]`` and the subgroup is the
    internal direct sum of the cyclic groups they generate.
    """

    def __init__(self, form, orders):
        self.orders = tuple(orders)
        self.form = form
        k = len(orders)
        if _is_pure(form, orders, rows_only_diagonal=False):
            self._mode = "hnf"
            keep = [j for j in range(k) if form[j][j] != orders[j]]
            self.generators = [tuple(x % m for x, m in zip(form[j], orders)) for j in keep]
            self.gen_orders = [orders[j] // form[j][j] for j in keep]
            self._keep = keep
        else:
            self._mode = "snf"
            # Relations diag(m) written in the lattice basis H: C = diag(m) H^-1.
            from fractions import Fraction

            H = [list(r) for r in form]
            Hinv = _inverse_rational(H)
            C = []
            for i in range(k):
                row = [Fraction(orders[i]) * Hinv[i][j] for j in range(k)]
                assert all(v.denominator == 1 for v in row)
                C.append([int(v) for v in row])
            D, _, V = smith_form(C)
            Vinv = _inverse_unimodular(V)
            self._V = V
            self._H = H
            keep = [a for a in range(k) if abs(D[a][a]) != 1]
            self._keep = keep
            gens = []
            for a in keep:
                coeff = Vinv[a]
                vec = [sum(coeff[r] * H[r][c] for r in range(k)) for c in range(k)]
                gens.append(tuple(x % m for x, m in zip(vec, orders)))
            self.generators = gens
            self.gen_orders = [abs(D[a][a]) for a in keep]

    def coords(self, vec):
        """Coordinates of a subgroup member in the basis."""
        orders = self.orders
        k = len(orders)
        v = [int(x) % m for x, m in zip(vec, orders)]
        form = self.form
        c = [0] * k
        for j in range(k):
            d = form[j][j]
            a = v[j]
            if a % d:
                raise ValueError("vector is not in the subgroup")
            q = a // d
            c[j] = q
            row = form[j]
            for jj in range(j, k):
                v[jj] = (v[jj] - q * row[jj]) % orders[jj]
        if self._mode == "hnf":
            return tuple(c[j] % s for j, s in zip(self._keep, self.gen_orders))
        V = self._V
        cv = [sum(c[r] * V[r][a] for r in range(k)) for a in range(k)]
        return tuple(cv[a] % s for a, s in zip(self._keep, self.gen_orders))


def _inverse_rational(M):
    from fractions import Fraction

    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


class QuotientBasis:
    """Cyclic decomposition of ``G / S`` with projection and lifts."""

    def __init__(self, form, orders):
        self.orders = tuple(orders)
        k = len(orders)
        if _is_pure(form, orders, rows_only_diagonal=True):
            self._mode = "diag"
            keep = [j for j in range(k) if form[j][j] != 1]
            self._keep = keep
            self.gen_orders = [form[j][j] for j in keep]
            self.lifts = []
            for j in keep:
                u = [0] * k
                u[j] = 1
                self.lifts.append(tuple(u))
        else:
            self._mode = "snf"
            D, _, V = smith_form([list(r) for r in form])
            Vinv = _inverse_unimodular(V)
            keep = [a for a in range(k) if abs(D[a][a]) != 1]
            self._keep = keep
            self._V = V
            self.gen_orders = [abs(D[a][a]) for a in keep]
            self.lifts = [tuple(x % m for x, m in zip(Vinv[a], orders)) for a in keep]

    def project(self, vec):
        if self._mode == "diag":
            return tuple(int(vec[j]) % s for j, s in zip(self._keep, self.gen_orders))
        k = len(self.orders)
        V = self._V
        out = []
        for a, s in zip(self._keep, self.gen_orders):
            out.append(sum(int(vec[r]) * V[r][a] for r in range(k)) % s)
        return tuple(out)
