"""Element-level brute force, independent of the basis-level engine.

Everything here works on the full multiplication table of the ring's
elements (indices in enumeration order) and never uses subgroup normal
forms or corner re-basing.  Intended for rings of at most a few thousand
elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ring import CapExceeded

ORACLE_CAP = 4096


class ElementTable:
    def __init__(self, ring, cap=ORACLE_CAP):
        if ring.size > cap:
            raise CapExceeded("element-level oracle", ring.size, cap)
        self.ring = ring
        n = ring.size
        self.n = n
        X = ring.elements(n)
        self.X = X
        P = np.zeros((n, n), dtype=np.int32)
        step = max(1, (1 << 18) // max(1, n))
        for s in range(0, n, step):
            rows = X[s:s + step]
            A = np.repeat(rows, n, axis=0)
            B = np.tile(X, (len(rows), 1))
            P[s:s + step] = ring.encode(ring.mul_arrays(A, B)).reshape(len(rows), n)
        self.P = P
        self.one = ring.index_of(ring.one)
        mods = ring.mods
        self.add = lambda a, b: int(ring.encode(((X[a] + X[b]) % mods)[None, :])[0])
        self.neg = ring.encode((-X) % mods)
        self.sub_from_one = ring.encode((X[self.one][None, :] - X) % mods)

    def elem(self, i):
        return tuple(int(v) for v in self.X[i])

    def diff(self, a, b):
        ring = self.ring
        return int(ring.encode(((self.X[a] - self.X[b]) % ring.mods)[None, :])[0])

    def idempotents(self):
        d = np.arange(self.n)
        return np.flatnonzero(self.P[d, d] == d)

    def units(self):
        return (self.P == self.one).any(axis=1)

    def central(self, i):
        return bool(np.all(self.P[i, :] == self.P[:, i]))

    def corner(self, e):
        """Indices of ``e R e``."""
        return np.unique(self.P[self.P[e, :], e])

    def _products_vanish(self, left, right):
        return not self.P[np.ix_(left, right)].any()

    def trivial_in(self, e, g):
        """``g`` Peirce trivial in ``eRe`` (``g`` an idempotent below ``e``)."""
        h = self.diff(e, g)
        C = self.corner(e)
        M = np.unique(self.P[self.P[g, C], h])  # g x h
        N = np.unique(self.P[self.P[h, C], g])  # h x g
        return self._products_vanish(M, N) and self._products_vanish(N, M)

    def inner_outer(self, e):
        f = self.sub_from_one[e]
        allx = np.arange(self.n)
        M = np.unique(self.P[self.P[e, allx], f])
        N = np.unique(self.P[self.P[f, allx], e])
        return self._products_vanish(M, N), self._products_vanish(N, M)

    def below(self, e, idems):
        return [g for g in idems if self.P[e, g] == g and self.P[g, e] == g]

    def dimension(self, e=None, idems=None, depth=0, cap=16):
        if e is None:
            e = self.one
        if idems is None:
            idems = list(self.idempotents())
        if self.n == 1:
            return 0
        if depth > cap:
            return None
        sub = self.below(e, idems)
        for g in sub:
            if g == e or g == 0:
                continue
            if self.trivial_in(e, g):
                a = self.dimension(g, sub, depth + 1, cap)
                b = self.dimension(self.diff(e, g), sub, depth + 1, cap)
                if a is None or b is None:
                    return None
                return a + b
        return 1

    def jacobson(self):
        """``x`` with ``1 - yx`` a unit for every ``y``."""
        unit = self.units()
        out = []
        for x in range(self.n):
            if unit[self.sub_from_one[self.P[:, x]]].all():
                out.append(x)
        return np.array(out, dtype=np.int64)

    def strongly_nilpotent(self):
        """Elements all of whose sequences ``x -> x r x`` reach zero."""
        good = np.zeros(self.n, dtype=bool)
        good[0] = True
        while True:
            # x r x for all r: P[P[x, r], x]
            new = good.copy()
            for x in np.flatnonzero(~good):
                if good[self.P[self.P[x, :], x]].all():
                    new[x] = True
            if (new == good).all():
                return np.flatnonzero(good)
            good = new


@dataclass
class OracleReport:
    idempotents: list  # (element, inner, outer, central)
    dimension: object
    jacobson: list
    prime_radical: list


def oracle_report(ring, cap=ORACLE_CAP, depth_cap=16):
    t = ElementTable(ring, cap)
    rows = []
    idems = list(t.idempotents())
    for e in idems:
        inner, outer = t.inner_outer(e)
        rows.append((t.elem(e), inner, outer, t.central(e)))
    dim = t.dimension(idems=idems, cap=depth_cap)
    J = sorted(t.elem(i) for i in t.jacobson())
    B = sorted(t.elem(i) for i in t.strongly_nilpotent())
    return OracleReport(rows, dim, J, B)
