"""Finite unital rings given by structure constants on an additive basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm, prod

import numpy as np


class RingError(Exception):
    """Base class for errors raised by the engine."""


class StructureError(RingError):
    """Malformed structure constants (shapes, lengths, orders)."""


class NotIdempotentError(RingError):
    pass


class CapExceeded(RingError):
    """An analysis refused to run because a size cap would be exceeded."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: |R| = {size} exceeds cap {cap}")


class AxiomError(RingError):
    def __init__(self, report):
        self.report = report
        super().__init__(report.summary())


def factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FiniteRing:
    """A finite associative ring ``R = Z/m_1 b_1 + ... + Z/m_k b_k``.

    ``table[i, j]`` holds the coordinates of ``b_i * b_j``.  Elements are
    tuples of ints, coordinate ``i`` reduced modulo ``orders[i]``.  Instances
    are treated as immutable; derived data is cached on first use.
    """

    def __init__(self, orders, table, one, names=None, name="", layout=None):
        orders = tuple(int(m) for m in orders)
        k = len(orders)
        if any(m < 2 for m in orders):
            raise StructureError(f"basis orders must be >= 2, got {orders}")
        T = np.array(table, dtype=np.int64) if k else np.zeros((0, 0, 0), dtype=np.int64)
        if T.shape != (k, k, k):
            raise StructureError(f"multiplication table has shape {T.shape}, expected {(k, k, k)}")
        if len(one) != k:
            raise StructureError(f"identity has length {len(one)}, expected {k}")
        mods = np.array(orders, dtype=np.int64)
        self.orders = orders
        self.k = k
        self.table = T % mods if k else T
        self.table.setflags(write=False)
        self.mods = mods
        self.one = tuple(int(x) % m for x, m in zip(one, orders))
        self.zero = (0,) * k
        if names is None:
            names = tuple(f"b{i}" for i in range(k))
        if len(names) != k:
            raise StructureError("basis_names length does not match number of generators")
        self.names = tuple(names)
        self.name = name
        # matrix layout: per basis element (row, col, base_index, scale) or None
        self.layout = layout
        self._cache = {}

    # -- invariants ------------------------------------------------------

    @cached_property
    def size(self):
        return prod(self.orders)

    @cached_property
    def exponent(self):
        e = 1
        for m in self.orders:
            e = lcm(e, m)
        return e

    @cached_property
    def exponent_factorization(self):
        return factorize(self.exponent)

    @cached_property
    def composition_length(self):
        """Length of ``R`` as an abelian group (number of prime factors)."""
        return sum(sum(factorize(m).values()) for m in self.orders)

    def canonical_data(self):
        return (self.orders, tuple(map(tuple, self.table.reshape(self.k * self.k, self.k).tolist())), self.one)

    def same_structure(self, other):
        return self.canonical_data() == other.canonical_data()

    def __repr__(self):
        label = self.name or "FiniteRing"
        return f"<{label}: k={self.k}, |R|={self.size}>"

    # -- scalar element arithmetic --------------------------------------

    def elem(self, coords):
        if len(coords) != self.k:
            raise StructureError(f"element has length {len(coords)}, expected {self.k}")
        return tuple(int(x) % m for x, m in zip(coords, self.orders))

    def basis_element(self, i):
        v = [0] * self.k
        v[i] = 1
        return tuple(v)

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.orders))

    def sub(self, x, y):
        return tuple((a - b) % m for a, b, m in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % m for a, m in zip(x, self.orders))

    def scale(self, c, x):
        return tuple((c * a) % m for a, m in zip(x, self.orders))

    def mul(self, x, y):
        if len(x) != self.k or len(y) != self.k:
            raise StructureError("dimension mismatch in multiplication")
        if self.k == 0:
            return ()
        xv = np.asarray(x, dtype=np.int64)
        yv = np.asarray(y, dtype=np.int64)
        out = np.einsum("i,j,ijl->l", xv, yv, self.table) % self.mods
        return tuple(int(v) for v in out)

    def mul_chain(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def sum(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def is_zero(self, x):
        return not any(x)

    def is_idempotent(self, x):
        return self.mul(x, x) == tuple(x)

    def complement(self, e):
        """``1 - e``."""
        return self.sub(self.one, e)

    # -- vectorised arithmetic -----------------------------------------

    def mul_arrays(self, X, Y):
        """Row-wise products of two ``(n, k)`` coordinate arrays."""
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        n = max(X.shape[0], Y.shape[0])
        k = self.k
        if k == 0:
            return np.zeros((n, 0), dtype=np.int64)
        X = np.broadcast_to(X, (n, k))
        Y = np.broadcast_to(Y, (n, k))
        out = np.empty((n, k), dtype=np.int64)
        T = self.table.reshape(k * k, k)
        m = int(self.mods.max())
        # float matmul is exact while every partial sum stays below 2^53
        exact_float = (m - 1) ** 3 * k * k < 2 ** 52
        step = max(1, (1 << 22) // (k * k))
        if exact_float:
            # row n of X @ Tf is the matrix of y -> x_n * y
            Tf = self.table.reshape(k, k * k).astype(np.float64)
            for s in range(0, n, step):
                M = (X[s:s + step].astype(np.float64) @ Tf).reshape(-1, k, k)
                P = np.matmul(Y[s:s + step, None, :].astype(np.float64), M)[:, 0]
                out[s:s + step] = P.astype(np.int64) % self.mods
            return out
        for s in range(0, n, step):
            P = (X[s:s + step, :, None] * Y[s:s + step, None, :]).reshape(-1, k * k)
            out[s:s + step] = (P @ T) % self.mods
        return out

    @cached_property
    def left_matrices(self):
        """``L[i]`` with ``b_i * y == y @ L[i]`` (row vectors)."""
        # (b_i y)_l = sum_j y_j T[i, j, l]
        return self.table.copy()

    @cached_property
    def right_matrices(self):
        """``Rm[j]`` with ``y * b_j == y @ Rm[j]``."""
        return np.ascontiguousarray(self.table.transpose(1, 0, 2))

    def left_mult_matrix(self, x):
        """Matrix of ``y -> x * y`` acting on row vectors."""
        return np.einsum("i,ijl->jl", np.asarray(x, dtype=np.int64), self.table)

    def right_mult_matrix(self, x):
        """Matrix of ``y -> y * x`` acting on row vectors."""
        return np.einsum("j,ijl->il", np.asarray(x, dtype=np.int64), self.table)

    # -- enumeration helpers --------------------------------------------

    @cached_property
    def _radix(self):
        r = []
        acc = 1
        for m in self.orders:
            r.append(acc)
            acc *= m
        return np.array(r, dtype=np.int64)

    def decode(self, idx):
        """Mixed-radix decoding, first coordinate varying fastest."""
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[:, None] // self._radix[None, :]) % self.mods[None, :]

    def encode(self, X):
        X = np.asarray(X, dtype=np.int64)
        if self.k == 0:
            return np.zeros(X.shape[0], dtype=np.int64)
        return X @ self._radix

    def index_of(self, x):
        return int(sum(int(a) * int(r) for a, r in zip(x, self._radix)))

    def element_at(self, i):
        return tuple(int(v) for v in self.decode(np.array([i]))[0])

    def elements(self, cap=1 << 16):
        if self.size > cap:
            raise CapExceeded("element listing", self.size, cap)
        return self.decode(np.arange(self.size))

    def iter_chunks(self, chunk=1 << 16, start=0, stop=None):
        stop = self.size if stop is None else stop
        for s in range(start, stop, chunk):
            idx = np.arange(s, min(stop, s + chunk), dtype=np.int64)
            yield idx, self.decode(idx)


@dataclass
class AxiomReport:
    ok: bool
    associativity_failures: list = field(default_factory=list)
    identity_failures: list = field(default_factory=list)
    order_failures: list = field(default_factory=list)

    def summary(self):
        if self.ok:
            return "ring axioms hold"
        parts = []
        if self.associativity_failures:
            parts.append(f"associativity fails on triples {self.associativity_failures[:5]}")
        if self.identity_failures:
            parts.append(f"identity fails at basis indices {self.identity_failures}")
        if self.order_failures:
            parts.append(f"products not compatible with orders at {self.order_failures[:5]}")
        return "; ".join(parts)


def verify_axioms(ring):
    """Check associativity on basis triples, the identity, and order compatibility.

    Shape problems are caught at construction time (``StructureError``); this
    reports genuine axiom failures.  Distributivity holds by construction.
    """
    k = ring.k
    T = ring.table
    mods = ring.mods
    if k == 0:
        return AxiomReport(ok=True)
    left = np.einsum("ija,alc->ijlc", T, T) % mods
    right = np.einsum("jla,iac->ijlc", T, T) % mods
    bad = np.argwhere(np.any(left != right, axis=3))
    assoc = [tuple(int(v) for v in t) for t in bad]
    one = np.array(ring.one, dtype=np.int64)
    lo = np.einsum("i,ijl->jl", one, T) % mods
    ro = np.einsum("j,ijl->il", one, T) % mods
    eye = np.eye(k, dtype=np.int64) % mods
    ident = sorted({int(i) for i in np.flatnonzero(np.any(lo != eye, axis=1))}
                   | {int(i) for i in np.flatnonzero(np.any(ro != eye, axis=1))})
    order_bad = []
    for i in range(k):
        for j in range(k):
            for m in (ring.orders[i], ring.orders[j]):
                if np.any((m * T[i, j]) % mods):
                    order_bad.append((i, j))
                    break
    ok = not assoc and not ident and not order_bad
    return AxiomReport(ok=ok, associativity_failures=assoc, identity_failures=ident,
                       order_failures=order_bad)


class InternalConsistencyError(RingError):
    """Two independent computations of the same quantity disagree."""


class PreconditionError(RingError):
    """Inputs do not satisfy the documented preconditions."""
