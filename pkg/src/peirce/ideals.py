"""Additive subgroups of a finite ring: closures, ideals, annihilators,
nilpotency, units, corner rings and quotient rings."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import lattice
from .ring import FiniteRing, NotIdempotentError, RingError


class NotAnIdealError(RingError):
    pass


class _ExceedsCap:
    """Marker for a nilpotency index or dimension beyond the configured cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EXCEEDS_CAP"

    def __str__(self):
        return "exceeds cap"

    def __gt__(self, other):
        return isinstance(other, int)

    def __lt__(self, other):
        return False


EXCEEDS_CAP = _ExceedsCap()


class Subgroup:
    """An additive subgroup of ``ring`` held in canonical Hermite form."""

    def __init__(self, ring, form):
        self.ring = ring
        self.form = form

    @classmethod
    def from_builder(cls, ring, builder):
        return cls(ring, builder.canonical())

    @property
    def generator_matrix(self):
        return self.form

    @cached_property
    def generators(self):
        return lattice.canonical_generators(self.form, self.ring.orders)

    @cached_property
    def size(self):
        out = 1
        for j, m in enumerate(self.ring.orders):
            out *= m // self.form[j][j]
        return out

    def is_zero(self):
        return self.size == 1

    def is_everything(self):
        return self.size == self.ring.size

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.ring.orders == other.ring.orders
                and self.form == other.form)

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"Subgroup(size={self.size}, gens={self.generators})"

    def builder(self):
        b = lattice.LatticeBuilder(self.ring.orders)
        b.add_all(self.generators)
        return b

    def __contains__(self, x):
        return bool(lattice.batch_member_mask(self.form, self.ring.orders, [x])[0])

    def contains_all(self, xs):
        xs = list(xs)
        if not xs:
            return True
        return bool(lattice.batch_member_mask(self.form, self.ring.orders, xs).all())

    def issubset(self, other):
        return other.contains_all(self.generators)

    def __add__(self, other):
        b = self.builder()
        b.add_all(other.generators)
        return Subgroup.from_builder(self.ring, b)

    def __and__(self, other):
        return Subgroup(self.ring, lattice.intersection(self.form, other.form, self.ring.orders))

    @cached_property
    def basis(self):
        return lattice.SubgroupBasis(self.form, self.ring.orders)

    def elements(self, cap=1 << 20):
        """All members as an ``(n, k)`` array (small subgroups only)."""
        from .ring import CapExceeded

        if self.size > cap:
            raise CapExceeded("subgroup enumeration", self.size, cap)
        basis = self.basis
        if not basis.generators:
            return np.zeros((1, self.ring.k), dtype=np.int64)
        G = np.array(basis.generators, dtype=np.int64)
        orders = basis.gen_orders
        n = self.size
        idx = np.arange(n, dtype=np.int64)
        coords = []
        acc = 1
        for s in orders:
            coords.append((idx // acc) % s)
            acc *= s
        C = np.stack(coords, axis=1)
        return (C @ G) % self.ring.mods

    # -- ideal flags ---------------------------------------------------

    def _left_products(self):
        ring = self.ring
        return [ring.mul(ring.basis_element(i), g) for i in range(ring.k) for g in self.generators]

    def _right_products(self):
        ring = self.ring
        return [ring.mul(g, ring.basis_element(i)) for i in range(ring.k) for g in self.generators]

    @cached_property
    def is_left_ideal(self):
        return self.contains_all(self._left_products())

    @cached_property
    def is_right_ideal(self):
        return self.contains_all(self._right_products())

    @cached_property
    def is_two_sided_ideal(self):
        return self.is_left_ideal and self.is_right_ideal

    @cached_property
    def is_subring_closed(self):
        ring = self.ring
        return self.contains_all([ring.mul(a, b) for a in self.generators for b in self.generators])


def zero_subgroup(ring):
    return Subgroup(ring, lattice.hnf([], ring.orders))


def whole_ring(ring):
    return subgroup_from_generators(ring, [ring.basis_element(i) for i in range(ring.k)])


CLOSURES = ("none", "left", "right", "two_sided", "multiplicative")


def subgroup_from_generators(ring, gens, close_under="none"):
    """Canonical subgroup generated by ``gens``, optionally closed.

    ``left``/``right``/``two_sided`` give the one- or two-sided ideal
    generated; ``multiplicative`` gives the ring closure (smallest additive
    subgroup containing the generators and closed under products, no
    identity added).
    """
    if close_under not in CLOSURES:
        raise ValueError(f"close_under must be one of {CLOSURES}")
    b = lattice.LatticeBuilder(ring.orders)
    grown = []
    for g in gens:
        g = ring.elem(g)
        if b.add(g):
            grown.append(g)
    if close_under == "none":
        return Subgroup.from_builder(ring, b)
    basis = [ring.basis_element(i) for i in range(ring.k)]
    work = list(grown)
    done = []
    while work:
        w = work.pop()
        cands = []
        if close_under in ("left", "two_sided"):
            cands.extend(ring.mul(x, w) for x in basis)
        if close_under in ("right", "two_sided"):
            cands.extend(ring.mul(w, x) for x in basis)
        if close_under == "multiplicative":
            done.append(w)
            for g in done:
                cands.append(ring.mul(w, g))
                cands.append(ring.mul(g, w))
        for c in cands:
            if b.add(c):
                work.append(c)
    return Subgroup.from_builder(ring, b)


def ring_closure(ring, s):
    return subgroup_from_generators(ring, s.generators, "multiplicative")


def ideal(ring, gens):
    return subgroup_from_generators(ring, gens, "two_sided")


def product_subgroup(ring, a, b):
    """Additive span of all products ``x*y`` with ``x`` in ``a``, ``y`` in ``b``."""
    return subgroup_from_generators(ring, [ring.mul(x, y) for x in a.generators for y in b.generators])


def span(ring, vecs):
    return subgroup_from_generators(ring, vecs)


_nilpotency_cap_override = None


def default_nilpotency_cap(ring):
    if _nilpotency_cap_override is not None:
        return _nilpotency_cap_override
    # a strictly decreasing chain of subgroups has at most length(R) + 1 terms
    return ring.composition_length + 1


@contextmanager
def nilpotency_cap(cap):
    """Override the default nilpotency cap inside a ``with`` block."""
    global _nilpotency_cap_override
    if cap is not None and cap < 1:
        raise ValueError("nilpotency cap must be positive")
    old = _nilpotency_cap_override
    _nilpotency_cap_override = cap
    try:
        yield
    finally:
        _nilpotency_cap_override = old


def nilpotency_index(ring, s, cap=None):
    """Least ``t`` with ``S^t = 0``, or ``EXCEEDS_CAP``.

    ``s`` is replaced by its ring closure first.  Powers are ``S^1 = S`` and
    ``S^(t+1) = S^t * S``.  When the powers stabilise at a nonzero subgroup
    the answer is ``EXCEEDS_CAP`` regardless of the cap.
    """
    if cap is None:
        cap = default_nilpotency_cap(ring)
    if not s.is_subring_closed:
        s = ring_closure(ring, s)
    power = s
    t = 1
    while not power.is_zero():
        nxt = product_subgroup(ring, power, s)
        t += 1
        if nxt == power or t > cap:
            return EXCEEDS_CAP
        power = nxt
    return t


def _mult_images(ring, gens, side):
    """Images of basis elements under ``y -> (g*y)_g`` (side='right' annihilator)."""
    k = ring.k
    images = []
    for i in range(k):
        b = ring.basis_element(i)
        row = []
        for g in gens:
            row.extend(ring.mul(g, b) if side == "right" else ring.mul(b, g))
        images.append(row)
    return images


def right_annihilator(ring, s):
    """``{y : x*y = 0 for all x in s}``."""
    gens = s.generators
    if not gens:
        return whole_ring(ring)
    images = _mult_images(ring, gens, "right")
    form = lattice.kernel(images, ring.orders, list(ring.orders) * len(gens))
    return Subgroup(ring, form)


def left_annihilator(ring, s):
    """``{y : y*x = 0 for all x in s}``."""
    gens = s.generators
    if not gens:
        return whole_ring(ring)
    images = _mult_images(ring, gens, "left")
    form = lattice.kernel(images, ring.orders, list(ring.orders) * len(gens))
    return Subgroup(ring, form)


def is_unit(ring, u):
    """Return ``(True, inverse)`` or ``(False, None)``.

    Solves ``u*v = 1`` in the regular representation; in a finite ring a
    right inverse is automatically two-sided, which is verified anyway.
    """
    u = ring.elem(u)
    if ring.k == 0:
        return True, ()
    images = [ring.mul(u, ring.basis_element(i)) for i in range(ring.k)]
    v = lattice.solve(images, ring.one, ring.orders, ring.orders)
    if v is None:
        return False, None
    if ring.mul(v, u) != ring.one:
        raise RingError("right inverse is not a left inverse; ring is not finite/associative")
    return True, v


# -- corners ---------------------------------------------------------------


def _check_idempotent(ring, e):
    e = ring.elem(e)
    if ring.mul(e, e) != e:
        raise NotIdempotentError(f"{e} is not idempotent")
    return e


def peirce_component(ring, left, right):
    """The additive subgroup ``left * R * right``."""
    vecs = [ring.mul(ring.mul(left, ring.basis_element(i)), right) for i in range(ring.k)]
    return span(ring, vecs)


@dataclass
class CornerRing:
    """``e R e`` re-based as a ring with identity ``e``."""

    parent: FiniteRing
    idempotent: tuple
    ring: FiniteRing
    subgroup: Subgroup
    embed_matrix: np.ndarray  # rows: images of corner basis in parent coordinates

    def embed(self, x):
        if self.ring.k == 0:
            return self.parent.zero
        v = np.asarray(x, dtype=np.int64) @ self.embed_matrix
        return tuple(int(a) for a in v % self.parent.mods)

    def embed_array(self, X):
        X = np.asarray(X, dtype=np.int64)
        if self.ring.k == 0:
            return np.zeros((X.shape[0], self.parent.k), dtype=np.int64)
        return (X @ self.embed_matrix) % self.parent.mods

    def project(self, y):
        """Corner coordinates of an element of ``eRe`` (given in the parent)."""
        return self.subgroup.basis.coords(y)


def corner_ring(ring, e, name=None):
    e = _check_idempotent(ring, e)
    s = peirce_component(ring, e, e)
    basis = s.basis
    gens = basis.generators
    kk = len(gens)
    table = np.zeros((kk, kk, kk), dtype=np.int64)
    for a in range(kk):
        for b in range(kk):
            table[a, b] = basis.coords(ring.mul(gens[a], gens[b]))
    one = basis.coords(e) if kk else ()
    names = []
    for a, g in enumerate(gens):
        nz = [i for i, v in enumerate(g) if v]
        names.append(ring.names[nz[0]] if len(nz) == 1 and g[nz[0]] == 1 else f"c{a}")
    layout = None
    if ring.layout is not None and all(len([v for v in g if v]) == 1 for g in gens):
        layout = []
        for g in gens:
            i = next(i for i, v in enumerate(g) if v)
            r, c, base, scale = ring.layout[i]
            layout.append((r, c, base, scale * g[i]))
        layout = tuple(layout)
    sub = FiniteRing(basis.gen_orders, table, one, names=tuple(names),
                     name=name or f"corner({ring.name})", layout=layout)
    emb = np.array(gens, dtype=np.int64).reshape(kk, ring.k)
    return CornerRing(parent=ring, idempotent=e, ring=sub, subgroup=s, embed_matrix=emb)


# -- quotients -------------------------------------------------------------


@dataclass
class QuotientRing:
    parent: FiniteRing
    ideal: Subgroup
    ring: FiniteRing
    basis: lattice.QuotientBasis

    def project(self, x):
        return self.basis.project(x)

    def project_array(self, X):
        return np.array([self.basis.project(x) for x in np.asarray(X).tolist()], dtype=np.int64).reshape(-1, self.ring.k)

    def lift(self, xbar):
        out = self.parent.zero
        for c, l in zip(xbar, self.basis.lifts):
            out = self.parent.add(out, self.parent.scale(int(c), l))
        return out


def quotient_ring(ring, i, name=None):
    if not i.is_two_sided_ideal:
        raise NotAnIdealError("quotient_ring needs a two-sided ideal")
    qb = lattice.QuotientBasis(i.form, ring.orders)
    kk = len(qb.gen_orders)
    table = np.zeros((kk, kk, kk), dtype=np.int64)
    for a in range(kk):
        for b in range(kk):
            table[a, b] = qb.project(ring.mul(qb.lifts[a], qb.lifts[b]))
    one = qb.project(ring.one)
    q = FiniteRing(qb.gen_orders, table, one, name=name or f"{ring.name}/I")
    return QuotientRing(parent=ring, ideal=i, ring=q, basis=qb)
