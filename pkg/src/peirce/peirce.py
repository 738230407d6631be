"""Idempotent classification, Peirce dimension and complete 1-Peirce sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import lattice
from .enumerate import DEFAULT_ENUM_CAP, idempotent_array
from .ideals import (
    EXCEEDS_CAP,
    corner_ring,
    is_unit,
    nilpotency_index,
    peirce_component,
    ring_closure,
    span,
    subgroup_from_generators,
)
from .ring import (
    CapExceeded,
    InternalConsistencyError,
    NotIdempotentError,
    PreconditionError,
    RingError,
)

DEFAULT_DEPTH_CAP = 16
DEFAULT_ORACLE_CAP = 4096


class NotPeirceTrivialError(PreconditionError):
    pass


# -- batched products ------------------------------------------------------


def _left_rows(ring, X):
    """``out[n, i] = x_n * b_i``."""
    return np.einsum("na,ail->nil", X, ring.table) % ring.mods


def _right_rows(ring, X):
    """``out[n, i] = b_i * x_n``."""
    return np.einsum("na,ial->nil", X, ring.table) % ring.mods


def _sandwich_rows(ring, X, Y):
    """``out[n, i] = x_n * b_i * y_n``."""
    # (x b_i) y = sum_a (x b_i)_a (b_a y)
    return np.einsum("nia,nal->nil", _left_rows(ring, X), _right_rows(ring, Y)) % ring.mods


def _chunk_size(k):
    return max(1, (1 << 23) // max(1, k ** 4))


def _mixed_product_zero(ring, X, Y):
    """Mask: ``x b_i y b_j x = 0`` for all ``i, j`` (row-wise)."""
    n, k = X.shape
    out = np.ones(n, dtype=bool)
    step = _chunk_size(k)
    for s in range(0, n, step):
        Xs, Ys = X[s:s + step], Y[s:s + step]
        A = _sandwich_rows(ring, Xs, Ys)  # x b_i y
        AB = np.einsum("nia,ajl->nijl", A, ring.table) % ring.mods  # x b_i y b_j
        RX = _right_rows(ring, Xs)  # b_a x
        P = np.einsum("nija,nal->nijl", AB, RX) % ring.mods
        out[s:s + step] = ~P.reshape(P.shape[0], -1).any(axis=1)
    return out


def _ideal_criterion(ring, E, F):
    """Mask: ``eR(1-e) + (1-e)Re`` is a two-sided ideal (row-wise).

    An element lies in that subgroup iff its ``eRe`` and ``(1-e)R(1-e)``
    components vanish, so closure is tested by projecting all products of
    its generators with basis elements.
    """
    n, k = E.shape
    out = np.ones(n, dtype=bool)
    step = max(1, _chunk_size(k) // 4)
    T = ring.table
    m = ring.mods
    for s in range(0, n, step):
        Es, Fs = E[s:s + step], F[s:s + step]
        G = np.concatenate([_sandwich_rows(ring, Es, Fs), _sandwich_rows(ring, Fs, Es)], axis=1)
        prods = np.concatenate([np.einsum("nga,ajl->ngjl", G, T) % m,
                                np.einsum("nga,jal->ngjl", G, T) % m], axis=1)
        nn = prods.shape[0]
        X = prods.reshape(nn, -1, k)
        ok = np.ones(nn, dtype=bool)
        for P, Q in ((Es, Es), (Fs, Fs)):
            LP = _left_rows(ring, P)  # rows p b_a: p*x = x @ LP
            RQ = _right_rows(ring, Q)  # rows b_a q: x*q = x @ RQ
            Y = np.einsum("nxa,nal->nxl", X, LP) % m
            Y = np.einsum("nxa,nal->nxl", Y, RQ) % m
            ok &= ~Y.reshape(nn, -1).any(axis=1)
        out[s:s + step] = ok
    return out


def ideal_criterion_mask(ring, E):
    """Ideal-criterion Peirce triviality for each row of ``E``, computed on its own."""
    E = np.asarray(E, dtype=np.int64).reshape(-1, ring.k)
    if ring.k == 0:
        return np.ones(len(E), dtype=bool)
    return _ideal_criterion(ring, E, _complements(ring, E))


def _central_mask(ring, E):
    return np.all((_left_rows(ring, E) == _right_rows(ring, E)).reshape(E.shape[0], -1), axis=1)


def _complements(ring, E):
    one = np.array(ring.one, dtype=np.int64)
    return (one[None, :] - E) % ring.mods


# -- records ---------------------------------------------------------------


class IdempotentRecord:
    """An idempotent with its Peirce flags; corner data is computed on demand."""

    def __init__(self, table, index):
        self._table = table
        self.index = index
        self.element = table.elements[index]
        self.is_inner_trivial = bool(table.inner[index])
        self.is_outer_trivial = bool(table.outer[index])
        self.is_central = bool(table.central[index])

    @property
    def is_trivial(self):
        return self.is_inner_trivial and self.is_outer_trivial

    @property
    def corner_size(self):
        return self._table.corner_size(self.index)

    @property
    def is_primitive(self):
        return self._table.is_primitive(self.index)

    def __repr__(self):
        return (f"IdempotentRecord({self.element}, inner={self.is_inner_trivial}, "
                f"outer={self.is_outer_trivial}, central={self.is_central})")


class IdempotentTable:
    """All idempotents of a ring with vectorised Peirce classification."""

    def __init__(self, ring, cap=DEFAULT_ENUM_CAP, workers=None, cross_check=True):
        self.ring = ring
        E = np.asarray(idempotent_array(ring, cap, workers))
        self.array = E
        self.elements = [tuple(int(v) for v in row) for row in E]
        F = _complements(ring, E)
        if ring.k == 0:
            n = len(E)
            self.inner = self.outer = self.central = np.ones(n, dtype=bool)
        else:
            self.inner = _mixed_product_zero(ring, E, F)
            self.outer = _mixed_product_zero(ring, F, E)
            self.central = _central_mask(ring, E)
        self.trivial = self.inner & self.outer
        if cross_check and ring.k:
            ideal_ok = _ideal_criterion(ring, E, F)
            bad = np.flatnonzero(ideal_ok != self.trivial)
            if len(bad):
                raise InternalConsistencyError(
                    f"direct Peirce test and ideal criterion disagree at {self.elements[bad[0]]}")
            self.ideal_criterion = ideal_ok
        else:
            self.ideal_criterion = self.trivial.copy()
        if np.any(self.central & ~self.trivial):
            raise InternalConsistencyError("a central idempotent failed the Peirce triviality test")
        self._corner_sizes = {}
        self._primitive = {}
        self.records = [IdempotentRecord(self, i) for i in range(len(E))]

    def __len__(self):
        return len(self.elements)

    def corner_size(self, i):
        if i not in self._corner_sizes:
            self._corner_sizes[i] = peirce_component(self.ring, self.elements[i], self.elements[i]).size
        return self._corner_sizes[i]

    def below(self, i):
        """Indices of idempotents ``g`` with ``e g = g = g e``."""
        ring = self.ring
        e = self.array[i:i + 1]
        left = ring.mul_arrays(e, self.array)
        right = ring.mul_arrays(self.array, e)
        mask = np.all(left == self.array, axis=1) & np.all(right == self.array, axis=1)
        return np.flatnonzero(mask)

    def is_primitive(self, i):
        if i not in self._primitive:
            e = self.elements[i]
            self._primitive[i] = (any(e) and len(self.below(i)) == 2)
        return self._primitive[i]

    def nontrivial_trivial_indices(self):
        """Peirce trivial idempotents other than 0 and 1, in enumeration order."""
        ring = self.ring
        out = []
        for i in np.flatnonzero(self.trivial):
            e = self.elements[i]
            if any(e) and e != ring.one:
                out.append(int(i))
        return out


def idempotent_table(ring, cap=DEFAULT_ENUM_CAP, workers=None):
    if ring.size > cap:
        raise CapExceeded("idempotent enumeration", ring.size, cap)
    key = ("idempotent_table",)
    if key not in ring._cache:
        ring._cache[key] = IdempotentTable(ring, cap, workers)
    return ring._cache[key]


def enumerate_idempotents(ring, cap=DEFAULT_ENUM_CAP, workers=None):
    """All idempotents, classified, in enumeration order."""
    return idempotent_table(ring, cap, workers).records


def _require_idempotent(ring, e):
    e = ring.elem(e)
    if ring.mul(e, e) != e:
        raise NotIdempotentError(f"{e} is not idempotent")
    return e


def is_inner_trivial(ring, e):
    """``e R (1-e) R e = 0``, on the subgroup generators of both factors."""
    e = _require_idempotent(ring, e)
    f = ring.complement(e)
    M = peirce_component(ring, e, f)
    N = peirce_component(ring, f, e)
    # e r (1-e) r' e = m n with m in eR(1-e), n in (1-e)Re
    return all(not any(ring.mul(x, y)) for x in M.generators for y in N.generators)


def classify_peirce(ring, e):
    """``(is_inner_trivial, is_outer_trivial)``, cross-checked with the ideal test."""
    e = _require_idempotent(ring, e)
    f = ring.complement(e)
    inner = is_inner_trivial(ring, e)
    outer = is_inner_trivial(ring, f)
    I = peirce_component(ring, e, f) + peirce_component(ring, f, e)
    if I.is_two_sided_ideal != (inner and outer):
        raise InternalConsistencyError(
            f"Peirce triviality of {e} disagrees with the ideal criterion")
    return inner, outer


def is_peirce_trivial(ring, e):
    inner, outer = classify_peirce(ring, e)
    return inner and outer


def is_trivial_in_corner(ring, eI, eJ):
    """``eJ`` is Peirce trivial in ``eI R eI`` (both given in ``ring``).

    Uses ``eJ b_i (eI - eJ) b_j eJ = 0`` and the mirror condition; these are
    the corner conditions because ``eI R eI`` is spanned by ``eI b_i eI``.
    """
    eL = ring.sub(eI, eJ)
    basis = [ring.basis_element(i) for i in range(ring.k)]
    for x, y in ((eJ, eL), (eL, eJ)):
        left = [ring.mul_chain(x, b, y) for b in basis]
        right = [ring.mul_chain(y, b, x) for b in basis]
        for a in left:
            for c in right:
                if any(ring.mul(a, c)):
                    return False
    return True


def corner_map_multiplicative(ring, e):
    """Whether ``x -> e x e`` is multiplicative on all basis pairs."""
    e = _require_idempotent(ring, e)
    basis = [ring.basis_element(i) for i in range(ring.k)]
    proj = [ring.mul_chain(e, b, e) for b in basis]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if ring.mul_chain(e, ring.mul(x, y), e) != ring.mul(proj[i], proj[j]):
                return False
    return True


# -- Peirce blocks ---------------------------------------------------------


@dataclass
class PeirceBlocks:
    A: object
    M: object
    N: object
    B: object


def peirce_blocks(ring, e):
    e = _require_idempotent(ring, e)
    f = ring.complement(e)
    return PeirceBlocks(peirce_component(ring, e, e), peirce_component(ring, e, f),
                        peirce_component(ring, f, e), peirce_component(ring, f, f))


# -- Peirce dimension ------------------------------------------------------


@dataclass
class DimensionNode:
    """A node of the decomposition tree.

    ``embed`` maps node coordinates to root coordinates.  ``pivot`` is the
    chosen idempotent of the node ring, in root coordinates; leaves have
    ``pivot is None``.
    """

    ring: object
    embed: np.ndarray
    identity: tuple
    depth: int
    pivot: tuple = None
    children: list = field(default_factory=list)
    dimension: object = None

    def leaves(self):
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]


@dataclass
class DimensionResult:
    dimension: object
    tree: DimensionNode

    @property
    def exceeds_cap(self):
        return self.dimension is EXCEEDS_CAP


def _to_root(root, embed, x):
    if embed.shape[0] == 0:
        return root.zero
    v = np.asarray(x, dtype=np.int64) @ embed
    return tuple(int(a) for a in v % root.mods)


def peirce_trivial_pivots(ring, cap=DEFAULT_ENUM_CAP, workers=None):
    table = idempotent_table(ring, cap, workers)
    return [table.elements[i] for i in table.nontrivial_trivial_indices()]


def decompose(ring, pivots_fn, depth_cap=DEFAULT_DEPTH_CAP, rng=None):
    """Recursive splitting through the idempotents returned by ``pivots_fn``.

    ``pivots_fn(ring)`` lists the candidate nontrivial idempotents of a node
    ring; the first is used (or a random one when ``rng`` is given).
    """
    root_embed = np.eye(ring.k, dtype=np.int64)
    root = DimensionNode(ring=ring, embed=root_embed, identity=ring.one, depth=0)
    if ring.size == 1:
        root.dimension = 0
        return DimensionResult(0, root)
    exceeded = False
    stack = [root]
    while stack:
        node = stack.pop()
        if node.depth > depth_cap:
            exceeded = True
            continue
        cands = pivots_fn(node.ring)
        if not cands:
            node.dimension = 1
            continue
        e = cands[rng.randrange(len(cands))] if rng is not None else cands[0]
        f = node.ring.complement(e)
        node.pivot = _to_root(ring, node.embed, e)
        for g in (e, f):
            c = corner_ring(node.ring, g)
            emb = (c.embed_matrix @ node.embed) % ring.mods if c.ring.k else np.zeros((0, ring.k), np.int64)
            child = DimensionNode(ring=c.ring, embed=emb, identity=_to_root(ring, node.embed, g),
                                  depth=node.depth + 1)
            node.children.append(child)
        stack.extend(reversed(node.children))
    if exceeded:
        return DimensionResult(EXCEEDS_CAP, root)
    _fill_dimensions(root)
    return DimensionResult(root.dimension, root)


def _fill_dimensions(node):
    if node.children:
        node.dimension = sum(_fill_dimensions(c) for c in node.children)
    return node.dimension


def peirce_dimension(ring, depth_cap=DEFAULT_DEPTH_CAP, rng=None, cap=DEFAULT_ENUM_CAP, workers=None):
    """Peirce dimension with its witness tree."""
    return decompose(ring, lambda r: peirce_trivial_pivots(r, cap, workers), depth_cap, rng)


def dimension_value(ring, **kw):
    return peirce_dimension(ring, **kw).dimension


@dataclass
class PivotCheck:
    pivot: tuple
    corner_dimension: object
    complement_dimension: object

    @property
    def total(self):
        if EXCEEDS_CAP in (self.corner_dimension, self.complement_dimension):
            return EXCEEDS_CAP
        return self.corner_dimension + self.complement_dimension


def all_pivot_dimensions(ring, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ENUM_CAP, workers=None):
    """``dim(eRe)`` and ``dim((1-e)R(1-e))`` for every nontrivial Peirce trivial ``e``."""
    memo = {}

    def dim(r):
        key = r.canonical_data()
        if key not in memo:
            memo[key] = peirce_dimension(r, depth_cap, None, cap, workers).dimension
        return memo[key]

    out = []
    for e in peirce_trivial_pivots(ring, cap, workers):
        a = dim(corner_ring(ring, e).ring)
        b = dim(corner_ring(ring, ring.complement(e)).ring)
        out.append(PivotCheck(e, a, b))
    return out


# -- complete 1-Peirce sets ------------------------------------------------


@dataclass
class SplitWitness:
    block: tuple  # I, 1-based
    part: tuple  # J, the block of the Peirce trivial idempotent
    rest: tuple
    e_block: tuple
    e_part: tuple
    verified: bool


@dataclass
class DMinus:
    subgroup: object
    nilpotency_index: object
    is_ideal: bool


@dataclass
class PeirceReport:
    ring: object
    dimension: object
    idempotents: list
    dyadic_chain: list
    witnesses: list
    d_minus: DMinus
    corner_sizes: list
    tree: DimensionNode


def _chain(node, labels):
    """Dyadic chain of a subtree, following the inductive construction."""
    if not node.children:
        return [[(labels[id(node)],)]], []
    left, right = node.children
    cl, wl = _chain(left, labels)
    cr, wr = _chain(right, labels)
    lset = cl[0][0]
    rset = cr[0][0]
    block = tuple(sorted(lset + rset))
    chain = [[block]]
    chain.extend(list(alpha) + [rset] for alpha in cl)
    chain.extend(list(cl[-1]) + list(beta) for beta in cr[1:])
    w = SplitWitness(block=block, part=lset, rest=rset, e_block=node.identity,
                     e_part=left.identity, verified=False)
    return chain, [w] + wl + wr


def _normalise_partition(p):
    return sorted(tuple(sorted(b)) for b in p)


def is_complete_dyadic_chain(chain, n):
    """Each step splits exactly one block in two; starts at one block, ends in singletons."""
    if not chain:
        return False
    parts = [_normalise_partition(p) for p in chain]
    if parts[0] != [tuple(range(1, n + 1))]:
        return False
    if parts[-1] != [(i,) for i in range(1, n + 1)]:
        return False
    for a, b in zip(parts, parts[1:]):
        if len(b) != len(a) + 1:
            return False
        sa, sb = set(a), set(b)
        gone = sa - sb
        new = sb - sa
        if len(gone) != 1 or len(new) != 2:
            return False
        (blk,) = gone
        x, y = new
        if set(x) | set(y) != set(blk) or set(x) & set(y):
            return False
    return True


def check_orthogonal_complete(ring, idems):
    idems = [ring.elem(e) for e in idems]
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            prod_ = ring.mul(e, f)
            want = e if i == j else ring.zero
            if prod_ != want:
                return False
    return ring.sum(idems) == ring.one


def d_minus(ring, idems, cap=None):
    """``sum_{i != j} e_i R e_j`` with its nilpotency index."""
    idems = [ring.elem(e) for e in idems]
    if not check_orthogonal_complete(ring, idems):
        raise PreconditionError("idempotent set is not pairwise orthogonal with sum 1")
    vecs = []
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            if i != j:
                vecs.extend(ring.mul_chain(e, ring.basis_element(a), f) for a in range(ring.k))
    s = span(ring, vecs)
    idx = nilpotency_index(ring, s, cap)
    return DMinus(subgroup=s, nilpotency_index=idx, is_ideal=s.is_two_sided_ideal)


def complete_one_peirce_set(ring, result=None, rng=None, depth_cap=DEFAULT_DEPTH_CAP,
                            cap=DEFAULT_ENUM_CAP, workers=None):
    """Complete set of orthogonal 1-Peirce idempotents with its dyadic chain."""
    if result is None:
        result = peirce_dimension(ring, depth_cap, rng, cap, workers)
    if result.exceeds_cap:
        raise CapExceeded("complete 1-Peirce set (depth)", result.tree.depth, depth_cap)
    tree = result.tree
    if ring.size == 1:
        return PeirceReport(ring, 0, [], [], [], DMinus(span(ring, []), 1, True), [], tree)
    leaves = tree.leaves()
    labels = {id(leaf): i + 1 for i, leaf in enumerate(leaves)}
    idems = [leaf.identity for leaf in leaves]
    if not check_orthogonal_complete(ring, idems):
        raise InternalConsistencyError("harvested idempotents are not orthogonal with sum 1")
    chain, witnesses = _chain(tree, labels)
    chain = [_normalise_partition(p) for p in chain]
    n = len(idems)
    if not is_complete_dyadic_chain(chain, n):
        raise InternalConsistencyError(f"assembled chain is not a complete dyadic set: {chain}")
    for w in witnesses:
        w.verified = is_trivial_in_corner(ring, w.e_block, w.e_part)
        if not w.verified:
            raise InternalConsistencyError(f"split witness for block {w.block} failed")
    dm = d_minus(ring, idems)
    if dm.nilpotency_index is EXCEEDS_CAP or dm.nilpotency_index > n:
        raise InternalConsistencyError("D(R)- nilpotency index exceeds the number of idempotents")
    sizes = [peirce_component(ring, e, e).size for e in idems]
    return PeirceReport(ring=ring, dimension=n, idempotents=idems, dyadic_chain=chain,
                        witnesses=witnesses, d_minus=dm, corner_sizes=sizes, tree=tree)


# -- idempotent operations -----------------------------------------------


@dataclass
class OrthogonalSplit:
    alpha: tuple
    beta: tuple
    g: tuple
    h: tuple
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def orthogonal_split(ring, e, f, require_trivial=True):
    """Split an idempotent ``f`` relative to a Peirce trivial ``e``.

    With ``f = g + m + n + h`` in the Peirce blocks of ``e``, returns
    ``alpha = g + gm + ng`` and ``beta = f - alpha = mh + hn + h``.
    """
    e = _require_idempotent(ring, e)
    f = _require_idempotent(ring, f)
    if require_trivial and not is_peirce_trivial(ring, e):
        raise NotPeirceTrivialError(f"{e} is not Peirce trivial")
    c = ring.complement(e)
    g = ring.mul_chain(e, f, e)
    m = ring.mul_chain(e, f, c)
    n = ring.mul_chain(c, f, e)
    h = ring.mul_chain(c, f, c)
    alpha = ring.sum([g, ring.mul(g, m), ring.mul(n, g)])
    beta = ring.sub(f, alpha)
    z = ring.zero
    checks = {
        "alpha_idempotent": ring.mul(alpha, alpha) == alpha,
        "beta_idempotent": ring.mul(beta, beta) == beta,
        "alpha_beta_zero": ring.mul(alpha, beta) == z,
        "beta_alpha_zero": ring.mul(beta, alpha) == z,
        "g_idempotent": ring.mul(g, g) == g,
        "h_idempotent": ring.mul(h, h) == h,
        "beta_formula": beta == ring.sum([ring.mul(m, h), ring.mul(h, n), h]),
    }
    return OrthogonalSplit(alpha, beta, g, h, checks)


def split_contract_violations(ring, e, F):
    """Rows of ``F`` (idempotents) whose split relative to ``e`` breaks a check.

    Vectorised form of :func:`orthogonal_split`; ``e`` must be Peirce trivial.
    Returns the indices of failing rows.
    """
    F = np.asarray(F, dtype=np.int64).reshape(-1, ring.k)
    n = F.shape[0]
    if n == 0 or ring.k == 0:
        return np.zeros(0, dtype=np.int64)
    mods = ring.mods
    e = ring.elem(e)
    c = ring.complement(e)
    mul = ring.mul_arrays

    def sandwich(a, b):
        # a f b as row vectors: f -> f b -> a (f b)
        return (((F @ ring.right_mult_matrix(b)) % mods) @ ring.left_mult_matrix(a)) % mods

    g, m, nn, h = sandwich(e, e), sandwich(e, c), sandwich(c, e), sandwich(c, c)
    alpha = (g + mul(g, m) + mul(nn, g)) % mods
    beta = (F - alpha) % mods
    ok = np.all(mul(alpha, alpha) == alpha, axis=1)
    ok &= np.all(mul(beta, beta) == beta, axis=1)
    ok &= ~np.any(mul(alpha, beta), axis=1)
    ok &= ~np.any(mul(beta, alpha), axis=1)
    ok &= np.all(mul(g, g) == g, axis=1)
    ok &= np.all(mul(h, h) == h, axis=1)
    ok &= np.all(beta == (mul(m, h) + mul(h, nn) + h) % mods, axis=1)
    return np.flatnonzero(~ok)


@dataclass
class FamilyMember:
    f: tuple
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def peirce_family(ring, e, m, n):
    """``f = e + m + n`` for ``m`` in ``eR(1-e)`` and ``n`` in ``(1-e)Re``."""
    e = _require_idempotent(ring, e)
    if not is_peirce_trivial(ring, e):
        raise NotPeirceTrivialError(f"{e} is not Peirce trivial")
    m = ring.elem(m)
    n = ring.elem(n)
    c = ring.complement(e)
    if ring.mul_chain(e, m, c) != m:
        raise PreconditionError("m is not in eR(1-e)")
    if ring.mul_chain(c, n, e) != n:
        raise PreconditionError("n is not in (1-e)Re")
    f = ring.sum([e, m, n])
    idem = ring.mul(f, f) == f
    checks = {
        "idempotent": idem,
        "peirce_trivial": idem and is_peirce_trivial(ring, f),
        "corner_size": idem and peirce_component(ring, f, f).size == peirce_component(ring, e, e).size,
        "f_ef_is_f": ring.mul_chain(f, e, f) == f,
        "e_fe_is_e": ring.mul_chain(e, f, e) == e,
    }
    return FamilyMember(f, checks)


def corner_idempotents(ring, e, cap=DEFAULT_ENUM_CAP):
    """Idempotents of ``eRe`` (as elements of ``ring``)."""
    e = _require_idempotent(ring, e)
    table = idempotent_table(ring, cap)
    try:
        i = table.elements.index(e)
    except ValueError:
        raise InternalConsistencyError("idempotent missing from enumeration")
    return [table.elements[j] for j in table.below(i)]


def is_primitive(ring, e, cap=DEFAULT_ENUM_CAP):
    """Nonzero ``e`` whose corner has no idempotents besides ``0`` and ``e``."""
    e = _require_idempotent(ring, e)
    if not any(e):
        raise PreconditionError("primitivity is defined for nonzero idempotents")
    c = corner_ring(ring, e)
    return len(idempotent_array(c.ring, cap)) == 2


def is_primitive_via_parent(ring, e, cap=DEFAULT_ENUM_CAP):
    """Same as ``is_primitive`` but from the parent's idempotent list."""
    return any(e) and len(corner_idempotents(ring, e, cap)) == 2


# -- conjugacy --------------------------------------------------------------


@dataclass
class Conjugation:
    s: tuple
    s_inv: tuple
    sigma: tuple  # 0-based: f[sigma[i]] = s e_i s^-1
    method: str


def _pair_witness(ring, e, f, candidate_cap=4096):
    """``(s, t)`` with ``s`` in ``fRe``, ``t`` in ``eRf``, ``st = f``, ``ts = e``."""
    S = peirce_component(ring, f, e)
    k = ring.k
    basis = [ring.basis_element(i) for i in range(k)]

    def attempt(s):
        # t -> (s t, t s) is linear; solve for (f, e)
        images = [ring.mul(s, b) + ring.mul(b, s) for b in basis]
        t = lattice.solve(images, tuple(f) + tuple(e), ring.orders, list(ring.orders) * 2)
        if t is None:
            return None
        t = ring.mul_chain(e, t, f)
        if ring.mul(s, t) == tuple(f) and ring.mul(t, s) == tuple(e):
            return t
        return None

    first = ring.mul(f, e)
    t = attempt(first)
    if t is not None:
        return first, t
    if S.size > candidate_cap:
        return None
    for row in S.elements(candidate_cap):
        s = tuple(int(v) for v in row)
        if s == first:
            continue
        t = attempt(s)
        if t is not None:
            return s, t
    return None


def conjugating_unit(ring, set_e, set_f, oracle_cap=DEFAULT_ORACLE_CAP):
    """Unit ``s`` and permutation ``sigma`` with ``s e_i s^-1 = f_sigma(i)``, or None."""
    E = [ring.elem(x) for x in set_e]
    F = [ring.elem(x) for x in set_f]
    if not check_orthogonal_complete(ring, E) or not check_orthogonal_complete(ring, F):
        raise PreconditionError("both sets must be pairwise orthogonal with sum 1")
    if len(E) != len(F):
        return None
    n = len(E)
    se = [peirce_component(ring, x, x).size for x in E]
    sf = [peirce_component(ring, x, x).size for x in F]
    cache = {}

    def pair(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = _pair_witness(ring, E[i], F[j]) if se[i] == sf[j] else None
        return cache[(i, j)]

    def search(i, used, chosen):
        if i == n:
            return list(chosen)
        for j in range(n):
            if j in used:
                continue
            w = pair(i, j)
            if w is None:
                continue
            chosen.append((j, w))
            out = search(i + 1, used | {j}, chosen)
            if out is not None:
                return out
            chosen.pop()
        return None

    found = search(0, frozenset(), [])
    if found is not None:
        s = ring.sum(w[0] for _, w in found)
        t = ring.sum(w[1] for _, w in found)
        sigma = tuple(j for j, _ in found)
        if ring.mul(s, t) != ring.one or ring.mul(t, s) != ring.one:
            raise InternalConsistencyError("assembled conjugating element is not a unit")
        for i in range(n):
            if ring.mul_chain(s, E[i], t) != F[sigma[i]]:
                raise InternalConsistencyError("assembled unit does not conjugate the sets")
        return Conjugation(s, t, sigma, "constructive")
    if ring.size <= oracle_cap:
        return _conjugating_unit_search(ring, E, F)
    return None


def _conjugating_unit_search(ring, E, F):
    index = {f: j for j, f in enumerate(F)}
    for row in ring.elements(ring.size):
        u = tuple(int(v) for v in row)
        ok, inv = is_unit(ring, u)
        if not ok:
            continue
        sigma = []
        for e in E:
            j = index.get(ring.mul_chain(u, e, inv))
            if j is None or j in sigma:
                break
            sigma.append(j)
        else:
            return Conjugation(u, inv, tuple(sigma), "exhaustive")
    return None


# -- criterion, quasi-Baer, primeness -----------------------------------


@dataclass
class CriterionReport:
    holds: bool
    indices: dict  # subset (1-based tuple) -> nilpotency index


def one_peirce_criterion(ring, idems, cap=None):
    """Sufficient nilpotency test for the ring to be 1-Peirce."""
    idems = [ring.elem(e) for e in idems]
    if not check_orthogonal_complete(ring, idems):
        raise PreconditionError("idempotent set is not pairwise orthogonal with sum 1")
    n = len(idems)
    pieces = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                pieces[(i, j)] = peirce_component(ring, idems[i], idems[j]).generators
    indices = {}
    holds = True
    for size in range(2, n + 1):
        for I in itertools.combinations(range(n), size):
            gens = [g for i in I for j in I if i != j for g in pieces[(i, j)]]
            s = subgroup_from_generators(ring, gens, "multiplicative")
            idx = nilpotency_index(ring, s, cap)
            indices[tuple(i + 1 for i in I)] = idx
            if not (idx is EXCEEDS_CAP or idx > size):
                holds = False
    return CriterionReport(holds, indices)


def _require_small(ring, cap, what):
    if ring.size > cap:
        raise CapExceeded(what, ring.size, cap)


def _xr_annihilator(ring, x):
    """``{y : x b_i y = 0 for all i}``, the right annihilator of ``RxR``."""
    images = []
    for a in range(ring.k):
        b = ring.basis_element(a)
        row = []
        for i in range(ring.k):
            row.extend(ring.mul_chain(x, ring.basis_element(i), b))
        images.append(row)
    return lattice.kernel(images, ring.orders, list(ring.orders) * ring.k)


def is_quasi_baer(ring, cap=DEFAULT_ORACLE_CAP):
    """Every right annihilator of an ideal is ``eR`` for an idempotent ``e``."""
    _require_small(ring, cap, "quasi-Baer test")
    if ring.k == 0:
        return True
    forms = set()
    for row in ring.elements(cap):
        forms.add(_xr_annihilator(ring, tuple(int(v) for v in row)))
    orders = ring.orders
    work = list(forms)
    while work:
        a = work.pop()
        for b in list(forms):
            c = lattice.intersection(a, b, orders)
            if c not in forms:
                forms.add(c)
                work.append(c)
    principal = set()
    for e in idempotent_table(ring).elements:
        principal.add(span(ring, [ring.mul(e, ring.basis_element(i)) for i in range(ring.k)]).form)
    return forms <= principal


def is_prime_ring(ring, cap=DEFAULT_ORACLE_CAP):
    """No nonzero ``x, y`` with ``x R y = 0``."""
    _require_small(ring, cap, "primeness test")
    if ring.size == 1:
        return False
    for row in ring.elements(cap)[1:]:
        form = _xr_annihilator(ring, tuple(int(v) for v in row))
        if any(form[j][j] != ring.orders[j] for j in range(ring.k)):
            return False
    return True


def is_semiprime_ring(ring, cap=DEFAULT_ORACLE_CAP):
    """No nonzero ``x`` with ``x R x = 0``."""
    _require_small(ring, cap, "semiprimeness test")
    if ring.size == 1:
        return True
    X = ring.elements(cap)[1:]
    P = _sandwich_rows(ring, X, X)
    return not np.any(~P.reshape(P.shape[0], -1).any(axis=1))


# -- strict chains ---------------------------------------------------------


def strict_peirce_chain(ring, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ENUM_CAP):
    """Ordered Peirce trivial idempotents with 1-Peirce corners, or None.

    Depth-first search with backtracking: ``e_1`` is Peirce trivial with a
    1-Peirce corner and the complement corner is again strict.
    """
    memo = {}

    def dim(r):
        key = r.canonical_data()
        if key not in memo:
            memo[key] = peirce_dimension(r, depth_cap, None, cap).dimension
        return memo[key]

    fails = set()

    def search(r, embed, depth):
        if depth > depth_cap:
            return None
        if dim(r) == 1:
            return [_to_root(ring, embed, r.one)]
        key = r.canonical_data()
        if key in fails:
            return None
        for e in peirce_trivial_pivots(r, cap):
            c = corner_ring(r, e)
            if dim(c.ring) != 1:
                continue
            comp = corner_ring(r, r.complement(e))
            emb = (comp.embed_matrix @ embed) % ring.mods
            rest = search(comp.ring, emb, depth + 1)
            if rest is not None:
                return [_to_root(ring, embed, e)] + rest
        fails.add(key)
        return None

    if ring.size == 1:
        return []
    return search(ring, np.eye(ring.k, dtype=np.int64), 0)

