"""Jacobson and prime radicals, radical-trivial idempotents and lifting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lattice
from .enumerate import DEFAULT_ENUM_CAP, nilpotent_array
from .ideals import (
    EXCEEDS_CAP,
    Subgroup,
    corner_ring,
    ideal,
    nilpotency_index,
    peirce_component,
    quotient_ring,
    span,
    subgroup_from_generators,
    whole_ring,
    zero_subgroup,
)
from .peirce import (
    DEFAULT_DEPTH_CAP,
    DEFAULT_ORACLE_CAP,
    _complements,
    _left_rows,
    _right_rows,
    _sandwich_rows,
    complete_one_peirce_set,
    decompose,
    idempotent_table,
    is_peirce_trivial,
    peirce_dimension,
)
from .ring import (
    CapExceeded,
    InternalConsistencyError,
    NotIdempotentError,
    PreconditionError,
    RingError,
)

QUOTIENT_CAP = 1 << 18

ORACLE = "oracle"
QUOTIENT = "quotient-structural"
PEIRCE = "peirce-structural"
B_EQUALS_J = "jacobson (finite-ring identity B = J)"
FIXPOINT = "fixpoint"


class NoMethodApplicable(RingError):
    pass


# -- unit masks --------------------------------------------------------------


def _unit_mask_by_image(ring):
    """Units of a small ring: ``u`` is a unit iff ``u R = R``."""
    X = ring.elements(ring.size)
    rows = _left_rows(ring, X)  # u * b_i
    mask = np.zeros(len(X), dtype=bool)
    for n in range(len(X)):
        b = lattice.LatticeBuilder(ring.orders)
        b.add_all(rows[n].tolist())
        mask[n] = b.size() == ring.size
    return mask


def _inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def batched_full_rank_mod_p(M, p):
    """Which square matrices in the batch ``M`` are invertible over ``F_p``."""
    M = np.array(M, dtype=np.int64) % p
    n, d, _ = M.shape
    inv = _inverse_table(p)
    ok = np.ones(n, dtype=bool)
    idx = np.arange(n)
    for c in range(d):
        sub = M[:, c:, c] != 0
        has = sub.any(axis=1)
        ok &= has
        piv = c + np.argmax(sub, axis=1)
        # swap rows c and piv
        row_c = M[idx, c].copy()
        row_p = M[idx, piv].copy()
        M[idx, c] = row_p
        M[idx, piv] = row_c
        scale = inv[M[:, c, c]]
        M[:, c] = (M[:, c] * scale[:, None]) % p
        factors = M[:, :, c].copy()
        factors[:, c] = 0
        M = (M - factors[:, :, None] * M[:, c][:, None, :]) % p
    return ok


def unit_mask_fp(ring, p):
    """Units of an ``F_p``-algebra (all orders ``p``) by regular-representation rank."""
    if ring.k == 0:
        return np.ones(1, dtype=bool)
    out = np.zeros(ring.size, dtype=bool)
    step = max(1, (1 << 22) // (ring.k * ring.k))
    for idx, X in ring.iter_chunks(step):
        L = np.einsum("ni,ijl->njl", X, ring.table) % p
        out[idx] = batched_full_rank_mod_p(L, p)
    return out


# -- the three Jacobson routes ----------------------------------------------


def _left_ideal_elements(ring, x):
    """Elements of ``R x`` (the span of ``b_i x``)."""
    s = span(ring, [ring.mul(ring.basis_element(i), x) for i in range(ring.k)])
    return s.elements(ring.size)


def _quasi_regular_left_ideal(ring, x, unit):
    Z = _left_ideal_elements(ring, x)
    one = np.array(ring.one, dtype=np.int64)
    W = (one[None, :] - Z) % ring.mods
    return bool(unit[ring.encode(W)].all())


def jacobson_oracle(ring, cap=DEFAULT_ORACLE_CAP):
    """``x`` in J iff ``1 - yx`` is a unit for every ``y`` (element-level)."""
    if ring.size > cap:
        raise CapExceeded("Jacobson oracle", ring.size, cap)
    if ring.k == 0:
        return zero_subgroup(ring)
    unit = _unit_mask_by_image(ring)
    members = []
    for row in ring.elements(cap):
        x = tuple(int(v) for v in row)
        if _quasi_regular_left_ideal(ring, x, unit):
            members.append(x)
    return span(ring, members)


def _jacobson_fp_algebra(ring, p):
    """J of an ``F_p``-algebra by a nilpotent-candidate sweep with coset skipping."""
    if ring.k == 0:
        return zero_subgroup(ring)
    if ring.size > QUOTIENT_CAP:
        raise CapExceeded("F_p-algebra radical sweep", ring.size, QUOTIENT_CAP)
    unit = unit_mask_fp(ring, p)
    cands = nilpotent_array(ring, cap=QUOTIENT_CAP)
    state = np.zeros(ring.size, dtype=np.int8)  # 1 in J, -1 outside
    b = lattice.LatticeBuilder(ring.orders)
    state[0] = 1
    S = zero_subgroup(ring)
    cidx = ring.encode(cands)
    for i, x in zip(cidx, cands):
        if state[i]:
            continue
        xt = tuple(int(v) for v in x)
        if _quasi_regular_left_ideal(ring, xt, unit):
            b.add(xt)
            S = Subgroup.from_builder(ring, b)
            state[ring.encode(S.elements(ring.size))] = 1
        else:
            coset = (S.elements(ring.size) + x[None, :]) % ring.mods
            state[ring.encode(coset)] = -1
    return S


def crt_components(ring):
    """``(p, epsilon_p)`` with ``epsilon_p = c_p * 1`` central, orthogonal, summing to 1."""
    fac = ring.exponent_factorization
    e = ring.exponent
    out = []
    for p, a in sorted(fac.items()):
        q = p ** a
        rest = e // q
        # c = rest * (rest^-1 mod q): 1 mod q, 0 mod rest
        c = (rest * pow(rest, -1, q)) % e if rest > 1 else 1
        out.append((p, ring.scale(c, ring.one)))
    return out


def jacobson_quotient_structural(ring, cap=QUOTIENT_CAP):
    if ring.k == 0:
        return zero_subgroup(ring)
    gens = []
    for p, eps in crt_components(ring):
        c = corner_ring(ring, eps)
        Rp = c.ring
        pR = span(Rp, [Rp.scale(p, Rp.basis_element(i)) for i in range(Rp.k)])
        q = quotient_ring(Rp, pR)
        if q.ring.size > cap:
            raise CapExceeded("quotient-structural radical", q.ring.size, cap)
        Jbar = _jacobson_fp_algebra(q.ring, p)
        lifted = [q.lift(g) for g in Jbar.generators] + list(pR.generators)
        gens.extend(c.embed(x) for x in lifted)
    return span(ring, gens)


def jacobson_peirce_structural(ring, report=None, oracle_cap=DEFAULT_ORACLE_CAP):
    """``J = D(R)- + sum J(e_i R e_i)`` from a complete 1-Peirce set."""
    if ring.k == 0:
        return zero_subgroup(ring)
    if report is None:
        report = complete_one_peirce_set(ring)
    gens = list(report.d_minus.subgroup.generators)
    for e in report.idempotents:
        c = corner_ring(ring, e)
        try:
            Jc = jacobson_quotient_structural(c.ring)
        except CapExceeded:
            Jc = jacobson_oracle(c.ring, oracle_cap)
        gens.extend(c.embed(g) for g in Jc.generators)
    return span(ring, gens)


@dataclass
class RadicalReport:
    jacobson: Subgroup
    prime_radical: Subgroup
    nilpotency_index_of_J: object
    semisimple_quotient: object
    method: str
    prime_method: str
    methods: dict = field(default_factory=dict)
    quotient_radical_zero: bool = True


def jacobson_by_methods(ring, methods=None, oracle_cap=DEFAULT_ORACLE_CAP, peirce_report=None,
                        quotient_cap=QUOTIENT_CAP):
    """Run the requested (or all applicable) routes; returns ``{method: Subgroup}``."""
    results = {}
    want = set(methods) if methods else {ORACLE, QUOTIENT, PEIRCE}
    if ORACLE in want and ring.size <= oracle_cap:
        results[ORACLE] = jacobson_oracle(ring, oracle_cap)
    if QUOTIENT in want:
        try:
            results[QUOTIENT] = jacobson_quotient_structural(ring, quotient_cap)
        except CapExceeded:
            if methods and QUOTIENT in methods and len(want) == 1:
                raise
    cached = peirce_report is not None or ring._cache.get(("one_peirce_set",)) is not None
    if PEIRCE in want and (cached or (methods and PEIRCE in methods)):
        rep = peirce_report or ring._cache.get(("one_peirce_set",))
        results[PEIRCE] = jacobson_peirce_structural(ring, rep, oracle_cap)
    if not results:
        raise NoMethodApplicable("no Jacobson radical method applies within the caps")
    forms = {m: s.form for m, s in results.items()}
    if len(set(forms.values())) > 1:
        raise InternalConsistencyError(f"Jacobson radical methods disagree: "
                                       f"{ {m: s.size for m, s in results.items()} }")
    return results


def _choose(results):
    for m in (PEIRCE, QUOTIENT, ORACLE):
        if m in results:
            return m
    raise NoMethodApplicable("no result")


def jacobson_radical(ring, methods=None, oracle_cap=DEFAULT_ORACLE_CAP, peirce_report=None,
                     check_quotient=True, prime_cap=DEFAULT_ORACLE_CAP):
    """Jacobson radical with cross-checked routes, prime radical and ``R/J``."""
    results = jacobson_by_methods(ring, methods, oracle_cap, peirce_report)
    method = _choose(results)
    J = results[method]
    if not J.is_two_sided_ideal:
        raise InternalConsistencyError("computed Jacobson radical is not an ideal")
    idx = nilpotency_index(ring, J)
    if idx is EXCEEDS_CAP:
        raise InternalConsistencyError("computed Jacobson radical is not nilpotent")
    B, pmethod = prime_radical_with_method(ring, prime_cap, J=J)
    if B != J:
        raise InternalConsistencyError("prime radical and Jacobson radical differ")
    q = quotient_ring(ring, J)
    zero_ok = True
    if check_quotient:
        try:
            Jq = jacobson_quotient_structural(q.ring)
        except CapExceeded:
            Jq = jacobson_oracle(q.ring, oracle_cap)
        zero_ok = Jq.is_zero()
        if not zero_ok:
            raise InternalConsistencyError("J(R/J) is not zero")
    return RadicalReport(jacobson=J, prime_radical=B, nilpotency_index_of_J=idx, semisimple_quotient=q,
                         method=method, prime_method=pmethod, methods=results,
                         quotient_radical_zero=zero_ok)


# -- prime radical -----------------------------------------------------------


def prime_radical_fixpoint(ring, cap=DEFAULT_ORACLE_CAP):
    """Largest nilpotent ideal, grown from elements generating nilpotent ideals."""
    if ring.size > cap:
        raise CapExceeded("prime radical fixpoint", ring.size, cap)
    N = zero_subgroup(ring)
    if ring.k == 0:
        return N
    cands = nilpotent_array(ring, cap)
    while True:
        outside = ~lattice.batch_member_mask(N.form, ring.orders, cands)
        grown = False
        for row in cands[outside]:
            x = tuple(int(v) for v in row)
            if x in N:
                continue
            I = ideal(ring, list(N.generators) + [x])
            if nilpotency_index(ring, I) is not EXCEEDS_CAP:
                N = I
                grown = True
                break
        if not grown:
            return N


def prime_radical_with_method(ring, cap=DEFAULT_ORACLE_CAP, J=None):
    if ring.size <= cap:
        return prime_radical_fixpoint(ring, cap), FIXPOINT
    if J is None:
        J = jacobson_radical(ring, check_quotient=False, prime_cap=0).jacobson if ring.k else zero_subgroup(ring)
    return J, B_EQUALS_J


def prime_radical(ring, cap=DEFAULT_ORACLE_CAP):
    return prime_radical_with_method(ring, cap)[0]


# -- radical-trivial idempotents ------------------------------------------


@dataclass
class RadicalTrivialityRecord:
    element: tuple
    is_j_trivial: bool
    is_b_trivial: bool


def _mixed_products(ring, e):
    f = ring.complement(e)
    M = peirce_component(ring, e, f).generators
    N = peirce_component(ring, f, e).generators
    return [ring.mul(m, n) for m in M for n in N] + [ring.mul(n, m) for n in N for m in M]


def is_radical_trivial(ring, e, rad):
    """``eR(1-e)Re`` and ``(1-e)ReR(1-e)`` lie in ``rad``."""
    return rad.contains_all(_mixed_products(ring, e))


def classify_j_b_trivial(ring, e, J=None, B=None):
    e = ring.elem(e)
    if ring.mul(e, e) != e:
        raise NotIdempotentError(f"{e} is not idempotent")
    if J is None:
        J = jacobson_radical(ring, check_quotient=False).jacobson
    if B is None:
        B = prime_radical(ring)
    return RadicalTrivialityRecord(e, is_radical_trivial(ring, e, J), is_radical_trivial(ring, e, B))


def radical_trivial_mask(ring, E, rad):
    """Vectorised radical-triviality for an array of idempotents."""
    E = np.asarray(E, dtype=np.int64)
    n, k = E.shape
    if k == 0 or n == 0:
        return np.ones(n, dtype=bool)
    F = _complements(ring, E)
    out = np.ones(n, dtype=bool)
    step = max(1, (1 << 21) // max(1, k ** 4))
    T = ring.table
    mods = ring.mods
    for s in range(0, n, step):
        ok = np.ones(len(E[s:s + step]), dtype=bool)
        for X, Y in ((E[s:s + step], F[s:s + step]), (F[s:s + step], E[s:s + step])):
            A = _sandwich_rows(ring, X, Y)  # x b_i y
            AB = np.einsum("nia,ajl->nijl", A, T) % mods
            P = np.einsum("nija,nal->nijl", AB, _right_rows(ring, X)) % mods
            flat = P.reshape(-1, k)
            mem = lattice.batch_member_mask(rad.form, ring.orders, flat)
            ok &= mem.reshape(P.shape[0], -1).all(axis=1)
        out[s:s + step] = ok
    return out


def b_trivial_pivots(ring, cap=DEFAULT_ENUM_CAP, prime_cap=DEFAULT_ORACLE_CAP):
    table = idempotent_table(ring, cap)
    B = prime_radical(ring, prime_cap)
    mask = radical_trivial_mask(ring, table.array, B)
    out = []
    for i in np.flatnonzero(mask):
        e = table.elements[i]
        if any(e) and e != ring.one:
            out.append(e)
    return out


@dataclass
class BDimensionResult:
    dimension: object
    tree: object
    quotient_checks: dict


def b_dimension(ring, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ENUM_CAP, check_quotient=True):
    """Dimension of the recursion through B-trivial idempotents.

    The quotient check compares with the Peirce dimension of ``R/B(R)`` and
    confirms that it splits into that many central semiprime 1-Peirce blocks.
    """
    res = decompose(ring, lambda r: b_trivial_pivots(r, cap), depth_cap)
    checks = {}
    if check_quotient and res.dimension is not EXCEEDS_CAP and ring.k:
        B = prime_radical(ring)
        q = quotient_ring(ring, B).ring
        rep = complete_one_peirce_set(q)
        checks["quotient_dimension_matches"] = rep.dimension == res.dimension
        checks["quotient_idempotents_central"] = all(
            all(q.mul(e, q.basis_element(i)) == q.mul(q.basis_element(i), e) for i in range(q.k))
            for e in rep.idempotents)
        semiprime = True
        for e in rep.idempotents:
            c = corner_ring(q, e).ring
            if not prime_radical(c).is_zero():
                semiprime = False
        checks["quotient_factors_semiprime"] = semiprime
        checks["quotient_factors_one_peirce"] = all(
            peirce_dimension(corner_ring(q, e).ring).dimension == 1 for e in rep.idempotents)
    return BDimensionResult(res.dimension, res.tree, checks)


# -- lifting ---------------------------------------------------------------


@dataclass
class LiftResult:
    element: tuple
    iterations: int


def lift_idempotent(ring, nil_ideal, ebar, max_iterations=None):
    """Lift an idempotent modulo a nilpotent ideal by ``e <- 3e^2 - 2e^3``."""
    if not nil_ideal.is_two_sided_ideal:
        raise PreconditionError("lifting needs a two-sided ideal")
    idx = nilpotency_index(ring, nil_ideal)
    if idx is EXCEEDS_CAP:
        raise PreconditionError("ideal is not nilpotent")
    e = ring.elem(ebar)
    if ring.sub(ring.mul(e, e), e) not in nil_ideal:
        raise PreconditionError("element is not idempotent modulo the ideal")
    limit = max_iterations or (idx + 1)
    it = 0
    start = e
    while ring.mul(e, e) != e:
        if it >= limit:
            raise InternalConsistencyError("lifting did not converge within the nilpotency bound")
        e2 = ring.mul(e, e)
        e3 = ring.mul(e2, e)
        e = ring.sub(ring.scale(3, e2), ring.scale(2, e3))
        it += 1
    if ring.sub(e, start) not in nil_ideal:
        raise InternalConsistencyError("lift left the coset of the ideal")
    return LiftResult(e, it)


@dataclass
class LiftRecord:
    central_idempotent: tuple  # in R/J
    lift: tuple
    iterations: int
    is_j_trivial: bool


@dataclass
class WeaklyLiftingReport:
    quotient: object
    nilpotency_index_of_J: object
    lifts: list
    factor_count: int

    @property
    def all_lift(self):
        return all(r.is_j_trivial for r in self.lifts)


def weakly_lifting_report(ring, radicals=None, cap=DEFAULT_ENUM_CAP):
    if radicals is None:
        radicals = jacobson_radical(ring)
    J = radicals.jacobson
    q = radicals.semisimple_quotient
    Q = q.ring
    table = idempotent_table(Q, cap)
    central = [table.elements[i] for i in np.flatnonzero(table.central)]
    lifts = []
    for c in central:
        res = lift_idempotent(ring, J, q.lift(c))
        if q.project(res.element) != tuple(c):
            raise InternalConsistencyError("lift does not project to the central idempotent")
        lifts.append(LiftRecord(tuple(c), res.element, res.iterations,
                                is_radical_trivial(ring, res.element, J)))
    atoms = 0
    cset = [c for c in central if any(c)]
    for c in cset:
        below = [d for d in cset if d != c and Q.mul(c, d) == d]
        if not below:
            atoms += 1
    return WeaklyLiftingReport(q, radicals.nilpotency_index_of_J, lifts, atoms)
