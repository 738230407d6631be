"""Full analysis of a ring: Peirce structure, radicals and expectation checks."""

from __future__ import annotations

import random

import numpy as np

from .enumerate import DEFAULT_ENUM_CAP
from .ideals import EXCEEDS_CAP, corner_ring, peirce_component
from .peirce import (
    DEFAULT_DEPTH_CAP,
    DEFAULT_ORACLE_CAP,
    all_pivot_dimensions,
    complete_one_peirce_set,
    is_peirce_trivial,
    peirce_dimension,
)
from .radical import b_dimension, classify_j_b_trivial, jacobson_radical
from .ring import CapExceeded

# source label for structural checks that hold for every ring
INVARIANT = "invariant"


def _jsonable_dim(d):
    return "exceeds cap" if d is EXCEEDS_CAP else d


def _subgroup_doc(s):
    return {"generators": [list(g) for g in s.generators], "size": s.size}


def block_table(ring, idems):
    """Sizes of ``e_i R e_j`` and whether ``M_ij M_ji`` vanishes."""
    n = len(idems)
    comps = [[peirce_component(ring, idems[i], idems[j]) for j in range(n)] for i in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            zero = None
            if i != j:
                zero = all(not any(ring.mul(a, b)) for a in comps[i][j].generators
                           for b in comps[j][i].generators)
            row.append({"row": i + 1, "col": j + 1, "size": comps[i][j].size, "zero_pairing": zero})
        rows.append(row)
    return rows


def _check(name, passed, source, claim, expected=None, actual=None):
    doc = {"name": name, "pass": bool(passed), "source": source, "claim": claim}
    if expected is not None:
        doc["expected"] = expected
    if actual is not None:
        doc["actual"] = actual
    return doc


def _evaluate(exp, ring, report, elements, state):
    """Actual value for one gallery expectation."""
    kind = exp.kind
    if kind == "size":
        return ring.size
    if kind == "dimension":
        return _jsonable_dim(report["dimension"])
    if kind == "corner_dimension":
        c = corner_ring(ring, elements[exp.element])
        return _jsonable_dim(peirce_dimension(c.ring, state["depth_cap"], cap=state["enum_cap"]).dimension)
    if kind == "is_sum":
        f = elements[exp.element]
        parts = [elements[p] for p in exp.parts]
        ok = ring.sum(parts) == f
        for a, x in enumerate(parts):
            for b, y in enumerate(parts):
                ok = ok and ring.mul(x, y) == (x if a == b else ring.zero)
        return ok
    if kind == "corner_set":
        c = corner_ring(ring, elements[exp.element])
        rep = complete_one_peirce_set(c.ring, depth_cap=state["depth_cap"], cap=state["enum_cap"])
        found = sorted(c.embed(e) for e in rep.idempotents)
        return found == sorted(elements[p] for p in exp.parts)
    if kind == "dyadic_chain":
        return report["dyadic_chain"]
    if kind == "no_trivial_corner_dimension":
        pivots = state.get("pivots")
        if pivots is None:
            pivots = state["pivots"] = all_pivot_dimensions(ring, state["depth_cap"], state["enum_cap"])
        return all(p.corner_dimension != exp.expected for p in pivots)
    if kind == "peirce_trivial":
        return is_peirce_trivial(ring, elements[exp.element])
    if kind == "b_trivial":
        rad = state["radicals"]
        return classify_j_b_trivial(ring, elements[exp.element], rad.jacobson, rad.prime_radical).is_b_trivial
    if kind == "b_dimension":
        res = b_dimension(ring, state["depth_cap"], state["enum_cap"])
        state["b_checks"] = res.quotient_checks
        return _jsonable_dim(res.dimension)
    raise ValueError(f"unknown expectation kind {kind}")


def analyze(ring, name="", expectations=(), elements=None, designated=None,
            enum_cap=DEFAULT_ENUM_CAP, depth_cap=DEFAULT_DEPTH_CAP, oracle_cap=DEFAULT_ORACLE_CAP,
            seed=None, restarts=0):
    """Analysis document (plain dict, JSON-ready).

    ``designated`` maps labels to idempotents whose corners are reported;
    ``restarts`` > 0 repeats the decomposition with random pivots (seeded) and
    checks that ``D(R)-`` does not change.
    """
    elements = dict(elements or {})
    designated = dict(designated or {})
    doc = {"name": name or ring.name, "size": ring.size, "basis_size": ring.k}
    checks = []
    res = peirce_dimension(ring, depth_cap, cap=enum_cap)
    doc["dimension"] = _jsonable_dim(res.dimension)
    report = {"dimension": res.dimension, "dyadic_chain": None}
    if res.dimension is not EXCEEDS_CAP:
        rep = complete_one_peirce_set(ring, res)
        ring._cache[("one_peirce_set",)] = rep
        chain = [[list(b) for b in p] for p in rep.dyadic_chain]
        report["dyadic_chain"] = chain
        doc["idempotents"] = [list(e) for e in rep.idempotents]
        doc["dyadic_chain"] = chain
        doc["d_minus"] = dict(_subgroup_doc(rep.d_minus.subgroup),
                              nilpotency_index=_jsonable_dim(rep.d_minus.nilpotency_index))
        corners = []
        for e in rep.idempotents:
            c = corner_ring(ring, e)
            corners.append({"size": c.ring.size,
                            "dimension": _jsonable_dim(peirce_dimension(c.ring, depth_cap, cap=enum_cap).dimension)})
        doc["corners"] = corners
        doc["blocks"] = block_table(ring, rep.idempotents)
        doc["witnesses"] = [{"block": list(w.block), "part": list(w.part), "rest": list(w.rest),
                             "verified": w.verified} for w in rep.witnesses]
        idems = rep.idempotents
        complete = ring.sum(idems) == ring.one and all(
            ring.mul(x, y) == (x if a == b else ring.zero)
            for a, x in enumerate(idems) for b, y in enumerate(idems))
        checks.append(_check("complete set sums to 1 and is orthogonal", complete, INVARIANT,
                             "the harvested idempotents are orthogonal and sum to 1"))
        checks.append(_check("dyadic chain witnesses", all(w.verified for w in rep.witnesses), INVARIANT,
                             "each split idempotent is Peirce trivial in its block corner"))
        idx = rep.d_minus.nilpotency_index
        checks.append(_check("D(R)- nilpotency index <= n", idx is not EXCEEDS_CAP and idx <= rep.dimension,
                             "asserted", "D(R)- is nilpotent of index at most n",
                             expected=rep.dimension, actual=_jsonable_dim(idx)))
        if restarts:
            rng = random.Random(seed)
            same = True
            for _ in range(restarts):
                r2 = complete_one_peirce_set(ring, rng=rng, depth_cap=depth_cap, cap=enum_cap)
                same = same and r2.d_minus.subgroup == rep.d_minus.subgroup
            checks.append(_check("D(R)- independent of the complete set", same, "asserted",
                                 f"{restarts} randomized restarts give the same D(R)-"))
    else:
        doc["idempotents"] = []
        doc["dyadic_chain"] = []
        doc["d_minus"] = None
        doc["corners"] = []
    state = {"depth_cap": depth_cap, "enum_cap": enum_cap}
    try:
        rad = jacobson_radical(ring, oracle_cap=oracle_cap)
        state["radicals"] = rad
        doc["radicals"] = {"J": _subgroup_doc(rad.jacobson), "B": _subgroup_doc(rad.prime_radical),
                           "method": rad.method, "prime_method": rad.prime_method,
                           "methods_run": sorted(rad.methods),
                           "nilpotency_index_of_J": _jsonable_dim(rad.nilpotency_index_of_J)}
        agree = all(s == rad.jacobson for s in rad.methods.values())
        checks.append(_check("Jacobson radical methods agree", agree, INVARIANT,
                             "methods run: " + ", ".join(sorted(rad.methods))))
        checks.append(_check("J(R/J) = 0", rad.quotient_radical_zero, INVARIANT, "semisimple quotient"))
    except CapExceeded as exc:
        doc["radicals"] = {"refused": str(exc)}
    des = []
    for label, f in sorted(designated.items()):
        c = corner_ring(ring, f)
        des.append({"label": label, "element": list(f), "corner_size": c.ring.size,
                    "corner_dimension": _jsonable_dim(peirce_dimension(c.ring, depth_cap, cap=enum_cap).dimension)})
    doc["designated"] = des
    for exp in expectations:
        actual = _evaluate(exp, ring, report, elements, state)
        if exp.kind in ("is_sum", "corner_set", "no_trivial_corner_dimension"):
            passed = actual is True
        else:
            passed = actual == exp.expected
        expected = exp.expected
        checks.append(_check(f"{exp.kind}" + (f"[{exp.element}]" if exp.element else ""), passed,
                             exp.source, exp.claim, expected=expected, actual=actual))
        if exp.kind == "b_dimension":
            for key, val in sorted(state.get("b_checks", {}).items()):
                checks.append(_check(f"b_dimension quotient: {key}", val, "asserted",
                                     "R/B(R) splits into n semiprime 1-Peirce blocks"))
    doc["checks"] = checks
    return doc


def expectation_failures(doc):
    return [c for c in doc.get("checks", []) if not c["pass"]]


def to_builtin(obj):
    """Recursively convert numpy scalars and tuples for JSON."""
    if isinstance(obj, dict):
        return {str(k): to_builtin(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_builtin(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj
