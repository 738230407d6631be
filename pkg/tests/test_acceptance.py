"""The nine acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines also appear in the
terminal summary under "acceptance criteria".
"""

import io
import json
import random

import numpy as np

import brute
from acceptance_log import Criterion
from peirce.analysis import analyze
from peirce.cli import run
from peirce.constructors import block_idempotents, gf, matrix_ring, triangular_ring, zmod
from peirce.gallery import ACCEPTANCE_GALLERY, gallery
from peirce.ideals import corner_ring, ideal, quotient_ring
from peirce.oracle import oracle_report
from peirce.peirce import (
    all_pivot_dimensions,
    complete_one_peirce_set,
    corner_map_multiplicative,
    enumerate_idempotents,
    ideal_criterion_mask,
    idempotent_table,
    is_peirce_trivial,
    is_prime_ring,
    is_quasi_baer,
    one_peirce_criterion,
    peirce_dimension,
    split_contract_violations,
)
from peirce.radical import (
    ORACLE,
    PEIRCE,
    QUOTIENT,
    b_dimension,
    classify_j_b_trivial,
    jacobson_by_methods,
    jacobson_radical,
    lift_idempotent,
    prime_radical_fixpoint,
    weakly_lifting_report,
)

SMALL_GALLERY = [n for n in ACCEPTANCE_GALLERY if gallery(n).ring.size <= 1 << 16]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def test_criterion_1_warning2():
    with Criterion(1, "3x3 ring over Z/8: size 2^20, 1-Peirce, 2-Peirce corner at f = diag(1,1,0)", 300) as c:
        code, out = cli("analyze", "Example(warning2_3x3)", "--format", "json")
        doc = json.loads(out)
        c.check("exit 0", code == 0, f"exit {code}")
        c.check("|R| = 2^20", doc["size"] == 2 ** 20, str(doc["size"]))
        c.check("dimension 1", doc["dimension"] == 1, str(doc["dimension"]))
        entry = gallery("warning2_3x3")
        table = idempotent_table(entry.ring)
        c.check("only 0 and 1 Peirce trivial", not table.nontrivial_trivial_indices())
        f = next(d for d in doc["designated"] if d["label"] == "f")
        c.check("fRf is 2-Peirce", f["corner_dimension"] == 2, str(f["corner_dimension"]))
        by_kind = {ch["name"]: ch for ch in doc["checks"]}
        c.check("f = f1 + f2 orthogonal", by_kind["is_sum[f]"]["pass"])
        c.check("complete set of fRf is {f1, f2}", by_kind["corner_set[f]"]["pass"])
        c.check("all checks pass", all(ch["pass"] for ch in doc["checks"]))
    assert not c.failures


def test_criterion_2_four_peirce():
    with Criterion(2, "4-Peirce ring over Z/2: dimension 4, dyadic chain, no 3-Peirce trivial corner", 300) as c:
        r = gallery("four_peirce_z2").ring
        res = peirce_dimension(r)
        c.check("dimension 4", res.dimension == 4, str(res.dimension))
        rep = complete_one_peirce_set(r, res)
        chain = rep.dyadic_chain
        c.check("chain starts {1234}", [sorted(b) for b in chain[0]] == [[1, 2, 3, 4]])
        c.check("second level splits 2 + 2", sorted(len(b) for b in chain[1]) == [2, 2], str(chain))
        c.check("ends in singletons", sorted(len(b) for b in chain[-1]) == [1, 1, 1, 1])
        pivots = all_pivot_dimensions(r)
        c.check("pivots scanned", len(pivots) > 0, str(len(pivots)))
        bad = [p.pivot for p in pivots if p.corner_dimension == 3]
        c.check("no Peirce trivial idempotent with 3-Peirce corner", not bad, f"{len(bad)} found")
        c.note(f"{len(pivots)} nontrivial Peirce trivial idempotents scanned")
    assert not c.failures


def test_criterion_3_z4():
    with Criterion(3, "Z/4 example: 1-Peirce, E11 B-trivial not Peirce trivial, b_dimension 2", 10) as c:
        entry = gallery("z4_not_1B")
        r, e11 = entry.ring, entry.elements["E11"]
        d = peirce_dimension(r).dimension
        c.check("dimension 1", d == 1, str(d))
        c.check("E11 not Peirce trivial", not is_peirce_trivial(r, e11))
        c.check("E11 B-trivial", classify_j_b_trivial(r, e11).is_b_trivial)
        res = b_dimension(r)
        c.check("b_dimension 2", res.dimension == 2, str(res.dimension))
        c.check("quotient-by-B checks", res.quotient_checks and all(res.quotient_checks.values()),
                str(res.quotient_checks))
    assert not c.failures


def test_criterion_4_family_nxn():
    with Criterion(4, "n x n family at n = 3: size 2^17, 1-Peirce, f with 2-Peirce corner", 120) as c:
        entry = gallery("family_nxn(3)")
        r = entry.ring
        c.check("|R| = 2^17", r.size == 2 ** 17, str(r.size))
        d = peirce_dimension(r).dimension
        c.check("dimension 1", d == 1, f"got {d}")
        fd = peirce_dimension(corner_ring(r, entry.elements["f"]).ring).dimension
        c.check("fRf is 2-Peirce", fd == 2, f"got {fd}")
    assert not c.failures


def test_criterion_5_invariants():
    with Criterion(5, "invariant suite on gallery rings up to 2^16", 600) as c:
        for name in SMALL_GALLERY:
            r = gallery(name).ring
            table = idempotent_table(r)
            res = peirce_dimension(r)
            # (a) pivot independence over every Peirce trivial pivot
            viol = [p.pivot for p in all_pivot_dimensions(r) if p.total != res.dimension]
            c.check("(a) pivot independence", not viol, f"{name}: {len(viol)} violations")
            # (b) D(R)- across 10 seeded randomized restarts
            base = complete_one_peirce_set(r, res).d_minus.subgroup
            rng = random.Random(2024)
            same = all(complete_one_peirce_set(r, rng=rng).d_minus.subgroup == base for _ in range(10))
            c.check("(b) D(R)- canonical", same, name)
            # (c) direct classification vs the ideal criterion
            dis = int(np.sum(ideal_criterion_mask(r, table.array) != table.trivial))
            c.check("(c) direct vs ideal criterion", dis == 0, f"{name}: {dis} disagreements")
            # (d) inner trivial iff the corner map is multiplicative
            bad = sum(1 for i, e in enumerate(table.elements)
                      if bool(table.inner[i]) != corner_map_multiplicative(r, e))
            c.check("(d) inner trivial iff corner map multiplicative", bad == 0, f"{name}: {bad}")
            # (e) split contract for every (Peirce trivial e, idempotent f)
            fails = 0
            for i in np.flatnonzero(table.trivial):
                fails += len(split_contract_violations(r, table.elements[i], table.array))
            c.check("(e) split contract", fails == 0, f"{name}: {fails} failing pairs")
            # (f) prime iff quasi-Baer and 1-Peirce
            if r.size <= 4096:
                lhs = is_prime_ring(r)
                rhs = is_quasi_baer(r) and res.dimension == 1
                c.check("(f) prime iff quasi-Baer and 1-Peirce", lhs == rhs, name)
        c.note("rings: " + ", ".join(SMALL_GALLERY))
    assert not c.failures


def test_criterion_6_radicals():
    with Criterion(6, "Jacobson routes agree, B = J, J(R/J) = 0 on the gallery", 600) as c:
        multi = 0
        for name in ACCEPTANCE_GALLERY:
            r = gallery(name).ring
            results = jacobson_by_methods(r, methods=[ORACLE, QUOTIENT, PEIRCE])
            vals = list(results.values())
            if len(vals) >= 2:
                multi += 1
                c.check("routes agree", all(v == vals[0] for v in vals), f"{name}: {sorted(results)}")
            J = jacobson_radical(r).jacobson
            c.check("J matches every route", all(v == J for v in vals), name)
            B = prime_radical_fixpoint(r, cap=1 << 21)
            c.check("prime radical = Jacobson radical", B == J, name)
            q = quotient_ring(r, J).ring
            c.check("J(R/J) = 0", all(v.is_zero() for v in jacobson_by_methods(q).values()), name)
        c.note(f"{multi} of {len(ACCEPTANCE_GALLERY)} rings ran two or more routes")
    assert not c.failures


def test_criterion_7_lifting():
    with Criterion(7, "central idempotents of R/J lift within the nilpotency index; Z/12: 3 -> 9", 300) as c:
        total = 0
        for name in ACCEPTANCE_GALLERY:
            r = gallery(name).ring
            w = weakly_lifting_report(r)
            idx = w.nilpotency_index_of_J
            for rec in w.lifts:
                total += 1
                x = rec.lift
                c.check("lift is idempotent", r.mul(x, x) == x, name)
                c.check("iterations <= nilpotency index", rec.iterations <= idx,
                        f"{name}: {rec.iterations} > {idx}")
                c.check("lift projects to the class", w.quotient.project(x) == rec.central_idempotent, name)
        z12 = zmod(12)
        res = lift_idempotent(z12, ideal(z12, [(6,)]), (3,))
        c.check("Z/12: 3 lifts to 9", res.element == (9,), str(res.element))
        c.note(f"{total} central idempotents lifted")
    assert not c.failures


def one_peirce_set(ring):
    """Block identities, refined inside any block whose corner is not 1-Peirce."""
    out = []
    for e in block_idempotents(ring):
        corner = corner_ring(ring, e)
        if peirce_dimension(corner.ring).dimension == 1:
            out.append(e)
        else:
            out.extend(corner.embed(x) for x in complete_one_peirce_set(corner.ring).idempotents)
    return out


def test_criterion_8_criterion_soundness():
    with Criterion(8, "one_peirce_criterion holds only on 1-Peirce rings (gallery + 100 random)", 600) as c:
        rings = [(n, gallery(n).ring) for n in ACCEPTANCE_GALLERY]
        rings += [(f"random[{i}]", r) for i, r in enumerate(brute.random_rings(2026, 100, max_size=1 << 12))]
        holds = 0
        for name, r in rings:
            verdict = one_peirce_criterion(r, one_peirce_set(r)).holds
            if verdict:
                holds += 1
                d = peirce_dimension(r).dimension
                c.check("holds implies dimension 1", d == 1, f"{name}: dimension {d}")
        c.note(f"criterion held on {holds} of {len(rings)} rings")
    assert not c.failures


def test_criterion_9_counts():
    with Criterion(9, "idempotent counts 4, 6, 8 by enumeration and oracle", 60) as c:
        for spec, ring, n in (("Zmod(6)", zmod(6), 4), ("Triangular(2, GF(2))", triangular_ring(2, gf(2)), 6),
                              ("Matrix(2, GF(2))", matrix_ring(2, gf(2)), 8)):
            got = len(enumerate_idempotents(ring))
            c.check(f"enumeration {spec}", got == n, str(got))
            got = len(oracle_report(ring).idempotents)
            c.check(f"oracle {spec}", got == n, str(got))
            code, out = cli("oracle", spec, "--format", "json")
            doc = json.loads(out)
            c.check(f"oracle mode {spec}", code == 0 and doc["idempotents"] == n and not doc["diffs"],
                    f"exit {code}")
    assert not c.failures
