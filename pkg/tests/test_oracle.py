import pytest
from hypothesis import given
from hypothesis import strategies as st

import brute
from peirce.constructors import matrix_ring, triangular_ring, gf, zmod
from peirce.oracle import oracle_report
from peirce.peirce import idempotent_table, peirce_dimension
from peirce.radical import jacobson_radical, prime_radical
from peirce.ring import CapExceeded

TINY = brute.tiny_builders()
rings = st.sampled_from(range(len(TINY))).map(lambda i: TINY[i]())


def test_counts():
    assert len(oracle_report(zmod(6)).idempotents) == 4
    assert len(oracle_report(triangular_ring(2, gf(2))).idempotents) == 6
    assert len(oracle_report(matrix_ring(2, gf(2))).idempotents) == 8


def test_refuses_above_cap():
    with pytest.raises(CapExceeded):
        oracle_report(matrix_ring(2, zmod(4)), cap=100)


@given(rings)
def test_oracle_matches_helpers(r):
    rep = oracle_report(r)
    assert sorted(row[0] for row in rep.idempotents) == sorted(brute.idempotents(r))
    for e, inner, outer, central in rep.idempotents:
        assert (inner and outer) == brute.peirce_trivial(r, e)
        assert central == all(r.mul(e, x) == r.mul(x, e) for x in brute.elements(r))
    assert set(rep.jacobson) == brute.jacobson(r)
    assert rep.dimension == brute.dimension(r)


@given(rings)
def test_oracle_matches_engine(r):
    rep = oracle_report(r)
    table = idempotent_table(r)
    engine = sorted((e, bool(table.inner[i]), bool(table.outer[i]), bool(table.central[i]))
                    for i, e in enumerate(table.elements))
    assert engine == sorted(rep.idempotents)
    assert peirce_dimension(r).dimension == rep.dimension
    assert set(rep.jacobson) == brute.subgroup_set(jacobson_radical(r).jacobson)
    assert set(rep.prime_radical) == brute.subgroup_set(prime_radical(r))
