from math import prod

from hypothesis import given
from hypothesis import strategies as st

from brute import group_elements, span_set
from peirce import lattice

ORDERS = st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3)


@st.composite
def group_and_vectors(draw, max_vecs=4):
    orders = draw(ORDERS)
    vec = st.tuples(*[st.integers(0, m - 1) for m in orders])
    vecs = draw(st.lists(vec, max_size=max_vecs))
    return orders, vecs


def members(form, orders):
    els = group_elements(orders)
    mask = lattice.batch_member_mask(form, orders, els)
    return {x for x, ok in zip(els, mask) if ok}


def test_xgcd():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, x, y = lattice.xgcd(a, b)
            assert g >= 0 and x * a + y * b == g
            if a or b:
                assert a % g == 0 and b % g == 0


@given(group_and_vectors())
def test_span_matches_brute_force(data):
    orders, vecs = data
    b = lattice.LatticeBuilder(orders)
    b.add_all(vecs)
    brute = span_set(vecs, orders)
    assert b.size() == len(brute)
    assert members(b.canonical(), orders) == brute


@given(group_and_vectors())
def test_lagrange(data):
    orders, vecs = data
    assert prod(orders) % lattice.LatticeBuilder(orders).size() == 0
    b = lattice.LatticeBuilder(orders)
    b.add_all(vecs)
    assert prod(orders) % b.size() == 0


@given(group_and_vectors(), st.randoms(use_true_random=False))
def test_canonical_form_is_generator_independent(data, rnd):
    orders, vecs = data
    form = lattice.hnf(vecs, orders)
    # shuffle, add redundant combinations and rescale by units
    more = list(vecs)
    rnd.shuffle(more)
    if vecs:
        a, b = rnd.choice(vecs), rnd.choice(vecs)
        more.append(tuple((x + 3 * y) % m for x, y, m in zip(a, b, orders)))
    assert lattice.hnf(more, orders) == form
    assert lattice.hnf(lattice.canonical_generators(form, orders), orders) == form


@given(group_and_vectors(), group_and_vectors())
def test_intersection_matches_brute_force(a, b):
    orders, va = a
    vb = [tuple(x % m for x, m in zip(v, orders)) for v in b[1] if len(v) == len(orders)]
    fa, fb = lattice.hnf(va, orders), lattice.hnf(vb, orders)
    got = members(lattice.intersection(fa, fb, orders), orders)
    assert got == span_set(va, orders) & span_set(vb, orders)


@st.composite
def homomorphism(draw):
    dom = draw(ORDERS)
    cod = draw(ORDERS)
    images = []
    for m in dom:
        # phi(e_i) must be killed by m
        img = []
        for c in cod:
            g = c // __import__("math").gcd(m, c)
            img.append(g * draw(st.integers(0, c - 1)) % c)
        images.append(tuple(img))
    return dom, cod, images


def apply(images, x, cod):
    return tuple(sum(xi * img[j] for xi, img in zip(x, images)) % c for j, c in enumerate(cod))


@given(homomorphism())
def test_kernel_matches_brute_force(h):
    dom, cod, images = h
    zero = tuple(0 for _ in cod)
    brute = {x for x in group_elements(dom) if apply(images, x, cod) == zero}
    assert members(lattice.kernel(images, dom, cod), dom) == brute


@given(homomorphism(), st.data())
def test_solve_matches_brute_force(h, data):
    dom, cod, images = h
    image = {apply(images, x, cod) for x in group_elements(dom)}
    target = tuple(data.draw(st.integers(0, c - 1)) for c in cod)
    x = lattice.solve(images, target, dom, cod)
    if target in image:
        assert x is not None and apply(images, x, cod) == target
    else:
        assert x is None


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=3))
def test_smith_form(A):
    D, U, V = lattice.smith_form(A)
    n, m = len(A), len(A[0])
    UAV = [[sum(U[i][a] * A[a][b] * V[b][j] for a in range(n) for b in range(m)) for j in range(m)]
           for i in range(n)]
    assert UAV == D
    diag = [D[i][i] for i in range(min(n, m))]
    assert all(D[i][j] == 0 for i in range(n) for j in range(m) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@given(group_and_vectors())
def test_subgroup_and_quotient_bases(data):
    orders, vecs = data
    form = lattice.hnf(vecs, orders)
    sb = lattice.SubgroupBasis(form, orders)
    brute = span_set(vecs, orders)
    assert prod(sb.gen_orders) == len(brute)
    for x in brute:
        c = sb.coords(x)
        back = tuple(sum(ci * g[j] for ci, g in zip(c, sb.generators)) % m for j, m in enumerate(orders))
        assert back == x
    qb = lattice.QuotientBasis(form, orders)
    assert prod(qb.gen_orders) * len(brute) == prod(orders)
    # projection is a homomorphism whose kernel is the subgroup
    for x in group_elements(orders):
        assert (x in brute) == (not any(qb.project(x)))
    for l, s in zip(qb.lifts, qb.gen_orders):
        assert qb.project(l) == tuple(int(i == qb.lifts.index(l)) for i in range(len(qb.lifts)))
