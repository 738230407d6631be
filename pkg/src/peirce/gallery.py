"""Named example rings with machine-readable expected facts.

Every expectation carries a source label: ``asserted`` for facts stated with
the construction, ``oracle`` for values computed independently (brute force)
and frozen here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .constructors import (
    GenMatrixSpec,
    diag,
    gen_matrix,
    gf,
    matrix_ring,
    regular_bimodule,
    submatrix_ring,
    triangular_ring,
)
from .ring import RingError

ASSERTED = "asserted"
ORACLE = "oracle"


class UnknownExample(RingError):
    pass


@dataclass
class Expectation:
    """One expected fact.

    ``kind`` selects the check: ``size``, ``dimension``, ``corner_dimension``
    (``element`` names a designated idempotent), ``is_sum`` (``element`` is
    the sum of ``parts``, which are orthogonal idempotents), ``corner_set``
    (the complete 1-Peirce set of the corner at ``element`` is ``parts``), ``dyadic_chain``,
    ``no_trivial_corner_dimension``, ``peirce_trivial``, ``b_trivial``,
    ``b_dimension``.
    """

    kind: str
    expected: object
    source: str
    claim: str
    element: str = None
    parts: tuple = ()


@dataclass
class GalleryEntry:
    name: str
    ring: object
    expectations: list
    elements: dict = field(default_factory=dict)


def warning2_3x3():
    r = submatrix_ring(3, 8, [[1, 4, 2], [2, 1, 2], [2, 2, 1]], name="warning2_3x3")
    els = {"f": diag(r, 1, 1, 0), "f1": diag(r, 1, 0, 0), "f2": diag(r, 0, 1, 0),
           "E11": diag(r, 1, 0, 0)}
    exp = [
        Expectation("size", 2 ** 20, ASSERTED, "|R| = 2^20"),
        Expectation("dimension", 1, ASSERTED, "Peirce dimension 1"),
        Expectation("corner_dimension", 2, ASSERTED, "dim fRf = 2 for f = diag(1,1,0)", element="f"),
        Expectation("is_sum", True, ASSERTED, "f = f1 + f2 with f1 = E11, f2 = E22", element="f",
                    parts=("f1", "f2")),
        Expectation("corner_set", True, ASSERTED, "the complete 1-Peirce set of fRf is {f1, f2}",
                    element="f", parts=("f1", "f2")),
        Expectation("peirce_trivial", False, ORACLE, "E11 is not Peirce trivial ((1,3)(3,1) = 4)",
                    element="E11"),
    ]
    return GalleryEntry("warning2_3x3", r, exp, els)


def family_grid(n):
    """Literal reading of the n x n family over Z/2^n with X = 2A, Y = 2^(n-1)A."""
    m = 2 ** n
    y = 2 ** (n - 1)
    grid = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                grid[i][j] = 1
            elif i < n - 1 and j < n - 1:
                grid[i][j] = y
            elif j == n - 1:
                grid[i][j] = min(2 ** (i + 1), m)  # X^(i+1)
            else:
                grid[i][j] = min(2 ** (n - 1 - j), m)  # last row: X^(n-1), ..., X
    return m, grid


def family_nxn(n=3, allow_general=False):
    if n < 3:
        raise UnknownExample("family_nxn needs n >= 3")
    if n > 3 and not allow_general:
        raise UnknownExample(
            "family_nxn for n > 3 depends on an ambiguous row pattern; pass allow_general=True")
    m, grid = family_grid(n)
    r = submatrix_ring(n, m, grid, name=f"family_nxn({n})")
    ones = [1] * (n - 1) + [0]
    els = {"f": diag(r, *ones), "E11": diag(r, 1)}
    exp = [
        Expectation("size", 2 ** 17 if n == 3 else r.size, ORACLE, "size from the entry group orders"),
        Expectation("dimension", 1, ASSERTED, "Peirce dimension 1 at every n"),
        Expectation("corner_dimension", n - 1, ASSERTED, "dim fRf = n - 1 for f = diag(1,...,1,0)", element="f"),
    ]
    return GalleryEntry(f"family_nxn({n})", r, exp, els)


def _two_by_two_trivial_z2():
    k = gf(2)
    spec = GenMatrixSpec(n=2, diagonal=[k, k], modules={(0, 1): (2,), (1, 0): (2,)},
                         products={(0, 0, 1): [[[1]]], (0, 1, 1): [[[1]]],
                                   (1, 1, 0): [[[1]]], (1, 0, 0): [[[1]]]},
                         module_names={(0, 1): ("m",), (1, 0): ("n",)}, name="A")
    return gen_matrix(spec)


def four_peirce_z2():
    A = _two_by_two_trivial_z2()
    spec = GenMatrixSpec(n=2, diagonal=[A, A], name="four_peirce_z2")
    regular_bimodule(spec, 0, 1)
    regular_bimodule(spec, 1, 0)
    r = gen_matrix(spec)
    exp = [
        Expectation("size", 2 ** 16, ASSERTED, "|R| = 2^16"),
        Expectation("dimension", 4, ASSERTED, "Peirce dimension 4"),
        Expectation("dyadic_chain", [[[1, 2, 3, 4]], [[1, 2], [3, 4]], [[1], [2], [3, 4]],
                                     [[1], [2], [3], [4]]], ASSERTED,
                    "chain {1234} > {12},{34} > {1},{2},{34} > singletons"),
        Expectation("no_trivial_corner_dimension", 3, ASSERTED,
                    "no Peirce trivial idempotent has a 3-Peirce corner"),
    ]
    return GalleryEntry("four_peirce_z2", r, exp, {})


def z4_not_1b():
    r = submatrix_ring(2, 4, [[1, 1], [2, 1]], name="z4_not_1B")
    els = {"E11": diag(r, 1, 0)}
    exp = [
        Expectation("dimension", 1, ASSERTED, "Peirce dimension 1"),
        Expectation("peirce_trivial", False, ASSERTED, "E11 is not Peirce trivial", element="E11"),
        Expectation("b_trivial", True, ASSERTED, "E11 is a B-trivial idempotent", element="E11"),
        Expectation("b_dimension", 2, ORACLE, "splits through E11 into two local corners"),
    ]
    return GalleryEntry("z4_not_1B", r, exp, els)


def t2_field(q=2):
    r = triangular_ring(2, gf(q), name=f"t2_field({q})")
    exp = [Expectation("size", q ** 3, ORACLE, "three entries over the field"),
           Expectation("dimension", 2, ORACLE, "E11 is Peirce trivial with field corners")]
    return GalleryEntry(f"t2_field({q})", r, exp, {"E11": diag(r, 1, 0)})


def m2_field(q=2):
    r = matrix_ring(2, gf(q), name=f"m2_field({q})")
    exp = [Expectation("size", q ** 4, ORACLE, "four entries over the field"),
           Expectation("dimension", 1, ASSERTED, "M_2 over a field has no Peirce trivial idempotent besides 0 and 1")]
    return GalleryEntry(f"m2_field({q})", r, exp, {"E11": diag(r, 1, 0)})


BUILDERS = {
    "warning2_3x3": (warning2_3x3, 0),
    "family_nxn": (family_nxn, 1),
    "four_peirce_z2": (four_peirce_z2, 0),
    "z4_not_1B": (z4_not_1b, 0),
    "t2_field": (t2_field, 1),
    "m2_field": (m2_field, 1),
}

ACCEPTANCE_GALLERY = ("warning2_3x3", "family_nxn(3)", "four_peirce_z2", "z4_not_1B",
                      "t2_field(2)", "t2_field(3)", "m2_field(2)", "m2_field(3)")

_NAME = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*(\d+)\s*\))?\s*$")

_cache = {}


def gallery(name, allow_general=False):
    """Look up ``name`` such as ``"warning2_3x3"`` or ``"t2_field(3)"``."""
    m = _NAME.match(name)
    if not m or m.group(1) not in BUILDERS:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(sorted(BUILDERS))}")
    base, arg = m.group(1), m.group(2)
    fn, arity = BUILDERS[base]
    if arity == 0 and arg is not None:
        raise UnknownExample(f"example {base} takes no parameter")
    key = (base, arg, allow_general)
    if key in _cache:
        return _cache[key]
    if arity == 0:
        entry = fn()
    else:
        param = int(arg) if arg is not None else (3 if base == "family_nxn" else 2)
        if base == "family_nxn":
            entry = fn(param, allow_general=allow_general)
        else:
            try:
                entry = fn(param)
            except ValueError as exc:
                raise UnknownExample(str(exc)) from None
    _cache[key] = entry
    return entry


def gallery_names():
    return ACCEPTANCE_GALLERY
