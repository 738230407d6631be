"""Deterministic exhaustive sweeps over the elements of a finite ring.

Elements are visited in index order (mixed radix, first coordinate varying
fastest).  A sweep may be split across worker processes by index range; the
per-range results are concatenated in range order, so the output never
depends on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .ring import CapExceeded

DEFAULT_ENUM_CAP = 1 << 24
CHUNK = 1 << 16


def default_workers():
    try:
        return max(1, int(os.environ.get("PEIRCE_WORKERS", "1")))
    except ValueError:
        return 1


def _idempotents_in_range(ring, start, stop):
    found = []
    for _, X in ring.iter_chunks(CHUNK, start, stop):
        sq = ring.mul_arrays(X, X)
        mask = np.all(sq == X, axis=1)
        if mask.any():
            found.append(X[mask])
    if not found:
        return np.zeros((0, ring.k), dtype=np.int64)
    return np.concatenate(found)


def _nilpotent_in_range(ring, start, stop, power):
    found = []
    for _, X in ring.iter_chunks(CHUNK, start, stop):
        P = X
        for _ in range(power):
            P = ring.mul_arrays(P, P)
        mask = ~P.any(axis=1)
        if mask.any():
            found.append(X[mask])
    if not found:
        return np.zeros((0, ring.k), dtype=np.int64)
    return np.concatenate(found)


def _split(size, workers):
    bounds = np.linspace(0, size, workers + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _sweep(fn, ring, workers, *extra):
    workers = workers or default_workers()
    if workers <= 1 or ring.size < 2 * CHUNK:
        return fn(ring, 0, ring.size, *extra)
    parts = _split(ring.size, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, ring, a, b, *extra) for a, b in parts]
        results = [f.result() for f in futures]
    return np.concatenate(results) if results else np.zeros((0, ring.k), dtype=np.int64)


def idempotent_array(ring, cap=DEFAULT_ENUM_CAP, workers=None):
    """All idempotents as an array in enumeration order (cached per ring)."""
    if ring.size > cap:
        raise CapExceeded("idempotent enumeration", ring.size, cap)
    key = ("idempotents",)
    if key in ring._cache:
        return ring._cache[key]
    out = _sweep(_idempotents_in_range, ring, workers)
    out.setflags(write=False)
    ring._cache[key] = out
    return out


def nilpotent_array(ring, cap=DEFAULT_ENUM_CAP, workers=None):
    """All nilpotent elements, in enumeration order."""
    if ring.size > cap:
        raise CapExceeded("nilpotent enumeration", ring.size, cap)
    power = max(1, int(np.ceil(np.log2(max(2, ring.composition_length + 1)))))
    return _sweep(_nilpotent_in_range, ring, workers, power)
