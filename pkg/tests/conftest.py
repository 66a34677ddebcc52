"""Shared fixtures and independent oracles for the test suite.

The oracles here recompute expected values by brute force (state-vector
manipulation, parity formulas) without going through the diagram evaluator,
so the two paths check each other.
"""

from __future__ import annotations

import random

import numpy as np
import pytest

from zxr.diagram import BOUNDARY, HBOX, Diagram, X, Z
from zxr.graphstate import SimpleGraph
from zxr.phase import Phase

GRID = [Phase(0), Phase(1, 2), Phase(1), Phase(3, 2), Phase(1, 3), Phase(2, 5)]

SQRT2 = np.sqrt(2.0)
H_MAT = np.array([[1, 1], [1, -1]]) / SQRT2


def rz_mat(angle: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * angle)]])


def rx_mat(angle: float) -> np.ndarray:
    return H_MAT @ rz_mat(angle) @ H_MAT


def graph_state_vector(g: SimpleGraph) -> np.ndarray:
    """Brute-force |g>: controlled-Z product applied to the uniform state."""
    nv = len(g.vertices)
    idx = {v: i for i, v in enumerate(g.vertices)}
    vec = np.ones(2 ** nv, dtype=complex) / np.sqrt(2 ** nv)
    for e in g.edges:
        u, v = tuple(e)
        i, j = idx[u], idx[v]
        for x in range(2 ** nv):
            if (x >> (nv - 1 - i)) & 1 and (x >> (nv - 1 - j)) & 1:
                vec[x] = -vec[x]
    return vec.reshape(-1, 1)


def apply_single(mat: np.ndarray, qubit: int, nqubits: int,
                 vec: np.ndarray) -> np.ndarray:
    t = vec.reshape([2] * nqubits)
    t = np.tensordot(mat, t, axes=([1], [qubit]))
    t = np.moveaxis(t, 0, qubit)
    return t.reshape(-1, 1)


def proportional(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    na, nb = np.abs(a).max(), np.abs(b).max()
    if na < tol or nb < tol:
        return na < tol and nb < tol
    lam = np.vdot(b, a) / np.vdot(b, b)
    return bool(np.abs(a - lam * b).max() <= tol)


def bipartite_oracle(m: int, n: int) -> np.ndarray:
    """The complete-bipartite map: every input bit must equal the parity of
    the output bits."""
    out = np.zeros((2 ** n, 2 ** m))
    for y in range(2 ** n):
        parity = bin(y).count("1") % 2
        x = (2 ** m - 1) if parity else 0
        out[y, x] = 1.0
    return out


def cycle_oracle(n: int) -> np.ndarray:
    """The alternating-cycle map: x_i must equal y_{i-1} xor y_i."""
    out = np.zeros((2 ** n, 2 ** n))
    for y in range(2 ** n):
        ybits = [(y >> (n - 1 - j)) & 1 for j in range(n)]
        x = 0
        for i in range(n):
            xi = ybits[i] ^ ybits[(i - 1) % n]
            x = (x << 1) | xi
        out[y, x] = 1.0
    return out


def random_diagram(rng: random.Random, max_spiders: int = 7,
                   max_boundaries: int = 4) -> Diagram:
    """A random valid diagram: spiders with grid phases, sprinkled H-boxes,
    parallel edges and occasional self-loops."""
    d = Diagram()
    ns = rng.randint(1, max_spiders)
    sp = [d.add_node(rng.choice([Z, X]), rng.choice(GRID)) for _ in range(ns)]
    for _ in range(rng.randint(0, ns + 3)):
        d.add_edge(rng.choice(sp), rng.choice(sp))
    for (u, v), m in list(d._edges.items()):
        if u != v and rng.random() < 0.25:
            h = d.add_node(HBOX)
            d.remove_edge(u, v)
            d.add_edge(u, h)
            d.add_edge(h, v)
    ins, outs = [], []
    for _ in range(rng.randint(0, max_boundaries)):
        b = d.add_node(BOUNDARY)
        d.add_edge(b, rng.choice(sp))
        (ins if rng.random() < 0.5 else outs).append(b)
    d.inputs, d.outputs = tuple(ins), tuple(outs)
    return d.check()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
