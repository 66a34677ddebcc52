"""Dense-matrix interpretation of diagrams, with the phase-scaling model family.

A diagram with n inputs and m outputs evaluates to a 2^m x 2^n complex matrix.
Row indices encode the ordered outputs big-endian (first output wire is the
most significant bit); columns encode inputs the same way. Under model n > 1
every spider phase alpha is read as n*alpha; n = 1 is the standard
interpretation.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .diagram import BOUNDARY, HBOX, Diagram, X

MAX_INTERMEDIATE = 2 ** 26

HALF_SQRT2 = 1.0 / math.sqrt(2.0)

H_MATRIX = np.array([[HALF_SQRT2, HALF_SQRT2], [HALF_SQRT2, -HALF_SQRT2]],
                    dtype=complex)


class ResourceLimit(RuntimeError):
    """A contraction intermediate exceeded the configured entry cap."""


@lru_cache(maxsize=None)
def _spider_tensor(colour: str, degree: int, num: int, den: int) -> np.ndarray:
    """Tensor of one spider node, symmetric in its legs.

    The Z tensor has 1 at the all-zero corner and e^{i*alpha} at the all-one
    corner, scaled by (1/sqrt2)^max(0, 2-degree) so that every generator of
    the interpretation table is reproduced exactly. The X tensor conjugates
    every leg by H.
    """
    amp = cmath.exp(1j * math.pi * num / den)
    scale = HALF_SQRT2 ** max(0, 2 - degree)
    if degree == 0:
        t = np.array((1.0 + amp) * 0.5, dtype=complex)
    else:
        t = np.zeros((2,) * degree, dtype=complex)
        t[(0,) * degree] = scale
        t[(1,) * degree] = scale * amp
    if colour == X:
        for axis in range(degree):
            t = np.tensordot(H_MATRIX, t, axes=([1], [axis]))
            t = np.moveaxis(t, 0, axis)
    return t


def node_tensor(d: Diagram, v: str, model_n: int) -> np.ndarray:
    kind = d.kind(v)
    if kind == HBOX:
        return H_MATRIX
    phase = d.phase(v).scaled(model_n)
    return _spider_tensor(kind, d.degree(v), phase.num, phase.den)


def evaluate(d: Diagram, model_n: int = 1,
             max_entries: int = MAX_INTERMEDIATE) -> np.ndarray:
    """Contract the diagram's tensor network into its matrix.

    Contraction picks, at each step, the pair of tensors whose contraction
    yields the smallest intermediate. Raises ResourceLimit if any
    intermediate would exceed ``max_entries`` complex entries.
    """
    d.check()
    if model_n < 1:
        raise ValueError("model_n must be >= 1")

    # one variable per edge instance
    instance_var = {inst: i for i, inst in enumerate(d.edge_instances())}
    nvars = len(instance_var)

    # legs per node, in instance order; self-loops contribute two legs
    node_legs: dict[str, list[int]] = {v: [] for v in d.nodes()}
    for (u, v, k), var in sorted(instance_var.items(), key=lambda kv: kv[1]):
        node_legs[u].append(var)
        if v != u:
            node_legs[v].append(var)
        else:
            node_legs[u].append(var)

    tensors: list[tuple[np.ndarray, list[int]]] = []
    for v in d.nodes():
        if d.kind(v) == BOUNDARY:
            continue
        if 2 ** d.degree(v) > max_entries:
            raise ResourceLimit(
                f"node {v!r} alone needs 2^{d.degree(v)} entries")
        t = node_tensor(d, v, model_n)
        legs = node_legs[v]
        # trace out self-loop variables inside the node tensor
        seen: dict[int, int] = {}
        loop_vars = sorted({var for var in legs if legs.count(var) == 2})
        for var in loop_vars:
            i = legs.index(var)
            j = legs.index(var, i + 1)
            t = np.trace(t, axis1=i, axis2=j)
            del legs[j], legs[i]
        tensors.append((t, legs))

    # free legs in boundary order: outputs then inputs
    free: list[int] = []
    free_count: dict[int, int] = {}
    for b in d.outputs + d.inputs:
        var = node_legs[b][0]
        free.append(var)
        free_count[var] = free_count.get(var, 0) + 1

    # a boundary-boundary edge exposes one variable twice: splice in an
    # identity tensor so every variable has at most two occurrences
    next_var = nvars
    for i, var in enumerate(free):
        if free_count.get(var, 0) == 2:
            ident = np.eye(2, dtype=complex)
            tensors.append((ident, [var, next_var]))
            free_count[var] -= 1
            free[i] = next_var
            next_var += 1

    free_set = set(free)
    result = _contract_all(tensors, free_set, max_entries)

    # assemble output axes in boundary order
    t, legs = result
    order = [legs.index(var) for var in free]
    if len(set(free)) != len(free):  # repeated free var cannot happen; guard
        raise RuntimeError("internal: duplicated free variable")
    t = np.transpose(t, order) if legs else t.reshape(())
    m, n = len(d.outputs), len(d.inputs)
    return np.asarray(t, dtype=complex).reshape((2 ** m, 2 ** n))


def _contract_pair(a: tuple[np.ndarray, list[int]],
                   b: tuple[np.ndarray, list[int]]) -> tuple[np.ndarray, list[int]]:
    ta, la = a
    tb, lb = b
    shared = [v for v in la if v in lb]
    axes_a = [la.index(v) for v in shared]
    axes_b = [lb.index(v) for v in shared]
    tc = np.tensordot(ta, tb, axes=(axes_a, axes_b))
    lc = [v for v in la if v not in shared] + [v for v in lb if v not in shared]
    return tc, lc


def _contract_all(tensors: list[tuple[np.ndarray, list[int]]],
                  free: set[int], max_entries: int) -> tuple[np.ndarray, list[int]]:
    if not tensors:
        return np.array(1.0 + 0j), []
    work = list(tensors)
    while len(work) > 1:
        best = None
        for i in range(len(work)):
            li = set(work[i][1])
            for j in range(i + 1, len(work)):
                shared = li & set(work[j][1])
                if not shared:
                    continue
                out_legs = len(li) + len(work[j][1]) - 2 * len(shared)
                if best is None or out_legs < best[0]:
                    best = (out_legs, i, j)
        if best is None:
            # disconnected components: outer product of the two smallest
            work.sort(key=lambda t: t[0].size)
            best = (len(work[0][1]) + len(work[1][1]), 0, 1)
        out_legs, i, j = best
        if 2 ** out_legs > max_entries:
            raise ResourceLimit(
                f"intermediate tensor with 2^{out_legs} entries exceeds the cap")
        merged = _contract_pair(work[i], work[j])
        work = [w for k, w in enumerate(work) if k not in (i, j)] + [merged]
    return work[0]


# -- scalar-equivalence --------------------------------------------------------


def scalar_fit(a: np.ndarray, b: np.ndarray) -> tuple[complex, float]:
    """Least-squares lambda minimizing |a - lambda*b|, and the max residual."""
    denom = np.vdot(b, b)
    lam = complex(np.vdot(b, a) / denom) if abs(denom) > 0 else 0j
    residual = float(np.abs(a - lam * b).max()) if a.size else 0.0
    return lam, residual


def equal_up_to_scalar(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff a = lambda*b for some nonzero lambda, entrywise within tol.

    lambda is pivoted on the largest-magnitude entry of b. Two zero matrices
    are equal; a zero and a nonzero matrix are not.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    amax = float(np.abs(a).max()) if a.size else 0.0
    bmax = float(np.abs(b).max()) if b.size else 0.0
    if amax <= tol and bmax <= tol:
        return True
    if amax <= tol or bmax <= tol:
        return False
    pivot = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    lam = a[pivot] / b[pivot]
    if abs(lam) <= tol:
        return False
    return bool(np.abs(a - lam * b).max() <= tol)


def diagrams_equal(f: Diagram, g: Diagram, model_n: int = 1,
                   tol: float = 1e-9) -> bool:
    return equal_up_to_scalar(evaluate(f, model_n), evaluate(g, model_n), tol)
