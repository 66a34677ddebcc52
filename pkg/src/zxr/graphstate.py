"""Simple graphs, graph-state diagrams, local complementation and checks.

A graph state is one green spider per vertex, one output wire per spider, and
an H-box on every edge. Local rotations act on the output wires. Output wire
order follows the graph's vertex-declaration order, so matrix comparisons are
well defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .diagram import BOUNDARY, HBOX, Diagram, X, Z
from .phase import HALF_PI, MINUS_HALF_PI, PI, PhaseLike
from .semantics import equal_up_to_scalar, evaluate

# Local-complementation witness rotations, fixed empirically against the
# dense-matrix oracle: +pi/2 X-rotation on the complemented vertex and
# -pi/2 Z-rotations on its neighbours. (The opposite pair also passes -- the
# two differ by the fixpoint stabilizer -- but this one matches the drawn
# labels.)
LC_VERTEX_PHASE = HALF_PI
LC_NEIGHBOUR_PHASE = MINUS_HALF_PI

ORBIT_CAP = 8


class GraphError(ValueError):
    """Bad vertex or malformed simple graph."""


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple undirected graph with ordered vertex labels."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()

    def __post_init__(self) -> None:
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise GraphError("repeated vertex label")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"not a simple edge: {set(e)}")
            if not e <= seen:
                raise GraphError(f"edge endpoint not a vertex: {set(e)}")

    @staticmethod
    def build(vertices: Iterable[str],
              edges: Iterable[tuple[str, str]] = ()) -> "SimpleGraph":
        return SimpleGraph(tuple(vertices),
                           frozenset(frozenset(e) for e in edges))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, u: str) -> tuple[str, ...]:
        if u not in self.vertices:
            raise GraphError(f"unknown vertex {u!r}")
        return tuple(v for v in self.vertices
                     if v != u and self.has_edge(u, v))

    def edge_list(self) -> list[tuple[str, str]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=order.get)) for e in self.edges]
        return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))


def path_graph(labels: Iterable[str]) -> SimpleGraph:
    labels = list(labels)
    return SimpleGraph.build(labels, zip(labels, labels[1:]))


def star_graph(n: int) -> SimpleGraph:
    """S_n: vertex c plus n-1 leaves l1..l(n-1)."""
    if n < 1:
        raise GraphError("a star needs at least one vertex")
    leaves = [f"l{i}" for i in range(1, n)]
    return SimpleGraph.build(["c"] + leaves, [("c", l) for l in leaves])


def complete_graph(labels: Iterable[str]) -> SimpleGraph:
    labels = list(labels)
    return SimpleGraph.build(labels, itertools.combinations(labels, 2))


def triangle() -> SimpleGraph:
    return complete_graph(["a", "b", "c"])


# -- diagrams -------------------------------------------------------------------


def cz_diagram() -> Diagram:
    """The controlled-Z map: two green spiders joined through an H-box."""
    d = Diagram()
    a = d.add_node(Z, 0, name="a")
    b = d.add_node(Z, 0, name="b")
    h = d.add_node(HBOX, name="h")
    d.add_edge(a, h)
    d.add_edge(h, b)
    for i, v in enumerate((a, b)):
        bi = d.add_node(BOUNDARY, name=f"in{i}")
        bo = d.add_node(BOUNDARY, name=f"out{i}")
        d.add_edge(bi, v)
        d.add_edge(v, bo)
    d.inputs = ("in0", "in1")
    d.outputs = ("out0", "out1")
    return d.check()


def graph_state(g: SimpleGraph) -> Diagram:
    """The 0-input diagram preparing |g>: one green dot and output per vertex,
    an H-box per edge."""
    d = Diagram()
    for v in g.vertices:
        d.add_node(Z, 0, name=f"v:{v}")
        d.add_node(BOUNDARY, name=f"w:{v}")
        d.add_edge(f"v:{v}", f"w:{v}")
    for i, (u, v) in enumerate(g.edge_list()):
        h = d.add_node(HBOX, name=f"h:{u}:{v}")
        d.add_edge(f"v:{u}", h)
        d.add_edge(h, f"v:{v}")
    d.outputs = tuple(f"w:{v}" for v in g.vertices)
    return d.check()


def _rotate_wire(d: Diagram, vertex: str, colour: str, phase: PhaseLike) -> None:
    """Insert a rotation node on the output wire of `vertex` (in place)."""
    wire_b = f"w:{vertex}"
    partner = d.boundary_partner(wire_b)
    r = d.add_node(colour, phase)
    d.remove_edge(partner, wire_b)
    d.add_edge(partner, r)
    d.add_edge(r, wire_b)


def fixpoint_lhs(g: SimpleGraph, u: str) -> Diagram:
    """|g> with an X(pi) rotation on u and Z(pi) on each neighbour of u."""
    if u not in g.vertices:
        raise GraphError(f"unknown vertex {u!r}")
    d = graph_state(g)
    _rotate_wire(d, u, X, PI)
    for v in g.neighbours(u):
        _rotate_wire(d, v, Z, PI)
    return d.check()


def vdn_lhs(g: SimpleGraph, u: str) -> Diagram:
    """|g> with the local-complementation witness rotations at u."""
    if u not in g.vertices:
        raise GraphError(f"unknown vertex {u!r}")
    d = graph_state(g)
    _rotate_wire(d, u, X, LC_VERTEX_PHASE)
    for v in g.neighbours(u):
        _rotate_wire(d, v, Z, LC_NEIGHBOUR_PHASE)
    return d.check()


# -- graph operations --------------------------------------------------------------


def local_complement(g: SimpleGraph, u: str) -> SimpleGraph:
    """Toggle every edge between distinct neighbours of u."""
    nbs = g.neighbours(u)
    toggled = set(g.edges)
    for a, b in itertools.combinations(nbs, 2):
        toggled ^= {frozenset((a, b))}
    return SimpleGraph(g.vertices, frozenset(toggled))


def check_fixpoint(g: SimpleGraph, u: str, tol: float = 1e-9) -> bool:
    return equal_up_to_scalar(evaluate(fixpoint_lhs(g, u)),
                              evaluate(graph_state(g)), tol)


def check_vdn(g: SimpleGraph, u: str, tol: float = 1e-9) -> bool:
    return equal_up_to_scalar(evaluate(vdn_lhs(g, u)),
                              evaluate(graph_state(local_complement(g, u))), tol)


def lc_orbit(g: SimpleGraph, cap: int = ORBIT_CAP) -> set[SimpleGraph]:
    """Closure of {g} under local complementation at every vertex.

    Works on labelled graphs: no isomorphism quotient, so every member shares
    g's vertex order and wire order.
    """
    if len(g.vertices) > cap:
        raise GraphError(f"orbit capped at {cap} vertices")
    seen = {g}
    frontier = [g]
    while frontier:
        cur = frontier.pop()
        for u in cur.vertices:
            if not cur.neighbours(u):
                continue
            nxt = local_complement(cur, u)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def all_graphs(labels: tuple[str, ...]) -> Iterable[SimpleGraph]:
    """Every labelled simple graph on the given vertices."""
    pairs = list(itertools.combinations(labels, 2))
    for mask in range(2 ** len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        yield SimpleGraph.build(labels, edges)
