"""Open multigraphs of Z/X spiders, H-boxes and ordered boundaries.

Diagrams are value-like: every operation returns a new diagram and callers
never mutate a diagram they did not just create. Node ids are opaque strings
and are never reused within one diagram's lifetime, so rewrite anchors stay
stable across unrelated edits.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Optional

from .phase import Phase, PhaseLike, ZERO

Z = "z"
X = "x"
HBOX = "h"
BOUNDARY = "b"

SPIDERS = (Z, X)


class DiagramError(ValueError):
    """A structural invariant of a diagram was violated."""


def other_colour(colour: str) -> str:
    if colour == Z:
        return X
    if colour == X:
        return Z
    raise DiagramError(f"not a spider colour: {colour!r}")


def _edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class Diagram:
    """A finite undirected open multigraph over spiders, H-boxes and boundaries."""

    def __init__(self) -> None:
        self._kind: dict[str, str] = {}
        self._phase: dict[str, Phase] = {}
        self._edges: Counter[tuple[str, str]] = Counter()
        self.inputs: tuple[str, ...] = ()
        self.outputs: tuple[str, ...] = ()
        self._fresh = 0
        self._used: set[str] = set()   # ids are never reused, even after removal

    # -- construction ------------------------------------------------------

    def copy(self) -> "Diagram":
        d = Diagram()
        d._kind = dict(self._kind)
        d._phase = dict(self._phase)
        d._edges = Counter(self._edges)
        d.inputs = self.inputs
        d.outputs = self.outputs
        d._fresh = self._fresh
        d._used = set(self._used)
        return d

    def fresh_id(self, prefix: str = "n") -> str:
        while True:
            name = f"{prefix}{self._fresh}"
            self._fresh += 1
            if name not in self._used:
                return name

    def add_node(self, kind: str, phase: Optional[PhaseLike] = None,
                 name: Optional[str] = None) -> str:
        if name is None:
            name = self.fresh_id()
        if name in self._kind:
            raise DiagramError(f"duplicate node id {name!r}")
        self._used.add(name)
        if kind in SPIDERS:
            self._phase[name] = Phase.coerce(phase) if phase is not None else ZERO
        elif phase is not None:
            raise DiagramError(f"{kind} node cannot carry a phase")
        self._kind[name] = kind
        return name

    def add_edge(self, u: str, v: str, times: int = 1) -> None:
        if times <= 0:
            return
        if u not in self._kind or v not in self._kind:
            raise DiagramError(f"edge endpoint missing: {u!r}-{v!r}")
        self._edges[_edge_key(u, v)] += times

    def remove_edge(self, u: str, v: str, times: int = 1) -> None:
        if times <= 0:
            return
        key = _edge_key(u, v)
        if self._edges.get(key, 0) < times:
            raise DiagramError(f"no such edge {key}")
        self._edges[key] -= times
        if self._edges[key] == 0:
            del self._edges[key]

    def remove_node(self, name: str) -> None:
        if any(name in key for key in self._edges):
            raise DiagramError(f"cannot remove wired node {name!r}")
        del self._kind[name]
        self._phase.pop(name, None)

    def set_phase(self, name: str, phase: PhaseLike) -> None:
        if self._kind.get(name) not in SPIDERS:
            raise DiagramError(f"{name!r} is not a spider")
        self._phase[name] = Phase.coerce(phase)

    # -- views -------------------------------------------------------------

    def kind(self, name: str) -> str:
        return self._kind[name]

    def phase(self, name: str) -> Phase:
        return self._phase[name]

    def nodes(self) -> list[str]:
        return sorted(self._kind)

    def has_node(self, name: str) -> bool:
        return name in self._kind

    def spiders(self) -> list[str]:
        return [v for v in self.nodes() if self._kind[v] in SPIDERS]

    def edges(self) -> Iterator[tuple[str, str, int]]:
        """Distinct edges with multiplicities, in sorted order."""
        for (u, v) in sorted(self._edges):
            yield u, v, self._edges[(u, v)]

    def edge_instances(self) -> list[tuple[str, str, int]]:
        """One entry (u, v, k) per parallel copy, k = 0..multiplicity-1."""
        out = []
        for u, v, m in self.edges():
            out.extend((u, v, k) for k in range(m))
        return out

    def multiplicity(self, u: str, v: str) -> int:
        return self._edges.get(_edge_key(u, v), 0)

    def degree(self, name: str) -> int:
        deg = 0
        for (u, v), m in self._edges.items():
            if u == name:
                deg += m
            if v == name:
                deg += m
        return deg

    def neighbours(self, name: str) -> list[str]:
        """Distinct neighbouring nodes (self excluded), sorted."""
        out = set()
        for (u, v), m in self._edges.items():
            if m <= 0:
                continue
            if u == name and v != name:
                out.add(v)
            elif v == name and u != name:
                out.add(u)
        return sorted(out)

    def self_loops(self, name: str) -> int:
        return self._edges.get((name, name), 0)

    def boundary(self) -> tuple[str, ...]:
        return self.inputs + self.outputs

    def boundary_partner(self, b: str) -> str:
        """The unique node a boundary is wired to (may be another boundary)."""
        for (u, v), m in self._edges.items():
            if m <= 0:
                continue
            if u == b:
                return v
            if v == b:
                return u
        raise DiagramError(f"boundary {b!r} has no wire")

    def node_count(self) -> int:
        return len(self._kind)

    def edge_count(self) -> int:
        return sum(self._edges.values())

    # -- invariants ----------------------------------------------------------

    def check(self) -> "Diagram":
        """Validate every structural invariant; returns self for chaining."""
        bset = set(self.inputs) | set(self.outputs)
        if len(self.inputs) + len(self.outputs) != len(bset):
            raise DiagramError("inputs/outputs overlap or repeat")
        for name, kind in self._kind.items():
            if kind == BOUNDARY:
                if name not in bset:
                    raise DiagramError(f"boundary {name!r} not listed in inputs/outputs")
                if self.degree(name) != 1:
                    raise DiagramError(f"boundary {name!r} must have degree 1")
            elif kind == HBOX:
                if self.degree(name) != 2:
                    raise DiagramError(f"H-box {name!r} must have degree 2")
                if self.self_loops(name):
                    raise DiagramError(f"H-box {name!r} has a self-loop")
            elif kind in SPIDERS:
                if name not in self._phase:
                    raise DiagramError(f"spider {name!r} lacks a phase")
            else:
                raise DiagramError(f"unknown node kind {kind!r}")
        for b in bset:
            if self._kind.get(b) != BOUNDARY:
                raise DiagramError(f"listed boundary {b!r} is not a boundary node")
        for (u, v), m in self._edges.items():
            if m < 0:
                raise DiagramError("negative edge multiplicity")
            if u not in self._kind or v not in self._kind:
                raise DiagramError(f"dangling edge {(u, v)}")
        return self

    # -- equality ------------------------------------------------------------

    def iso_equal(self, other: "Diagram") -> bool:
        """Label- and multiplicity-preserving isomorphism, boundaries index-wise."""
        return _isomorphic(self, other)

    def __repr__(self) -> str:
        return (f"Diagram({len(self.inputs)}->{len(self.outputs)}, "
                f"{self.node_count()} nodes, {self.edge_count()} edges)")


# -- generators --------------------------------------------------------------


def empty() -> Diagram:
    return Diagram().check()


def wire() -> Diagram:
    d = Diagram()
    a = d.add_node(BOUNDARY, name="in0")
    b = d.add_node(BOUNDARY, name="out0")
    d.add_edge(a, b)
    d.inputs, d.outputs = (a,), (b,)
    return d.check()


def generator(kind: str, phase: Optional[PhaseLike] = None) -> Diagram:
    """One-node diagram for a named generator.

    `kind` is one of delta_z, delta_z_dag, eps_z, eps_z_dag, phase_z, the same
    with x in place of z, plus h and wire. A phase argument is accepted
    exactly for phase_z / phase_x.
    """
    if kind == "wire":
        if phase is not None:
            raise DiagramError("wire carries no phase")
        return wire()
    if kind == "h":
        if phase is not None:
            raise DiagramError("h carries no phase")
        return _single_node(HBOX, None, 1, 1)
    name = kind
    dag = name.endswith("_dag")
    if dag:
        name = name[:-4]
    base, _, colour = name.rpartition("_")
    if colour not in SPIDERS or base not in ("delta", "eps", "phase") or (dag and base == "phase"):
        raise DiagramError(f"unknown generator {kind!r}")
    n_in, n_out = {"delta": (1, 2), "eps": (1, 0), "phase": (1, 1)}[base]
    if dag:
        n_in, n_out = n_out, n_in
    if base == "phase":
        if phase is None:
            raise DiagramError(f"{kind} requires a phase")
    elif phase is not None:
        raise DiagramError(f"{kind} carries no phase")
    return _single_node(colour, phase, n_in, n_out)


def _single_node(kind: str, phase: Optional[PhaseLike], n_in: int, n_out: int) -> Diagram:
    d = Diagram()
    v = d.add_node(kind, phase, name="g")
    ins = []
    for i in range(n_in):
        b = d.add_node(BOUNDARY, name=f"in{i}")
        d.add_edge(b, v)
        ins.append(b)
    outs = []
    for i in range(n_out):
        b = d.add_node(BOUNDARY, name=f"out{i}")
        d.add_edge(v, b)
        outs.append(b)
    d.inputs, d.outputs = tuple(ins), tuple(outs)
    return d.check()


def spider(colour: str, n_in: int, n_out: int, phase: PhaseLike = 0) -> Diagram:
    """A single spider of the given colour and arity."""
    return _single_node(colour, phase, n_in, n_out)


# -- composition --------------------------------------------------------------


def _merged_namespace(f: Diagram, g: Diagram) -> tuple[Diagram, dict[str, str]]:
    """Copy of f extended with g's nodes/edges; returns the rename map for g."""
    d = f.copy()
    rename: dict[str, str] = {}
    for v in g.nodes():
        name = v
        k = 0
        while name in d._used:
            name = f"{v}.{k}"
            k += 1
        rename[v] = name
        d.add_node(g.kind(v), g.phase(v) if g.kind(v) in SPIDERS else None, name=name)
    for u, v, m in g.edges():
        d.add_edge(rename[u], rename[v], m)
    return d, rename


def tensor(f: Diagram, g: Diagram) -> Diagram:
    """Side-by-side juxtaposition; f's wires come first."""
    d, rename = _merged_namespace(f, g)
    d.inputs = f.inputs + tuple(rename[b] for b in g.inputs)
    d.outputs = f.outputs + tuple(rename[b] for b in g.outputs)
    return d.check()


def compose(f: Diagram, g: Diagram) -> Diagram:
    """f after g: glue output i of g to input i of f."""
    if len(g.outputs) != len(f.inputs):
        raise DiagramError(
            f"arity mismatch: g has {len(g.outputs)} outputs, f has {len(f.inputs)} inputs")
    d, rename = _merged_namespace(g, f)
    glue = [(g.outputs[i], rename[f.inputs[i]]) for i in range(len(f.inputs))]
    d.inputs = g.inputs
    d.outputs = tuple(rename[b] for b in f.outputs)
    for bg, bf in glue:
        u = d.boundary_partner(bg)
        d.remove_edge(bg, u)
        if u == bf:
            # two directly glued wires close into a loop: keep its value (2)
            # as a phase-0 spider with a self-loop
            loop = d.add_node(Z, 0)
            d.add_edge(loop, loop)
        else:
            v = d.boundary_partner(bf)
            d.remove_edge(bf, v)
            d.add_edge(u, v)
        d.remove_node(bg)
        d.remove_node(bf)
    return d.check()


def dagger(f: Diagram) -> Diagram:
    """Swap inputs and outputs (order kept) and negate every spider phase."""
    d = f.copy()
    d.inputs, d.outputs = f.outputs, f.inputs
    for v in d.spiders():
        d.set_phase(v, -d.phase(v))
    return d.check()


# -- isomorphism ---------------------------------------------------------------


def _node_label(d: Diagram, v: str) -> tuple:
    kind = d.kind(v)
    phase = d.phase(v) if kind in SPIDERS else None
    return (kind, phase, d.degree(v), d.self_loops(v))


def _isomorphic(a: Diagram, b: Diagram) -> bool:
    if (len(a.inputs) != len(b.inputs) or len(a.outputs) != len(b.outputs)
            or a.node_count() != b.node_count() or a.edge_count() != b.edge_count()):
        return False
    labels_a = sorted(_node_label(a, v) for v in a.nodes())
    labels_b = sorted(_node_label(b, v) for v in b.nodes())
    if labels_a != labels_b:
        return False

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(u: str, v: str) -> bool:
        if _node_label(a, u) != _node_label(b, v):
            return False
        for w in a.neighbours(u):
            if w in mapping and a.multiplicity(u, w) != b.multiplicity(v, mapping[w]):
                return False
        return True

    for ba, bb in zip(a.inputs + a.outputs, b.inputs + b.outputs):
        mapping[ba] = bb
        used.add(bb)

    rest = [v for v in a.nodes() if v not in mapping]
    # most-constrained-first: high degree, rare labels
    rest.sort(key=lambda v: (-a.degree(v), _node_label(a, v)))
    candidates_b = [v for v in b.nodes() if b.kind(v) != BOUNDARY]

    def backtrack(i: int) -> bool:
        if i == len(rest):
            remapped = Counter()
            for (u, v), m in a._edges.items():
                remapped[_edge_key(mapping[u], mapping[v])] += m
            return remapped == b._edges
        u = rest[i]
        for v in candidates_b:
            if v in used or not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if backtrack(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    # boundary wiring must already agree
    for ba, bb in zip(a.inputs + a.outputs, b.inputs + b.outputs):
        if _node_label(a, ba) != _node_label(b, bb):
            return False
    return backtrack(0)


def iso_equal(a: Diagram, b: Diagram) -> bool:
    return _isomorphic(a, b)
