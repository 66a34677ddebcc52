import pytest

from conftest import random_diagram
from zxr.diagram import (BOUNDARY, Diagram, DiagramError, Z, compose, dagger,
                         empty, generator, iso_equal, tensor, wire)
from zxr.phase import Phase


def test_generator_arities():
    cases = {
        "delta_z": (1, 2), "delta_z_dag": (2, 1),
        "eps_z": (1, 0), "eps_z_dag": (0, 1),
        "delta_x": (1, 2), "eps_x_dag": (0, 1),
        "h": (1, 1), "wire": (1, 1),
    }
    for kind, (n_in, n_out) in cases.items():
        d = generator(kind)
        assert (len(d.inputs), len(d.outputs)) == (n_in, n_out), kind


def test_eps_z_dag_shape():
    d = generator("eps_z_dag")
    assert len(d.inputs) == 0 and len(d.outputs) == 1
    (v,) = d.spiders()
    assert d.kind(v) == Z and d.phase(v).is_zero()


def test_wire_has_no_internal_node():
    d = generator("wire")
    assert d.spiders() == []


def test_phase_generator_requires_phase():
    g = generator("phase_x", Phase(1))
    (v,) = g.spiders()
    assert g.phase(v) == Phase(1)
    with pytest.raises(DiagramError):
        generator("phase_z")
    with pytest.raises(DiagramError):
        generator("delta_z", Phase(1))


def test_compose_arity_mismatch():
    with pytest.raises(DiagramError):
        compose(generator("delta_z"), generator("delta_z"))


def test_compose_wire_absorbs():
    assert iso_equal(compose(wire(), wire()), wire())


def test_tensor_unit():
    f = generator("phase_z", Phase(1, 2))
    assert iso_equal(tensor(empty(), f), f)
    two = tensor(wire(), wire())
    assert len(two.inputs) == 2 and len(two.outputs) == 2


def test_dagger_swaps_and_negates():
    assert iso_equal(dagger(generator("eps_z")), generator("eps_z_dag"))
    assert iso_equal(dagger(generator("h")), generator("h"))
    # conjugate-transpose of diag(1, e^{i pi/2}) is the 3pi/2 rotation
    assert iso_equal(dagger(generator("phase_z", Phase(1, 2))),
                     generator("phase_z", Phase(3, 2)))


def test_dagger_involution(rng):
    for _ in range(25):
        d = random_diagram(rng)
        assert iso_equal(dagger(dagger(d)), d)


def test_iso_reflexive(rng):
    for _ in range(25):
        d = random_diagram(rng)
        assert iso_equal(d, d.copy())


def test_iso_colour_differs():
    assert not iso_equal(generator("phase_z", Phase(1, 2)),
                         generator("phase_x", Phase(1, 2)))


def test_iso_permuted_internal_names():
    # two renderings of the same triangle-state shape with permuted ids
    from zxr.graphstate import graph_state, triangle

    a = graph_state(triangle())
    b = Diagram()
    for n in ("p", "q", "r"):
        b.add_node(Z, 0, name=n)
    boxes = [("p", "q"), ("q", "r"), ("p", "r")]
    for i, (u, v) in enumerate(boxes):
        h = b.add_node("h", name=f"box{i}")
        b.add_edge(u, h)
        b.add_edge(h, v)
    outs = []
    for n in ("p", "q", "r"):
        w = b.add_node(BOUNDARY, name=f"wire-{n}")
        b.add_edge(n, w)
        outs.append(w)
    b.outputs = tuple(outs)
    assert iso_equal(a, b.check())


def test_invariants_rejected():
    d = Diagram()
    h = d.add_node("h", name="h")
    d.add_edge(h, h)
    with pytest.raises(DiagramError):
        d.check()
    d2 = Diagram()
    b = d2.add_node(BOUNDARY, name="b")
    d2.inputs = ("b",)
    with pytest.raises(DiagramError):
        d2.check()  # boundary without its wire


def test_compose_tensor_preserve_invariants(rng):
    for _ in range(20):
        f = random_diagram(rng)
        g = random_diagram(rng)
        tensor(f, g).check()
        if len(f.inputs) == len(g.outputs):
            compose(f, g).check()


def test_node_ids_never_reused():
    d = Diagram()
    a = d.add_node(Z, 0)
    d.remove_node(a)
    b = d.add_node(Z, 0)
    assert a != b
