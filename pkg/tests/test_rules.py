import pytest

from conftest import random_diagram
from zxr import rules
from zxr.diagram import (BOUNDARY, HBOX, Diagram, X, Z, compose, generator,
                         iso_equal, wire)
from zxr.phase import Phase
from zxr.semantics import equal_up_to_scalar, evaluate


def chain(*parts):
    from zxr.lemmas import rotation_chain
    return rotation_chain(list(parts))


def hopf_lhs():
    d = Diagram()
    d.add_node(Z, 0, name="g")
    d.add_node(X, 0, name="x")
    d.add_edge("g", "x", 2)
    d.add_node(BOUNDARY, name="i")
    d.add_node(BOUNDARY, name="o")
    d.add_edge("i", "g")
    d.add_edge("x", "o")
    d.inputs, d.outputs = ("i",), ("o",)
    return d.check()


def test_match_sites_examples():
    assert len(rules.match_sites("hopf", hopf_lhs())) == 1
    fusable = compose(generator("phase_z", Phase(1, 2)),
                      generator("phase_z", Phase(1, 2)))
    assert len(rules.match_sites("spider-fuse", fusable)) == 1
    assert rules.match_sites("h-cancel", generator("h")) == []


def test_match_sites_sorted_and_unique(rng):
    for _ in range(10):
        d = random_diagram(rng)
        for rule in rules.RULE_IDS:
            sites = rules.match_sites(rule, d)
            assert sites == sorted(set(sites))


def test_spider_fuse_adds_phases():
    d = compose(generator("phase_z", Phase(1, 2)),
                generator("phase_z", Phase(1, 2)))
    (anchor,) = rules.match_sites("spider-fuse", d)
    out = rules.apply("spider-fuse", d, anchor)
    assert iso_equal(out, generator("phase_z", Phase(1)))


def test_hopf_disconnects():
    d = hopf_lhs()
    (anchor,) = rules.match_sites("hopf", d)
    out = rules.apply("hopf", d, anchor)
    assert out.multiplicity("g", "x") == 0
    assert equal_up_to_scalar(evaluate(d), evaluate(out))


def test_euler_gate():
    h = generator("h")
    (anchor,) = rules.match_sites("euler", h)
    with pytest.raises(rules.RuleError):
        rules.apply("euler", h, anchor)
    out = rules.apply("euler", h, anchor, euler_on=True)
    phases = sorted((out.kind(v), out.phase(v).token()) for v in out.spiders())
    assert phases == [("x", "3/2"), ("z", "3/2"), ("z", "3/2")]
    assert equal_up_to_scalar(evaluate(h), evaluate(out))
    assert not equal_up_to_scalar(evaluate(h, 2), evaluate(out, 2))


def test_anchor_mismatch_raises():
    with pytest.raises(rules.RuleError):
        rules.apply("spider-fuse", generator("h"), ("g", "g"))
    with pytest.raises(rules.RuleError):
        rules.apply("hopf", hopf_lhs(), ("i", "o"))


def test_soundness_every_rule_every_anchor(rng):
    checked = set()
    for _ in range(60):
        d = random_diagram(rng)
        vals = {n: evaluate(d, n) for n in (1, 2)}
        for rule in rules.RULE_IDS:
            for anchor in rules.match_sites(rule, d):
                out = rules.apply(rule, d, anchor, euler_on=True)
                checked.add(rule)
                for n in (1, 2):
                    if rule in rules.EULER_RULES and n != 1:
                        continue
                    assert equal_up_to_scalar(vals[n], evaluate(out, n)), \
                        (rule, anchor, n)
    assert {"spider-fuse", "id-remove", "self-loop", "h-colour",
            "h-phase", "id-insert", "spider-split"} <= checked


def test_normalize_chain_fuses():
    d = compose(generator("phase_z", Phase(1, 3)),
                compose(generator("phase_z", Phase(1, 2)),
                        generator("phase_z", Phase(1, 6))))
    out = rules.normalize(d)
    assert iso_equal(out, generator("phase_z", Phase(1)))


def test_normalize_hopf_lhs():
    out = rules.normalize(hopf_lhs())
    assert out.multiplicity("g", "x") == 0
    assert equal_up_to_scalar(evaluate(hopf_lhs()), evaluate(out))


def test_normalize_wire_fixpoint():
    assert iso_equal(rules.normalize(wire()), wire())


def normalized_invariants(d):
    for u, v, m in d.edges():
        if u == v:
            return False
        if (d.kind(u) in (Z, X) and d.kind(v) in (Z, X)
                and d.kind(u) == d.kind(v)):
            return False
        if m >= 2 and d.kind(u) in (Z, X) and d.kind(v) in (Z, X):
            return False
    for s in d.spiders():
        if d.phase(s).is_zero() and d.degree(s) == 2 and not d.self_loops(s):
            nbs = d.neighbours(s)
            if not (len(nbs) == 1 and d.kind(nbs[0]) == HBOX):
                return False
    return True


def test_normalize_properties(rng):
    for _ in range(60):
        d = random_diagram(rng)
        out = rules.normalize(d)
        assert normalized_invariants(out)
        assert equal_up_to_scalar(evaluate(d), evaluate(out))


def test_normalize_measure_trace(rng):
    for _ in range(20):
        d = random_diagram(rng)
        trace = []
        cur = d
        out = rules.normalize(d, trace=trace)
        for rule, anchor in trace:
            nxt = rules.apply(rule, cur, anchor)
            assert (nxt.node_count(), nxt.edge_count()) < \
                (cur.node_count(), cur.edge_count())
            cur = nxt
        assert iso_equal(cur, out)


def test_is_bipartite_form():
    assert rules.is_bipartite_form(hopf_lhs())
    fusable = compose(generator("phase_z", Phase(1, 2)),
                      generator("phase_z", Phase(1, 2)))
    assert not rules.is_bipartite_form(fusable)
    assert rules.is_bipartite_form(generator("phase_z", Phase(1, 2)))
    with pytest.raises(Exception):
        rules.is_bipartite_form(generator("h"))


def test_normalize_is_bipartite_on_h_free(rng):
    for _ in range(30):
        d = random_diagram(rng)
        if any(d.kind(v) == HBOX for v in d.nodes()):
            continue
        assert rules.is_bipartite_form(rules.normalize(d))


def test_graph_state_already_normal():
    from zxr.graphstate import graph_state, triangle
    d = graph_state(triangle())
    assert iso_equal(rules.normalize(d), d)
