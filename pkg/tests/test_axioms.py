import pytest

from zxr import axioms


def test_base_axioms_hold_in_standard_model():
    for name in axioms.BASE_AXIOMS:
        assert axioms.verify_axiom(name, 1), name


def test_base_axioms_hold_in_scaled_models():
    for n in (2, 3):
        for name in axioms.BASE_AXIOMS:
            assert axioms.verify_axiom(name, n), (name, n)


def test_spider_fusion_model_1():
    assert axioms.verify_axiom("spider-fuse", 1)


def test_bialgebra_model_2():
    assert axioms.verify_axiom("bialgebra", 2)


def test_euler_only_in_standard_model():
    assert axioms.verify_axiom("euler", 1)
    assert not axioms.verify_axiom("euler", 2)


def test_euler_failure_is_gross():
    holds, residual = axioms.verify_axiom_residual("euler", 2)
    assert not holds and residual > 0.1


def test_report_rows_and_verdict():
    rows = axioms.independence_report()
    assert {(r["model_n"], r["axiom"]) for r in rows} == {
        (n, a) for n in (1, 2, 3) for a in axioms.ALL_AXIOMS}
    for r in rows:
        assert set(r) == {"model_n", "axiom", "holds", "max_residual"}
        assert isinstance(r["holds"], bool)
    assert axioms.independence_verdict(rows)
    # tampering with the expected pattern flips the verdict
    bad = [dict(r) for r in rows]
    for r in bad:
        if r["axiom"] == "euler" and r["model_n"] == 2:
            r["holds"] = True
    assert not axioms.independence_verdict(bad)


def test_unknown_axiom():
    with pytest.raises(ValueError):
        axioms.verify_axiom("nonsense")
