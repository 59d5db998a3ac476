import pytest

from faadibruno.config import RunConfig
from faadibruno.expr import Guard, GuardAtom, var
from faadibruno.report import overall_status
from faadibruno.smooth import TRIVIAL, apply_map, maps_equal, parse_smooth_map
from faadibruno.splitting import (
    SplitError,
    check_split_cdc,
    default_split_corpus,
    hom_condition,
    split_D,
    split_identity,
    split_L,
    split_map,
    split_object,
    split_then,
    total_in_split,
)

CFG = RunConfig(samples=60)


def pm(text):
    return parse_smooth_map(text)


X_POS = Guard((GuardAtom(">0", var("x1")),))
X_NONZERO = Guard((GuardAtom("!=0", var("x1")),))


def test_split_identity_is_the_idempotent():
    obj = split_object(1, X_POS)
    m = split_identity(obj)
    assert m.f.coords == (var("x1"),)
    assert m.f.guard == X_POS


def test_inclusion_then_reciprocal():
    pos = split_object(1, X_POS)
    full = split_object(1)
    incl = split_map(pm("fn(x) -> (x) where x > 0"), pos, full, CFG)
    recip = split_map(pm("fn(x) -> (1/x)"), full, full, CFG)
    comp = split_then(incl, recip, CFG)
    assert comp.f.guard == Guard((GuardAtom(">0", var("x1")), GuardAtom("!=0", var("x1"))))
    assert apply_map(comp.f, (2.0,)) == (0.5,)


def test_r1_holds_in_split_category():
    pos = split_object(1, X_POS)
    full = split_object(1)
    m = split_map(pm("fn(x) -> (log(x))"), pos, full, CFG)
    from faadibruno.splitting import split_restriction
    r = split_restriction(m)
    comp = split_then(r, m)
    assert maps_equal(comp.f, m.f, CFG, "split-r1").ok


def test_hom_condition_violation_rejected():
    pos = split_object(1, X_POS)
    full = split_object(1)
    # defined on all of R, not fixed by the source idempotent
    with pytest.raises(SplitError):
        split_map(pm("fn(x) -> (x^2)"), pos, full, CFG)


def test_split_L_discards_idempotent():
    obj = split_object(1, X_NONZERO)
    vec = split_L(obj)
    assert vec.guard.is_true()
    assert split_L(vec) == vec


def test_split_D_of_identity_on_half_line():
    pos = split_object(1, X_POS)
    m = split_identity(pos)
    dm = split_D(m)
    assert apply_map(dm.f, (3.0, 2.0)) == (3.0,)  # D(id)(v, x) = v
    assert dm.src.guard == Guard((GuardAtom(">0", var("x2")),))


def test_split_D_of_square_on_half_line():
    pos = split_object(1, X_POS)
    full = split_object(1)
    m = split_map(pm("fn(x) -> (x^2) where x > 0"), pos, full, CFG)
    dm = split_D(m)
    assert apply_map(dm.f, (1.0, 3.0)) == (6.0,)
    assert hom_condition(dm, CFG, "dhom").ok


def test_trivial_assignment_on_split_derivative():
    pos = split_object(1, X_POS)
    full = split_object(1)
    m = split_map(pm("fn(x) -> (log(x))"), pos, full, CFG)
    dm = split_D(m, TRIVIAL)
    assert dm.f.cod.dim == 0
    assert hom_condition(dm, CFG, "trivial-dhom").ok


def test_split_cdc_suite_passes():
    rows = check_split_cdc(default_split_corpus(), CFG)
    failures = [r for r in rows if r.gating and r.status != "pass"]
    assert failures == []
    assert overall_status(rows) == "pass"
    axioms = {r.axiom for r in rows}
    assert "split.D-guard-structural" in axioms
    assert "split.trivial-L-degenerate" in axioms


def test_total_in_split_detects_mismatch():
    full = split_object(1)
    m = split_map(pm("fn(x) -> (1/x)"), full, full, CFG)
    assert not total_in_split(m, CFG, "tot").ok
    pos = split_object(1, X_NONZERO)
    m2 = split_map(pm("fn(x) -> (1/x)"), pos, full, CFG)
    assert total_in_split(m2, CFG, "tot2").ok
