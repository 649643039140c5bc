import pytest
from hypothesis import given

from lininterp.calculus import check_derivation
from lininterp.corpus import P, Q, R, rule_fixtures, x, y
from lininterp.errors import Inconclusive, SignatureMismatch
from lininterp.models import (
    FiniteModel, eval_formula, eval_term, exhaustive, find_countermodel, models, semantic_equiv,
    valid,
)
from lininterp.reduction import normalize
from lininterp.syntax import (
    FALSE, INHABITANT, TRUE, ZERO, App, Arrow, Atom, B, Cond, FinSet, Forall, I, Lam, Lolli,
    Tensor, Var, With, apply, comp_const, diamond, join_const, single_const,
)

from strategies import terms

s = Var("s", FinSet(I))


def test_join_is_union():
    m = FiniteModel(2)
    one = App(single_const(I), x)
    t = apply(join_const(I), one, App(single_const(I), y))
    assert eval_term(t, m, {x: 0, y: 1}) == frozenset({0, 1})


def test_cond_true():
    assert eval_term(Cond(TRUE, x, y), FiniteModel(2), {x: 0, y: 1}) == 0


def test_comp_is_indexed_union():
    m = FiniteModel(2)
    f = Lam(x, App(single_const(I), x))
    t = apply(comp_const((I,), I), s, f)
    assert eval_term(t, m, {s: frozenset({0, 1})}) == frozenset({0, 1})


def test_zero_is_false():
    assert not eval_formula(ZERO, FiniteModel(1), {})


def test_diamond_true_selects_left():
    m = FiniteModel(1, {"P": {()}})
    assert eval_formula(diamond(TRUE, P, Q), m, {})
    assert not eval_formula(diamond(FALSE, P, Q), m, {})


def test_forall_all_true_table():
    m = FiniteModel(3, {"R": {(0,), (1,), (2,)}})
    assert eval_formula(Forall(x, R(x)), m, {})


def test_carriers_are_inhabited():
    m = FiniteModel(2)
    for ty in (I, B, Arrow(I, I), FinSet(I), Arrow(FinSet(I), B)):
        assert m.carrier(ty)
    assert frozenset() not in m.carrier(FinSet(I))
    assert len(m.carrier(Arrow(I, B))) == 4


def test_empty_carrier_rejected():
    with pytest.raises(ValueError):
        FiniteModel(0)


def test_model_stream_is_deterministic():
    sig = {"R": (I,), "P": ()}
    first = [m.tables for m in models(sig, 2)]
    assert first == [m.tables for m in models(sig, 2)]
    assert len(first) == 2 ** 2 * 2
    big = {"A": (I, I, I, I), "B": (), "C": ()}
    assert not exhaustive(big, 2)
    sampled = [m.tables for m in models(big, 2, seed=4)]
    assert sampled == [m.tables for m in models(big, 2, seed=4)]
    assert sampled != [m.tables for m in models(big, 2, seed=5)]


def test_small_signatures_are_exhaustive():
    assert exhaustive({"P": (), "Q": (), "R": (I,)}, 2)
    assert exhaustive({"S": (I, I), "R": (I,)}, 3)


def test_semantic_equiv_examples():
    assert semantic_equiv(R(x), R(x))
    assert semantic_equiv(With(P, P), P)
    assert not semantic_equiv(P, Q)


def test_tensor_vs_with_invisible():
    # the classical collapse cannot tell the two conjunctions apart
    assert semantic_equiv(Tensor(P, Q), With(P, Q))


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        semantic_equiv(Atom("R", (x,)), Atom("R", (x, y)))


def test_cap_gives_inconclusive():
    k = Var("k", Arrow(I, I))
    f = Lolli(R(x), R(App(k, x)))
    with pytest.raises(Inconclusive):
        valid(f, cap=3)
    assert not valid(f)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LININTERP_MAX_ASSIGNMENTS", "2")
    with pytest.raises(Inconclusive):
        valid(Lolli(R(x), R(y)))


def test_countermodel():
    m, env = find_countermodel(Lolli(R(x), R(y)))
    assert eval_formula(R(x), m, env) and not eval_formula(R(y), m, env)


@given(terms(I))
def test_eval_respects_normalize(t):
    f, g, z = Var("f", Arrow(I, I)), Var("g", Arrow(I, Arrow(I, I))), Var("z", B)
    for size in (1, 2):
        m = FiniteModel(size)
        n = normalize(t)
        for ff in m.carrier(f.type):
            for gg in m.carrier(g.type)[:3]:
                for zz in (True, False):
                    env = {x: 0, y: size - 1, f: ff, g: gg, z: zz}
                    assert eval_term(n, m, env) == eval_term(t, m, env)


VERIFYING = [fx for fx in rule_fixtures() if fx.system.startswith("illb")]


@pytest.mark.parametrize("fx", VERIFYING, ids=lambda f: f.name)
def test_verifying_axioms_hold_classically(fx):
    seq = check_derivation(fx.derivation, fx.system)
    f = seq.concl
    for h in reversed(seq.hyps):
        f = Lolli(h, f)
    assert valid(f)


def test_inhabitant_constant():
    assert eval_term(INHABITANT, FiniteModel(2), {}) == 0
