import random

import pytest
from hypothesis import given, strategies as st

from lininterp.corpus import P, Q, R, ill_corpus, matrix_corpus, random_ill_formula, x, y, z
from lininterp.errors import ModalityRequired, SystemViolation
from lininterp.interpretation import (
    characterization_formula, condition_formulas, interpret, modality, modality_dia,
    modality_dn, modality_mr, trivial_mr_conditions,
)
from lininterp.models import FiniteModel, eval_formula, eval_term, semantic_equiv, valid
from lininterp.sexpr import show
from lininterp.subst import alpha_equal, free_vars
from lininterp.syntax import (
    FALSE, TRUE, And, App, Arrow, Atom, B, Bang, BoolEq, DecCases, Exists, FinSet, Forall, I,
    Lolli, Member, Plus, Tensor, Var, With, check_formula_terms, diamond, subformulas,
)

MODS = ("mr", "dn", "dia")
u = Var("u", I)


def S(a, b):
    return Atom("S", (a, b))


def test_atomic_is_unchanged():
    i = interpret(P)
    assert (i.witnesses, i.challenges, i.matrix) == ((), (), P)


def test_forall_exists():
    i = interpret(Forall(z, Exists(u, S(z, u))))
    (f,), (c,) = i.witnesses, i.challenges
    assert f.type == Arrow(I, I) and c.type == I
    assert i.matrix == S(c, App(f, c))


def test_mr_bang_atomic():
    i = interpret(Bang(P), "mr")
    assert (i.witnesses, i.challenges, i.matrix) == ((), (), Bang(P))


def test_plus():
    i = interpret(Plus(P, Q))
    (b,) = i.witnesses
    assert b.type == B and i.challenges == ()
    assert i.matrix == diamond(b, P, Q)


def test_with_full_and_simplified():
    full = interpret(With(P, Q))
    (b,) = full.challenges
    assert full.matrix == diamond(b, P, Q)
    simple = interpret(With(P, Q), simplified_with=True)
    assert simple.challenges == () and simple.matrix == With(P, Q)


def test_lolli_witness_types():
    v = Var("v", I)
    a = Lolli(Exists(u, Forall(v, S(u, v))), Forall(v, Exists(u, S(u, v))))
    i = interpret(a)
    f, g = i.witnesses
    xa, w = i.challenges
    assert f.type == Arrow(I, Arrow(I, I))
    assert g.type == Arrow(I, Arrow(I, I))
    assert i.matrix == Lolli(S(xa, App(App(f, xa), w)), S(App(App(g, xa), w), w))


def test_bang_needs_modality():
    with pytest.raises(ModalityRequired):
        interpret(Bang(Forall(u, R(u))))


def test_il_connective_rejected():
    with pytest.raises(SystemViolation):
        interpret(And(P, Q))


def test_dn_bang_uses_set_bounds():
    i = interpret(Bang(Forall(u, R(u))), "dn")
    (a,) = i.challenges
    assert a.type == FinSet(I)
    c = i.inner.challenges[0]
    assert i.matrix == Bang(Forall(c, Lolli(Bang(Member(c, a)), R(c))))


def test_dia_bang_keeps_challenges():
    i = interpret(Bang(Forall(u, R(u))), "dia")
    assert i.challenges == i.inner.challenges
    assert i.matrix == Bang(i.inner.matrix)


def test_modality_constructors():
    assert modality_mr().name == "mr"
    assert modality_dn().name == "dn"
    assert modality_dia().name == "dia"
    assert modality("diller-nahm") is modality_dn()


def test_mr_ubq_is_plain_forall():
    m = modality_mr()
    assert m.ubq((y,), (), R(y)) == Forall(y, R(y))
    assert m.bound_types((I, B)) == ()
    assert m.single((x,)) == () and m.join((), (), (y,), R(y)) == ()


def test_dn_single_membership():
    (s,) = modality_dn().single((x,))
    m = FiniteModel(2)
    for v in (0, 1):
        assert eval_formula(Bang(Member(x, s)), m, {x: v})


def test_dia_join_picks_counterexample():
    y1, y2 = Var("y1", I), Var("y2", I)
    (t,) = modality_dia().join((y1,), (y2,), (y,), R(y))
    assert t == DecCases(R(y1), y1, y2)
    m = FiniteModel(2, {"R": {(1,)}})
    assert eval_term(t, m, {y1: 0, y2: 1}) == 0
    assert eval_term(t, m, {y1: 1, y2: 0}) == 0


def test_characterization_examples():
    assert characterization_formula(P) == P
    c = characterization_formula(Forall(z, Exists(u, S(z, u))))
    f = Var("f", Arrow(I, I))
    assert alpha_equal(c, Exists(f, Forall(z, S(z, App(f, z)))))
    assert characterization_formula(Tensor(P, Q)) == Tensor(P, Q)


def _check_invariants(a, mod, simplified):
    i = interpret(a, mod, simplified)
    ws, cs = set(i.witnesses), set(i.challenges)
    src = free_vars(a)
    assert not ws & cs
    assert not (ws | cs) & src
    assert len(ws) == len(i.witnesses) and len(cs) == len(i.challenges)
    assert free_vars(i.matrix) <= ws | cs | src
    check_formula_terms(i.matrix)


@pytest.mark.parametrize("mod", MODS)
def test_interpretation_invariants(mod):
    for a in ill_corpus(150, depth=4, seed=3):
        _check_invariants(a, mod, False)
        _check_invariants(a, mod, True)


@given(st.integers(0, 10 ** 6))
def test_with_free_modes_agree(seed):
    a = random_ill_formula(random.Random(seed), 3)
    if any(isinstance(g, With) for g in subformulas(a)):
        return
    for mod in MODS:
        assert interpret(a, mod, False) == interpret(a, mod, True)


def test_atomic_interpretations_are_empty():
    for a in (P, R(x), BoolEq(TRUE, FALSE)):
        i = interpret(a, "dn")
        assert i.witnesses == () and i.challenges == () and i.matrix == a


@pytest.mark.parametrize("mod", MODS)
def test_conditions_hold_on_sample(mod):
    for matrix, ys in matrix_corpus(8, seed=5):
        for c in condition_formulas(mod, matrix, ys):
            assert valid(c), show(c)


def test_mr_conditions_are_trivial():
    for matrix, ys in matrix_corpus(20):
        a1, a2, a3 = condition_formulas("mr", matrix, ys)
        zs = tuple(free_vars(a1) - free_vars(matrix))
        zs = tuple(sorted(zs, key=lambda v: v.name))
        xs = (a3.right.body.var,)
        assert (a1, a2, a3) == trivial_mr_conditions(matrix, ys, zs, xs)


@pytest.mark.parametrize("mod", MODS)
def test_characterization_is_classically_equivalent(mod):
    for a in ill_corpus(40, depth=3, seed=7):
        assert semantic_equiv(characterization_formula(a, mod), a), show(a)
