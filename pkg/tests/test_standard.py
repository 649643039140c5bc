import pytest

from lininterp.corpus import ALL_R, P, Q, R, il_corpus, ill_corpus, x, z
from lininterp.embeddings import is_bang_free
from lininterp.interpretation import interpret
from lininterp.sexpr import show
from lininterp.standard import (
    STANDARD, Verdict, circlebang_empty_challenges, correspondence_check,
    dialectica_interpret, diller_nahm_interpret, mr_interpret,
)
from lininterp.subst import alpha_equal
from lininterp.syntax import (
    FALSE, TRUE, And, App, Arrow, Atom, B, BoolEq, Exists, FinSet, Forall, I, Implies, Member,
    Or, is_quantifier_free, subformulas,
)

CORPUS = il_corpus()
S = Atom("S", (z, x))


def flagged(b, left, right):
    return And(Implies(BoolEq(b, TRUE), left), Implies(BoolEq(b, FALSE), right))


@pytest.mark.parametrize("fn", STANDARD.values())
def test_atoms(fn):
    i = fn(P)
    assert (i.witnesses, i.challenges, i.matrix) == ((), (), P)


@pytest.mark.parametrize("fn", STANDARD.values())
def test_simple_implication(fn):
    i = fn(Implies(P, Q))
    assert (i.witnesses, i.challenges, i.matrix) == ((), (), Implies(P, Q))


@pytest.mark.parametrize("fn", STANDARD.values())
def test_disjunction_flag(fn):
    i = fn(Or(P, Q))
    (b,) = i.witnesses
    assert b.type == B and i.challenges == ()
    assert i.matrix == flagged(b, P, Q)


def test_mr_has_no_challenges():
    for a in CORPUS:
        assert mr_interpret(a).challenges == ()


def test_mr_forall_exists():
    i = mr_interpret(Forall(z, Exists(x, S)))
    (f,) = i.witnesses
    assert alpha_equal(i.matrix, Forall(z, Atom("S", (z, App(f, z)))))


def test_dialectica_forall_exists():
    i = dialectica_interpret(Forall(z, Exists(x, S)))
    (f,), (c,) = i.witnesses, i.challenges
    assert f.type == Arrow(I, I)
    assert i.matrix == Atom("S", (c, App(f, c)))


def test_dialectica_counterexample_function():
    i = dialectica_interpret(Implies(ALL_R, Q))
    (f,) = i.witnesses
    assert f.type == I
    assert i.matrix == Implies(R(f), Q)


def test_dn_counterexample_set():
    i = diller_nahm_interpret(Implies(ALL_R, Q))
    (f,) = i.witnesses
    assert f.type == FinSet(I)
    (v,) = [g.var for g in subformulas(i.matrix) if isinstance(g, Forall)]
    assert i.matrix == Implies(Forall(v, Implies(Member(v, f), R(v))), Q)


def test_dialectica_matrices_are_quantifier_free():
    for a in CORPUS:
        assert is_quantifier_free(dialectica_interpret(a).matrix)


def _bounded_only(f):
    return all(isinstance(g.body, Implies) and isinstance(g.body.left, Member)
               and g.body.left.elem == g.var
               for g in subformulas(f) if isinstance(g, Forall))


def test_dn_quantifiers_are_bounded():
    for a in CORPUS:
        m = diller_nahm_interpret(a).matrix
        assert not any(isinstance(g, Exists) for g in subformulas(m))
        assert _bounded_only(m)


@pytest.mark.parametrize("which", ["mr", "dia", "dn"])
def test_atomic_correspondence_is_structural(which):
    assert correspondence_check(which, P) is Verdict.STRUCTURAL
    assert correspondence_check(which, R(x)) is Verdict.STRUCTURAL


def test_conjunction_correspondence_dia():
    assert correspondence_check("dia", And(P, Q)) is Verdict.STRUCTURAL
    assert correspondence_check("dia", And(Forall(x, R(x)), Exists(x, R(x)))) is Verdict.STRUCTURAL


def test_mr_disjunction_not_mismatch():
    assert correspondence_check("mr", Or(P, Q)) is not Verdict.MISMATCH


@pytest.mark.parametrize("which", ["mr", "dia", "dn"])
def test_no_mismatch_on_sample(which):
    for a in CORPUS[:40]:
        assert correspondence_check(which, a) is not Verdict.MISMATCH, show(a)


@pytest.mark.parametrize("a", [P, Or(P, Q), Forall(x, R(x)), Implies(Or(P, Q), Exists(x, R(x)))],
                         ids=show)
def test_circle_mr_has_empty_challenges(a):
    assert circlebang_empty_challenges(a)


def test_verdict_names():
    assert [str(v) for v in Verdict] == ["StructuralEqual", "SemanticEqual", "Mismatch"]


def test_bang_free_formulas_ignore_the_modality():
    for a in ill_corpus(200, depth=4, seed=2):
        if is_bang_free(a):
            assert interpret(a, "dia") == interpret(a, "dn") == interpret(a, "mr")
