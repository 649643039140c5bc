import pytest

from lininterp.calculus import Sequent, check_derivation, node, validate_formula
from lininterp.corpus import P, Q, R, il_corpus, il_theorems, x, y, z
from lininterp.embeddings import (
    PrincipleInstance, check_slots, embed_circle, embed_simplified, embed_star,
    principle_formula, translate_proof,
)
from lininterp.errors import SlotClassViolation
from lininterp.models import semantic_equiv
from lininterp.sexpr import show
from lininterp.subst import alpha_equal
from lininterp.syntax import (
    BOT, ZERO, And, App, Arrow, Atom, Bang, Exists, Forall, I, Implies, Lolli, Or, Plus,
    Tensor, Var, With,
)

CORPUS = il_corpus()


def test_star_examples():
    assert embed_star(Or(P, Q)) == Plus(Bang(P), Bang(Q))
    assert embed_star(P) == P
    assert embed_star(Implies(Implies(P, Q), BOT)) == Lolli(Bang(Lolli(Bang(P), Q)), ZERO)


def test_circle_examples():
    assert embed_circle(P) == Bang(P)
    assert embed_circle(BOT) == ZERO
    assert embed_circle(Implies(P, Q)) == Bang(Lolli(Bang(P), Bang(Q)))


def test_simplified_examples():
    assert embed_simplified(Or(P, Q)) == Plus(P, Q)
    assert embed_simplified(Exists(x, R(x))) == Exists(x, R(x))
    assert embed_simplified(Implies(P, Q)) == Lolli(Bang(P), Q)


def test_star_other_clauses():
    assert embed_star(And(P, Q)) == With(P, Q)
    assert embed_star(Exists(x, R(x))) == Exists(x, Bang(R(x)))
    assert embed_star(Forall(x, R(x))) == Forall(x, R(x))


@pytest.mark.parametrize("a", CORPUS, ids=show)
def test_embeddings_validate(a):
    validate_formula(embed_star(a), "illr")
    validate_formula(embed_circle(a), "illr")
    validate_formula(embed_simplified(a), "ill")


@pytest.mark.parametrize("a", CORPUS, ids=show)
def test_circle_clause_shapes(a):
    c = embed_circle(a)
    match a:
        case Atom() | Implies() | Forall():
            assert isinstance(c, Bang)
        case _ if a == BOT:
            assert c == ZERO
        case And():
            assert c == Tensor(embed_circle(a.left), embed_circle(a.right))
        case Or():
            assert c == Plus(embed_circle(a.left), embed_circle(a.right))
        case Exists():
            assert c == Exists(a.var, embed_circle(a.body))


def test_circle_is_bang_star_on_corpus():
    for a in il_corpus(60, depth=3, seed=1):
        assert semantic_equiv(embed_circle(a), Bang(embed_star(a)), size_bound=2)


def test_translate_axiom():
    d = translate_proof(node("il_id", formula=P))
    assert check_derivation(d, "illr") == Sequent((Bang(P),), P)


@pytest.mark.parametrize("fx", il_theorems(), ids=lambda f: f.name)
def test_translated_theorems_recheck(fx):
    d = translate_proof(fx.derivation)
    seq = check_derivation(d, "illr")
    want = Sequent(tuple(Bang(embed_star(h)) for h in fx.hyps), embed_star(fx.concl))
    assert seq.alpha_equal(want)


def test_translate_identity_theorem():
    fx = next(f for f in il_theorems() if f.name == "identity_closed")
    seq = check_derivation(translate_proof(fx.derivation), "illr")
    assert seq.hyps == () and seq.concl == embed_star(fx.concl)


def test_translate_projection():
    fx = next(f for f in il_theorems() if f.name == "and_proj1")
    assert fx.hyps == (And(fx.concl, fx.hyps[0].right),)
    seq = check_derivation(translate_proof(fx.derivation), "illr")
    assert seq == Sequent((Bang(embed_star(fx.hyps[0])),), embed_star(fx.concl))


def test_ac_rendering():
    s = Atom("S", (y, z))
    f = principle_formula(PrincipleInstance("AC_l", a=Forall(z, s), xs=(x,), ys=(y,)))
    fn = Var("f", Arrow(I, I))
    want = Lolli(Forall(x, Exists(y, Forall(z, s))),
                 Exists(fn, Forall(x, Forall(z, Atom("S", (App(fn, x), z))))))
    assert alpha_equal(f, want)


def test_p_exists_rendering():
    f = principle_formula(PrincipleInstance("P_exists", a=R(x), ys=(x,)))
    assert f == Lolli(Bang(Exists(x, R(x))), Exists(x, Bang(R(x))))


def test_p_plus_rendering():
    f = principle_formula(PrincipleInstance("P_plus", a=P, b=Q))
    assert f == Lolli(Bang(Plus(P, Q)), Plus(Bang(P), Bang(Q)))


def test_ep_without_x_tuple():
    a, b = P, R(y)
    f = principle_formula(PrincipleInstance("EP", a=a, b=b, ys=(y,)))
    assert f == Lolli(Forall(y, Tensor(a, b)), Tensor(a, Forall(y, b)))


@pytest.mark.parametrize("p", [
    PrincipleInstance("AC_l", a=Exists(z, R(z)), xs=(x,), ys=(y,)),
    PrincipleInstance("MP_l", a=Forall(x, R(x)), b=Q),
    PrincipleInstance("MP_l", a=R(x), b=R(x), xs=(x,)),
    PrincipleInstance("IP_l", a=R(y), b=R(y), ys=(y,)),
    PrincipleInstance("EP", a=Plus(P, Q), b=Q),
])
def test_slot_classes(p):
    with pytest.raises(SlotClassViolation):
        check_slots(p)
