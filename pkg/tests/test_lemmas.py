import pytest

from lininterp.calculus import Sequent, check_derivation, check_proves, node
from lininterp.corpus import P, Q
from lininterp.errors import TypeMismatch
from lininterp.lemmas import build_lemma_useful, expected_sequent
from lininterp.models import valid
from lininterp.syntax import (
    FALSE, TRUE, B, Bang, BoolEq, I, Lolli, Tensor, Var, diamond, iff,
)

w = Var("w", B)
z = Var("z", B)


def _ax1(t):
    return node("axiom", k=1, terms=(t,))


def test_item_i_from_two_axiom_instances():
    a = Bang(BoolEq(w, w))
    d = build_lemma_useful("i", formula=a, var=w, term=z, premises=(_ax1(TRUE), _ax1(FALSE)))
    assert check_derivation(d, "illb") == Sequent((), Bang(BoolEq(z, z)))


def test_item_iv_collapses_diamond():
    d = build_lemma_useful("iv", formula=P, other=Q, flag="T")
    seq = check_derivation(d, "illb")
    assert seq.hyps == ()
    assert seq.concl == iff(diamond(TRUE, P, Q), P)


def test_item_iii_uses_falsity():
    d = build_lemma_useful("iii", formula=P, other=Q)
    seq = check_derivation(d, "illb")
    assert seq.hyps == (P,)
    assert seq.concl == Lolli(Bang(BoolEq(TRUE, FALSE)), Q)


@pytest.mark.parametrize("which, kw", [
    ("ii", dict(formula=P, flag="T")),
    ("ii", dict(formula=P, flag="F")),
    ("iii", dict(formula=P, other=Q)),
    ("iv", dict(formula=P, other=Q, flag="T")),
    ("iv", dict(formula=Tensor(P, Q), other=Q, flag="F")),
    ("v", dict(formula=P, other=Q, term=z)),
])
def test_items_prove_their_schema(which, kw):
    d = build_lemma_useful(which, **kw)
    check_proves(d, "illb", expected_sequent(which, **kw))


def test_bad_slot_type():
    with pytest.raises(TypeMismatch):
        build_lemma_useful("v", formula=P, other=Q, term=Var("x", I))


@pytest.mark.parametrize("which, kw", [
    ("ii", dict(formula=P, flag="T")),
    ("iii", dict(formula=P, other=Q)),
    ("iv", dict(formula=P, other=Q, flag="F")),
    ("v", dict(formula=P, other=Q, term=z)),
])
def test_items_are_classically_valid(which, kw):
    hyps, concl = expected_sequent(which, **kw)
    f = concl
    for h in reversed(hyps):
        f = Lolli(h, f)
    assert valid(f)
