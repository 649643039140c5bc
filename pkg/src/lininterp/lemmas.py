"""Derived facts about booleans and the conditional, built as closed
derivations of the verifying system.

Items:

* ``i``   from ``|- A[T/w]`` and ``|- A[F/w]`` infer ``|- A[z/w]``
* ``ii``  ``!(c=c) -o A |- A`` for ``c`` in T, F
* ``iii`` ``A |- !(T=F) -o B``
* ``iv``  ``<>_c(A, B) -o- A`` (c = T) or ``-o- B`` (c = F)
* ``v``   ``<>_z(!A, !B) -o- !<>_z(!A, !B)``
"""
from .calculus import check_derivation, modus_ponens, node
from .errors import TypeMismatch
from .reduction import typecheck_formula, typecheck_term
from .subst import FreshSupply, all_names, substitute
from .syntax import (
    B, FALSE, TRUE, Bang, BoolEq, Lolli, diamond, iff,
)


def _eq(a, b):
    return Bang(BoolEq(a, b))


def _ax(k, *terms, **kw):
    return node("axiom", k=k, terms=tuple(terms), **kw)


def _flag(c):
    if c in (TRUE, FALSE):
        return c
    if c in ("T", "F"):
        return TRUE if c == "T" else FALSE
    raise TypeMismatch("T or F", c, "lemma flag")


def conditional_elim(a, w, z, d_true, d_false):
    """Item (i): ``|- A[z/w]`` from derivations of ``A[T/w]`` and ``A[F/w]``."""
    branches = []
    for c, d in ((TRUE, d_true), (FALSE, d_false)):
        hyp = _eq(z, c)
        flipped = modus_ponens(node("id", formula=hyp), _ax(2, z, c), _eq(c, z))
        pair = node("tensorR", flipped, d)
        branches.append(modus_ponens(pair, _ax(4, c, z, var=w, formula=a),
                                     substitute(a, {w: z})))
    return node("cut", _ax(6, z), node("plusL", *branches))


def trivial_guard(a, c):
    """Item (ii)."""
    return node("lolliL", _ax(1, c), node("id", formula=a))


def _absurd(a, b, flipped=False):
    """``!(T=F), A |- B`` (or ``!(F=T), A |- B`` when flipped)."""
    bad = _eq(TRUE, FALSE)
    base = node("cut", _ax(5), node("lolliL", node("id", formula=bad),
                                    node("zeroL", context=(a,), formula=b)))
    if not flipped:
        return base
    rev = _eq(FALSE, TRUE)
    return node("cut", modus_ponens(node("id", formula=rev), _ax(2, FALSE, TRUE), bad),
                base, pos=0)


def false_guard(a, b, flipped=False):
    """Item (iii): ``A |- !(T=F) -o B``."""
    return node("lolliR", node("per", _absurd(a, b, flipped), perm=(1, 0)))


def diamond_forward(c, a, b):
    """``<>_c(A, B) |- A`` for c = T and ``|- B`` for c = F."""
    if c == TRUE:
        return node("withL1", trivial_guard(a, TRUE), formula=Lolli(_eq(TRUE, FALSE), b))
    return node("withL2", trivial_guard(b, FALSE), formula=Lolli(_eq(FALSE, TRUE), a))


def diamond_backward(c, a, b):
    """``A |- <>_T(A, B)`` and ``B |- <>_F(A, B)``."""
    if c == TRUE:
        kept, dropped = a, b
    else:
        kept, dropped = b, a
    good = node("lolliR", node("wkn", node("id", formula=kept), formula=_eq(c, c)))
    bad = false_guard(kept, dropped, flipped=(c == FALSE))
    return node("withR", good, bad) if c == TRUE else node("withR", bad, good)


def diamond_collapse(c, a, b):
    """Item (iv)."""
    return node("withR", node("lolliR", diamond_forward(c, a, b)),
                node("lolliR", diamond_backward(c, a, b)))


def banged_diamond(z, a, b):
    """Item (v)."""
    ba, bb = Bang(a), Bang(b)
    avoid = all_names(a) | all_names(b) | all_names(BoolEq(z, z))
    w = FreshSupply(avoid).var("w", B)
    d = diamond(w, ba, bb)
    phi = Lolli(d, Bang(d))
    cases = []
    for c in (TRUE, FALSE):
        fwd = diamond_forward(c, ba, bb)
        back = node("bangR", diamond_backward(c, ba, bb))
        cases.append(node("lolliR", node("cut", fwd, back)))
    there = conditional_elim(phi, w, z, *cases)
    dz = diamond(z, ba, bb)
    back = node("lolliR", node("bangL", node("id", formula=dz)))
    return node("withR", there, back)


def build_lemma_useful(which, *, formula=None, other=None, var=None, term=None,
                       flag=None, premises=()):
    """Closed derivation of one of the derived boolean facts.

    ``formula``/``other`` fill the slots A and B; ``var`` is the bound
    boolean variable w of item (i) and ``term`` the boolean z; ``flag`` picks
    T or F in items (ii) and (iv); item (i) takes its two premises in
    ``premises``.
    """
    for f in (formula, other):
        if f is not None:
            typecheck_formula(f)
    if term is not None and typecheck_term(term) != B:
        raise TypeMismatch(B, typecheck_term(term), "boolean slot")
    if var is not None and var.type != B:
        raise TypeMismatch(B, var.type, "boolean variable slot")
    match which:
        case "i":
            if len(premises) != 2:
                raise ValueError("item (i) needs two premise derivations")
            d = conditional_elim(formula, var, term, *premises)
        case "ii":
            d = trivial_guard(formula, _flag(flag or "T"))
        case "iii":
            d = false_guard(formula, other)
        case "iv":
            d = diamond_collapse(_flag(flag or "T"), formula, other)
        case "v":
            d = banged_diamond(term, formula, other)
        case _:
            raise ValueError(f"no item {which!r}")
    check_derivation(d, "illb")
    return d


def expected_sequent(which, *, formula=None, other=None, var=None, term=None, flag=None):
    """The schema instance each item derives, as (hyps, conclusion)."""
    a, b = formula, other
    match which:
        case "i":
            return (), substitute(a, {var: term})
        case "ii":
            c = _flag(flag or "T")
            return (Lolli(_eq(c, c), a),), a
        case "iii":
            return (a,), Lolli(_eq(TRUE, FALSE), b)
        case "iv":
            c = _flag(flag or "T")
            return (), iff(diamond(c, a, b), a if c == TRUE else b)
        case "v":
            d = diamond(term, Bang(a), Bang(b))
            return (), iff(d, Bang(d))
    raise ValueError(which)

