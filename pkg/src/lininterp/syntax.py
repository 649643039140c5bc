"""Finite types, terms and formulas.

All nodes are frozen dataclasses.  Variables carry their type, so a term's
type can be synthesized without an external context.  Term tuples (the
boldface tuples of witnesses and challenges) are plain Python tuples of
terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import TypeMismatch


# ---------------------------------------------------------------------------
# Finite types

@dataclass(frozen=True)
class Base:
    def __str__(self):
        return "i"


@dataclass(frozen=True)
class BoolT:
    def __str__(self):
        return "b"


@dataclass(frozen=True)
class Arrow:
    dom: "FiniteType"
    cod: "FiniteType"

    def __str__(self):
        return f"(-> {self.dom} {self.cod})"


@dataclass(frozen=True)
class FinSet:
    elem: "FiniteType"

    def __str__(self):
        return f"(set {self.elem})"


FiniteType = Union[Base, BoolT, Arrow, FinSet]

I = Base()
B = BoolT()


def arrows(doms, cod):
    """Curried type ``d1 -> d2 -> ... -> cod``."""
    for d in reversed(tuple(doms)):
        cod = Arrow(d, cod)
    return cod


def uncurry(ty):
    doms = []
    while isinstance(ty, Arrow):
        doms.append(ty.dom)
        ty = ty.cod
    return tuple(doms), ty


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str
    type: FiniteType

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str
    type: FiniteType

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    var: Var
    body: "Term"


@dataclass(frozen=True)
class Cond:
    """The conditional ``z(t, q)``: ``then`` when ``test`` is T, else ``orelse``."""
    test: "Term"
    then: "Term"
    orelse: "Term"


@dataclass(frozen=True)
class DecCases:
    """Definition by cases over a quantifier-free formula.

    Evaluates to ``if_false`` when ``matrix`` fails and to ``if_true`` when it
    holds.
    """
    matrix: "Formula"
    if_false: "Term"
    if_true: "Term"


Term = Union[Var, Const, App, Lam, Cond, DecCases]

TRUE = Const("T", B)
FALSE = Const("F", B)
INHABITANT = Const("o", I)


def pi_const(s, t):
    return Const("Pi", Arrow(s, Arrow(t, s)))


def sigma_const(r, s, t):
    return Const("Sigma", arrows([arrows([r, s], t), Arrow(r, s), r], t))


def cond_const(ty):
    return Const("cond", arrows([B, ty, ty], ty))


def single_const(elem):
    return Const("single", Arrow(elem, FinSet(elem)))


def join_const(elem):
    s = FinSet(elem)
    return Const("join", arrows([s, s], s))


def comp_const(doms, result_elem):
    """``comp : t1* -> ... -> tm* -> (t1 -> ... -> tm -> r*) -> r*``."""
    out = FinSet(result_elem)
    return Const("comp", arrows([FinSet(d) for d in doms] + [arrows(doms, out)], out))


def apply(fun, *args):
    for a in args:
        fun = App(fun, a)
    return fun


def lam(vars, body):
    for v in reversed(tuple(vars)):
        body = Lam(v, body)
    return body


def spine(t):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return t, args[::-1]


def type_of(t) -> FiniteType:
    """Synthesize the type of ``t`` (raises TypeMismatch when ill-typed)."""
    match t:
        case Var(_, ty) | Const(_, ty):
            return ty
        case App(f, a):
            fty = type_of(f)
            aty = type_of(a)
            if not isinstance(fty, Arrow):
                raise TypeMismatch("function type", fty, "application head")
            if fty.dom != aty:
                raise TypeMismatch(fty.dom, aty, "application argument")
            return fty.cod
        case Lam(v, body):
            return Arrow(v.type, type_of(body))
        case Cond(z, a, b):
            zt = type_of(z)
            if zt != B:
                raise TypeMismatch(B, zt, "conditional scrutinee")
            at, bt = type_of(a), type_of(b)
            if at != bt:
                raise TypeMismatch(at, bt, "conditional branches")
            return at
        case DecCases(_, a, b):
            at, bt = type_of(a), type_of(b)
            if at != bt:
                raise TypeMismatch(at, bt, "case branches")
            return at
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class With:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Plus:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Lolli:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Bang:
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class BoolEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Member:
    elem: Term
    set: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Zero, Bot, Tensor, With, Plus, Lolli, Bang, Forall, Exists,
                BoolEq, Member, And, Or, Implies]

BINARY = (Tensor, With, Plus, Lolli, And, Or, Implies)
BINDERS = (Forall, Exists)
ZERO = Zero()
BOT = Bot()


def diamond(z, a, b):
    """The abbreviation (!(z=T) -o a) & (!(z=F) -o b), always expanded."""
    return With(Lolli(Bang(BoolEq(z, TRUE)), a), Lolli(Bang(BoolEq(z, FALSE)), b))


def iff(a, b):
    return With(Lolli(a, b), Lolli(b, a))


def forall_many(vars, body):
    for v in reversed(tuple(vars)):
        body = Forall(v, body)
    return body


def exists_many(vars, body):
    for v in reversed(tuple(vars)):
        body = Exists(v, body)
    return body


def is_formula(x):
    return isinstance(x, (Atom, Zero, Bot, BoolEq, Member, Bang) + BINARY + BINDERS)


def is_term(x):
    return isinstance(x, (Var, Const, App, Lam, Cond, DecCases))


def check_formula_terms(f):
    """Typecheck every term inside ``f``; BoolEq needs boolean sides and Member
    an element/set pair."""
    match f:
        case Atom(_, args):
            for a in args:
                type_of(a)
        case BoolEq(l, r):
            for side in (l, r):
                ty = type_of(side)
                if ty != B:
                    raise TypeMismatch(B, ty, "boolean equality")
        case Member(e, s):
            et, st = type_of(e), type_of(s)
            if st != FinSet(et):
                raise TypeMismatch(FinSet(et), st, "membership")
        case Bang(body) | Forall(_, body) | Exists(_, body):
            check_formula_terms(body)
        case _ if isinstance(f, BINARY):
            check_formula_terms(f.left)
            check_formula_terms(f.right)


def subformulas(f):
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Bang,) + BINDERS):
        yield from subformulas(f.body)


def is_quantifier_free(f):
    return not any(isinstance(g, BINDERS) for g in subformulas(f))


def formula_depth(f):
    if isinstance(f, BINARY):
        return 1 + max(formula_depth(f.left), formula_depth(f.right))
    if isinstance(f, (Bang,) + BINDERS):
        return 1 + formula_depth(f.body)
    return 1


def atoms_of(f):
    """Map predicate name -> tuple of argument types, over all atoms in ``f``."""
    sig = {}

    def visit_term(t):
        match t:
            case App(g, a):
                visit_term(g)
                visit_term(a)
            case Lam(_, body):
                visit_term(body)
            case Cond(z, a, b):
                visit_term(z)
                visit_term(a)
                visit_term(b)
            case DecCases(m, a, b):
                visit(m)
                visit_term(a)
                visit_term(b)

    def visit(g):
        for h in subformulas(g):
            match h:
                case Atom(p, args):
                    sig[p] = tuple(type_of(a) for a in args)
                    for a in args:
                        visit_term(a)
                case BoolEq(l, r) | Member(l, r):
                    visit_term(l)
                    visit_term(r)

    visit(f)
    return sig
