"""The functional interpretation of linear formulas.

``interpret(A, m)`` returns witnesses x, challenges y and a matrix |A|^x_y.
The exponential is handled by a pluggable modality: !A is read as
``! ubq(y', a, |A|^x_{y'})`` where the bound a ranges over ``bound_types`` of
A's challenge types.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ModalityRequired, SystemViolation
from .subst import FreshSupply, all_names, substitute
from .syntax import (
    B, INHABITANT, TRUE, And, App, Arrow, Atom, Bang, Base, BoolEq, BoolT, Bot, DecCases,
    Exists, FinSet, Forall, Implies, Lam, Lolli, Member, Or, Plus, Tensor, Var, With,
    Zero, apply, arrows, comp_const, diamond, exists_many, forall_many, join_const, lam,
    single_const, type_of,
)


@dataclass(frozen=True)
class InterpretedFormula:
    witnesses: tuple
    challenges: tuple
    matrix: object
    source: object = None
    inner: "InterpretedFormula | None" = field(default=None, compare=False)

    @property
    def witness_types(self):
        return tuple(v.type for v in self.witnesses)

    @property
    def challenge_types(self):
        return tuple(v.type for v in self.challenges)

    def at(self, witnesses=None, challenges=None):
        """The matrix with the given term tuples put in place of the variables."""
        sub = {}
        if witnesses is not None:
            sub.update(zip(self.witnesses, witnesses))
        if challenges is not None:
            sub.update(zip(self.challenges, challenges))
        return substitute(self.matrix, sub)


def canonical_term(ty):
    """A fixed closed inhabitant of ``ty``."""
    match ty:
        case Base():
            return INHABITANT
        case BoolT():
            return TRUE
        case Arrow(dom, cod):
            return Lam(Var("_", dom), canonical_term(cod))
        case FinSet(elem):
            return App(single_const(elem), canonical_term(elem))
    raise TypeError(f"not a type: {ty!r}")


# ---------------------------------------------------------------------------
# Modalities

class Modality:
    name = ""
    aliases = ()
    # whether !A gets new bound variables or reuses A's challenges
    fresh_bounds = True

    def bound_types(self, types):
        raise NotImplementedError

    def ubq(self, ys, bounds, matrix):
        raise NotImplementedError

    def single(self, terms):
        raise NotImplementedError

    def join(self, left, right, ys, matrix):
        raise NotImplementedError

    def comp(self, ys, bounds, bodies):
        """Bounds for the context of !R: ``comp(lambda ys. bodies, bounds)``."""
        raise NotImplementedError

    def bang(self, inner, supply):
        bound = supply.vars("a", self.bound_types(inner.challenge_types)) \
            if self.fresh_bounds else inner.challenges
        return bound, Bang(self.ubq(inner.challenges, bound, inner.matrix))

    def __repr__(self):
        return f"<modality {self.name}>"


class ModifiedRealizability(Modality):
    name = "mr"
    aliases = ("modified-realizability",)

    def bound_types(self, types):
        return ()

    def ubq(self, ys, bounds, matrix):
        return forall_many(ys, matrix)

    def single(self, terms):
        return ()

    def join(self, left, right, ys, matrix):
        return ()

    def comp(self, ys, bounds, bodies):
        return ()


class DillerNahm(Modality):
    name = "dn"
    aliases = ("diller-nahm",)

    def bound_types(self, types):
        return tuple(FinSet(t) for t in types)

    def ubq(self, ys, bounds, matrix):
        if not ys:
            return matrix
        guard = None
        for y, a in zip(ys, bounds):
            mem = Bang(Member(y, a))
            guard = mem if guard is None else Tensor(guard, mem)
        return forall_many(ys, Lolli(guard, matrix))

    def single(self, terms):
        return tuple(App(single_const(type_of(t)), t) for t in terms)

    def join(self, left, right, ys, matrix):
        return tuple(apply(join_const(y.type), l, r) for y, l, r in zip(ys, left, right))

    def comp(self, ys, bounds, bodies):
        if not ys:
            return tuple(bodies)
        doms = [y.type for y in ys]
        out = []
        for body in bodies:
            elem = type_of(body).elem
            out.append(apply(comp_const(doms, elem), *bounds, lam(ys, body)))
        return tuple(out)


class Dialectica(Modality):
    name = "dia"
    aliases = ("dialectica",)
    fresh_bounds = False

    def bound_types(self, types):
        return tuple(types)

    def ubq(self, ys, bounds, matrix):
        return substitute(matrix, dict(zip(ys, bounds)))

    def single(self, terms):
        return tuple(terms)

    def join(self, left, right, ys, matrix):
        test = substitute(matrix, dict(zip(ys, left)))
        return tuple(DecCases(test, l, r) for l, r in zip(left, right))

    def comp(self, ys, bounds, bodies):
        sub = dict(zip(ys, bounds))
        return tuple(substitute(b, sub) for b in bodies)


MODALITIES = {m.name: m for m in (ModifiedRealizability(), DillerNahm(), Dialectica())}


def modality(name):
    if isinstance(name, Modality):
        return name
    key = str(name).lower()
    for m in MODALITIES.values():
        if key == m.name or key in m.aliases:
            return m
    raise ValueError(f"unknown modality {name!r}")


def modality_mr():
    return MODALITIES["mr"]


def modality_dn():
    return MODALITIES["dn"]


def modality_dia():
    return MODALITIES["dia"]


# ---------------------------------------------------------------------------
# Clause combinators, shared with extraction

def lolli_if(ia, ib, supply):
    """|A -o B|^{f,g}_{x,w} = |A|^x_{f x w} -o |B|^{g x}_w."""
    xs, ws = ia.witnesses, ib.challenges
    fs = tuple(supply.var("f", arrows([v.type for v in xs + ws], y.type))
               for y in ia.challenges)
    gs = tuple(supply.var("g", arrows([v.type for v in xs], v.type))
               for v in ib.witnesses)
    left = ia.at(challenges=tuple(apply(f, *xs, *ws) for f in fs))
    right = ib.at(witnesses=tuple(apply(g, *xs) for g in gs))
    return InterpretedFormula(fs + gs, xs + ws, Lolli(left, right))


def tensor_if(ia, ib):
    return InterpretedFormula(ia.witnesses + ib.witnesses, ia.challenges + ib.challenges,
                              Tensor(ia.matrix, ib.matrix))


def with_if(ia, ib, supply, simplified=False):
    xs = ia.witnesses + ib.witnesses
    ys = ia.challenges + ib.challenges
    if simplified:
        return InterpretedFormula(xs, ys, With(ia.matrix, ib.matrix))
    z = supply.var("z", B)
    return InterpretedFormula(xs, ys + (z,), diamond(z, ia.matrix, ib.matrix))


def plus_if(ia, ib, supply):
    z = supply.var("z", B)
    return InterpretedFormula(ia.witnesses + ib.witnesses + (z,),
                              ia.challenges + ib.challenges,
                              diamond(z, ia.matrix, ib.matrix))


def forall_if(z, ia, supply):
    """``ia`` interprets the body with the bound variable already renamed to ``z``."""
    fs = tuple(supply.var("f", Arrow(z.type, x.type)) for x in ia.witnesses)
    body = ia.at(witnesses=tuple(App(f, z) for f in fs))
    return InterpretedFormula(fs, ia.challenges + (z,), body)


def exists_if(z, ia):
    return InterpretedFormula(ia.witnesses + (z,), ia.challenges, ia.matrix)


def bang_if(ia, m, supply):
    bound, matrix = m.bang(ia, supply)
    return InterpretedFormula(ia.witnesses, tuple(bound), matrix, inner=ia)


# ---------------------------------------------------------------------------

def default_supply(*nodes):
    avoid = set()
    for n in nodes:
        avoid |= all_names(n)
    return FreshSupply(avoid)


IL_ONLY = (And, Or, Implies, Bot)


def interpret(a, m=None, simplified_with=False, supply=None):
    """|A|^x_y; ``m`` is required when A contains a bang."""
    if supply is None:
        supply = default_supply(a)
    m = modality(m) if m is not None else None
    out = _interpret(a, m, simplified_with, supply)
    return InterpretedFormula(out.witnesses, out.challenges, out.matrix, a, out.inner)


def _interpret(a, m, simplified, supply):
    match a:
        case Atom() | Zero() | BoolEq() | Member():
            return InterpretedFormula((), (), a)
        case Lolli(l, r):
            return lolli_if(_interpret(l, m, simplified, supply),
                            _interpret(r, m, simplified, supply), supply)
        case Tensor(l, r):
            return tensor_if(_interpret(l, m, simplified, supply),
                             _interpret(r, m, simplified, supply))
        case With(l, r):
            return with_if(_interpret(l, m, simplified, supply),
                           _interpret(r, m, simplified, supply), supply, simplified)
        case Plus(l, r):
            return plus_if(_interpret(l, m, simplified, supply),
                           _interpret(r, m, simplified, supply), supply)
        case Forall(v, body) | Exists(v, body):
            z = supply.var(v.name.split("_")[0].rstrip("'") or "z", v.type)
            inner = _interpret(substitute(body, {v: z}), m, simplified, supply)
            return forall_if(z, inner, supply) if isinstance(a, Forall) else exists_if(z, inner)
        case Bang(body):
            if m is None:
                raise ModalityRequired("interpreting ! needs a modality")
            return bang_if(_interpret(body, m, simplified, supply), m, supply)
        case _ if isinstance(a, IL_ONLY):
            raise SystemViolation((), f"{type(a).__name__} is not a linear connective")
    raise TypeError(f"not a formula: {a!r}")


def characterization_formula(a, m=None):
    """``exists x forall y |A|^x_y``, empty prefixes dropped."""
    i = interpret(a, m)
    return exists_many(i.witnesses, forall_many(i.challenges, i.matrix))


# ---------------------------------------------------------------------------
# The three conditions on the bounded quantifier

def condition_formulas(m, matrix, ys, x_types=(Base(),), supply=None):
    """(A1, A2, A3) for the matrix A[ys]; A3 ranges over an extra tuple of
    ``x_types``."""
    m = modality(m)
    if supply is None:
        supply = default_supply(matrix, *ys)
    bt = m.bound_types([y.type for y in ys])
    zs = supply.vars("z", [y.type for y in ys])
    a1 = Lolli(Bang(m.ubq(ys, m.single(zs), matrix)), substitute(matrix, dict(zip(ys, zs))))

    y1 = supply.vars("a", bt)
    y2 = supply.vars("a", bt)
    a2 = Lolli(Bang(m.ubq(ys, m.join(y1, y2, ys, matrix), matrix)),
               Tensor(Bang(m.ubq(ys, y1, matrix)), Bang(m.ubq(ys, y2, matrix))))

    xs = supply.vars("x", x_types)
    xbt = m.bound_types(x_types)
    zb = supply.vars("b", xbt)
    fs = supply.vars("f", [arrows(x_types, t) for t in bt])
    fx = tuple(apply(f, *xs) for f in fs)
    composed = m.comp(xs, zb, fx)
    a3 = Lolli(Bang(m.ubq(ys, composed, matrix)),
               Bang(m.ubq(xs, zb, Bang(m.ubq(ys, fx, matrix)))))
    return a1, a2, a3


def trivial_mr_conditions(matrix, ys, zs, xs):
    """The literal shapes the three conditions take under mr."""
    all_y = forall_many(ys, matrix)
    return (Lolli(Bang(all_y), substitute(matrix, dict(zip(ys, zs)))),
            Lolli(Bang(all_y), Tensor(Bang(all_y), Bang(all_y))),
            Lolli(Bang(all_y), Bang(forall_many(xs, Bang(all_y)))))


__all__ = [
    "InterpretedFormula", "Modality", "MODALITIES", "modality", "modality_mr",
    "modality_dn", "modality_dia", "interpret", "characterization_formula",
    "condition_formulas", "trivial_mr_conditions", "canonical_term", "lolli_if",
    "tensor_if", "with_if", "plus_if", "forall_if", "exists_if", "bang_if",
    "default_supply",
]
