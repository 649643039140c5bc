"""Modified realizability, Dialectica and Diller-Nahm over intuitionistic
formulas, and the checks relating them to the linear interpretation."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .embeddings import embed_circle, embed_simplified
from .interpretation import default_supply, interpret
from .models import semantic_equiv
from .reduction import normalize_formula
from .subst import alpha_equal, substitute
from .syntax import (
    B, FALSE, TRUE, And, App, Arrow, Atom, BoolEq, Bot, Exists, FinSet, Forall, Implies,
    Member, Or, apply, arrows, forall_many,
)


@dataclass(frozen=True)
class ILInterpreted:
    witnesses: tuple
    challenges: tuple
    matrix: object
    source: object = None

    def at(self, witnesses=None, challenges=None):
        sub = {}
        if witnesses is not None:
            sub.update(zip(self.witnesses, witnesses))
        if challenges is not None:
            sub.update(zip(self.challenges, challenges))
        return substitute(self.matrix, sub)


def _flagged(z, a, b):
    return And(Implies(BoolEq(z, TRUE), a), Implies(BoolEq(z, FALSE), b))


def _rename_binder(v, supply):
    return supply.var(v.name.split("_")[0].rstrip("'") or "z", v.type)


def bounded_forall(ys, bounds, body):
    """``forall y1 in a1 ... forall yn in an. body``."""
    for y, a in reversed(list(zip(ys, bounds))):
        body = Forall(y, Implies(Member(y, a), body))
    return body


# ---------------------------------------------------------------------------
# Modified realizability: x mr A, no challenges

def mr_interpret(a, supply=None):
    if supply is None:
        supply = default_supply(a)
    xs, m = _mr(a, supply)
    return ILInterpreted(xs, (), m, a)


def _mr(a, supply):
    match a:
        case Atom() | Bot() | BoolEq() | Member():
            return (), a
        case And(l, r):
            xs, ma = _mr(l, supply)
            vs, mb = _mr(r, supply)
            return xs + vs, And(ma, mb)
        case Or(l, r):
            xs, ma = _mr(l, supply)
            vs, mb = _mr(r, supply)
            z = supply.var("z", B)
            return xs + vs + (z,), _flagged(z, ma, mb)
        case Implies(l, r):
            xs, ma = _mr(l, supply)
            vs, mb = _mr(r, supply)
            gs = tuple(supply.var("g", arrows([x.type for x in xs], v.type)) for v in vs)
            mb = substitute(mb, {v: apply(g, *xs) for v, g in zip(vs, gs)})
            return gs, forall_many(xs, Implies(ma, mb))
        case Forall(v, body):
            z = _rename_binder(v, supply)
            xs, m = _mr(substitute(body, {v: z}), supply)
            fs = tuple(supply.var("f", Arrow(z.type, x.type)) for x in xs)
            m = substitute(m, {x: App(f, z) for x, f in zip(xs, fs)})
            return fs, Forall(z, m)
        case Exists(v, body):
            z = _rename_binder(v, supply)
            xs, m = _mr(substitute(body, {v: z}), supply)
            return xs + (z,), m
    raise TypeError(f"not an intuitionistic formula: {a!r}")


# ---------------------------------------------------------------------------
# Dialectica and Diller-Nahm share every clause except implication

def dialectica_interpret(a, supply=None):
    return _functional(a, supply, sets=False)


def diller_nahm_interpret(a, supply=None):
    return _functional(a, supply, sets=True)


def _functional(a, supply, sets):
    if supply is None:
        supply = default_supply(a)
    xs, ys, m = _fi(a, supply, sets)
    return ILInterpreted(xs, ys, m, a)


def _fi(a, supply, sets):
    match a:
        case Atom() | Bot() | BoolEq() | Member():
            return (), (), a
        case And(l, r):
            xs, ys, ma = _fi(l, supply, sets)
            vs, ws, mb = _fi(r, supply, sets)
            return xs + vs, ys + ws, And(ma, mb)
        case Or(l, r):
            xs, ys, ma = _fi(l, supply, sets)
            vs, ws, mb = _fi(r, supply, sets)
            z = supply.var("z", B)
            return xs + vs + (z,), ys + ws, _flagged(z, ma, mb)
        case Implies(l, r):
            xs, ys, ma = _fi(l, supply, sets)
            vs, ws, mb = _fi(r, supply, sets)
            args = [v.type for v in xs + ws]
            fs = tuple(supply.var("f", arrows(args, FinSet(y.type) if sets else y.type))
                       for y in ys)
            gs = tuple(supply.var("g", arrows([x.type for x in xs], v.type)) for v in vs)
            counter = tuple(apply(f, *xs, *ws) for f in fs)
            if sets:
                left = bounded_forall(ys, counter, ma)
            else:
                left = substitute(ma, dict(zip(ys, counter)))
            right = substitute(mb, {v: apply(g, *xs) for v, g in zip(vs, gs)})
            return fs + gs, xs + ws, Implies(left, right)
        case Forall(v, body):
            z = _rename_binder(v, supply)
            xs, ys, m = _fi(substitute(body, {v: z}), supply, sets)
            fs = tuple(supply.var("f", Arrow(z.type, x.type)) for x in xs)
            m = substitute(m, {x: App(f, z) for x, f in zip(xs, fs)})
            return fs, ys + (z,), m
        case Exists(v, body):
            z = _rename_binder(v, supply)
            xs, ys, m = _fi(substitute(body, {v: z}), supply, sets)
            return xs + (z,), ys, m
    raise TypeError(f"not an intuitionistic formula: {a!r}")


# ---------------------------------------------------------------------------
# Correspondence

class Verdict(enum.Enum):
    STRUCTURAL = "StructuralEqual"
    SEMANTIC = "SemanticEqual"
    MISMATCH = "Mismatch"

    def __str__(self):
        return self.value


STANDARD = {"mr": mr_interpret, "dia": dialectica_interpret, "dn": diller_nahm_interpret}


def correspondence_sides(which, a):
    """The linear interpretation of the embedded formula and the embedded
    standard interpretation, as two (witnesses, challenges, matrix) triples."""
    if which == "mr":
        lin = interpret(embed_circle(a), "mr", simplified_with=True)
        std = mr_interpret(a)
        return lin, ILInterpreted(std.witnesses, (), embed_circle(std.matrix), a)
    if which not in STANDARD:
        raise ValueError(f"unknown interpretation {which!r}")
    lin = interpret(embed_simplified(a), which, simplified_with=True)
    std = STANDARD[which](a)
    return lin, ILInterpreted(std.witnesses, std.challenges, embed_simplified(std.matrix), a)


def _aligned(lin, std):
    """``std``'s matrix with its tuples renamed onto ``lin``'s, or None when
    the tuple shapes differ."""
    if lin.witness_types != tuple(v.type for v in std.witnesses):
        return None
    if lin.challenge_types != tuple(v.type for v in std.challenges):
        return None
    return std.at(witnesses=lin.witnesses, challenges=lin.challenges)


def correspondence_check(which, a, size_bound=2, cap=None):
    lin, std = correspondence_sides(which, a)
    right = _aligned(lin, std)
    if right is None:
        return Verdict.MISMATCH
    left = normalize_formula(lin.matrix)
    right = normalize_formula(right)
    if alpha_equal(left, right):
        return Verdict.STRUCTURAL
    if semantic_equiv(left, right, size_bound, cap=cap):
        return Verdict.SEMANTIC
    return Verdict.MISMATCH


def circlebang_empty_challenges(a):
    return interpret(embed_circle(a), "mr", simplified_with=True).challenges == ()
