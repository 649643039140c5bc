"""Typechecking, normalization and bracket abstraction for witness terms."""
from __future__ import annotations

from functools import lru_cache

from .errors import TypeMismatch, UnboundVariable
from .subst import free_vars, substitute
from .syntax import (
    BINARY, FALSE, TRUE, App, Arrow, Atom, B, Bang, BoolEq, Bot, Cond, Const, DecCases,
    Exists, FinSet, Forall, Lam, Member, Var, Zero, apply, arrows, cond_const,
    pi_const, sigma_const, spine, type_of, uncurry,
)


def _check_const(c):
    ty = c.type
    name = c.name
    ok = True
    match name:
        case "T" | "F":
            ok = ty == B
        case "Pi":
            ok = isinstance(ty, Arrow) and isinstance(ty.cod, Arrow) and ty.cod.cod == ty.dom
        case "Sigma":
            doms, _ = uncurry(ty)
            ok = len(doms) >= 3 and isinstance(doms[1], Arrow)
            if ok:
                r, s = doms[2], doms[1].cod
                ok = sigma_const(r, s, ty.cod.cod.cod) == c
        case "cond":
            doms, res = uncurry(ty)
            ok = len(doms) >= 3 and doms[0] == B and doms[1] == doms[2] and cond_const(doms[1]) == c
        case "single":
            ok = isinstance(ty, Arrow) and ty.cod == FinSet(ty.dom)
        case "join":
            ok = (isinstance(ty, Arrow) and isinstance(ty.dom, FinSet)
                  and ty.cod == Arrow(ty.dom, ty.dom))
        case "comp":
            doms, res = uncurry(ty)
            ok = bool(doms) and isinstance(res, FinSet)
            if ok:
                func = doms[-1]
                sets = doms[:-1]
                ok = all(isinstance(s, FinSet) for s in sets) and func == arrows(
                    [s.elem for s in sets], res)
    if not ok:
        raise TypeMismatch(f"well-formed type for constant {name}", ty, name)


def typecheck_term(t, ctx=None):
    """Return the type of ``t``; every free variable must be bound in ``ctx``
    (a mapping from variable, or variable name, to type) when one is given."""
    match t:
        case Var(name, ty):
            if ctx is not None:
                found = ctx.get(t, ctx.get(name))
                if found is None:
                    raise UnboundVariable(t)
                if found != ty:
                    raise TypeMismatch(found, ty, f"variable {name}")
            return ty
        case Const():
            _check_const(t)
            return t.type
        case App(f, a):
            fty = typecheck_term(f, ctx)
            aty = typecheck_term(a, ctx)
            if not isinstance(fty, Arrow):
                raise TypeMismatch("function type", fty, "application head")
            if fty.dom != aty:
                raise TypeMismatch(fty.dom, aty, "application argument")
            return fty.cod
        case Lam(v, body):
            inner = None if ctx is None else {**ctx, v: v.type, v.name: v.type}
            return Arrow(v.type, typecheck_term(body, inner))
        case Cond(z, a, b):
            zt = typecheck_term(z, ctx)
            if zt != B:
                raise TypeMismatch(B, zt, "conditional scrutinee")
            at, bt = typecheck_term(a, ctx), typecheck_term(b, ctx)
            if at != bt:
                raise TypeMismatch(at, bt, "conditional branches")
            return at
        case DecCases(m, a, b):
            typecheck_formula(m, ctx)
            at, bt = typecheck_term(a, ctx), typecheck_term(b, ctx)
            if at != bt:
                raise TypeMismatch(at, bt, "case branches")
            return at
    raise TypeError(f"not a term: {t!r}")


def typecheck_formula(f, ctx=None):
    match f:
        case Atom(_, args):
            for a in args:
                typecheck_term(a, ctx)
        case Zero() | Bot():
            pass
        case BoolEq(l, r):
            for side in (l, r):
                ty = typecheck_term(side, ctx)
                if ty != B:
                    raise TypeMismatch(B, ty, "boolean equality")
        case Member(e, s):
            et, st = typecheck_term(e, ctx), typecheck_term(s, ctx)
            if st != FinSet(et):
                raise TypeMismatch(FinSet(et), st, "membership")
        case Bang(body):
            typecheck_formula(body, ctx)
        case Forall(v, body) | Exists(v, body):
            inner = None if ctx is None else {**ctx, v: v.type, v.name: v.type}
            typecheck_formula(body, inner)
        case _ if isinstance(f, BINARY):
            typecheck_formula(f.left, ctx)
            typecheck_formula(f.right, ctx)
        case _:
            raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Normalization

@lru_cache(maxsize=100_000)
def normalize(t):
    """Full normal form under beta, Pi/Sigma, and the boolean conditional.

    DecCases nodes are left in place (only their parts are normalized).
    """
    match t:
        case Var() | Const():
            return t
        case Lam(v, body):
            return Lam(v, normalize(body))
        case Cond(z, a, b):
            z = normalize(z)
            if z == TRUE:
                return normalize(a)
            if z == FALSE:
                return normalize(b)
            return Cond(z, normalize(a), normalize(b))
        case DecCases(m, a, b):
            return DecCases(normalize_formula(m), normalize(a), normalize(b))
        case App():
            head, args = spine(t)
            head = normalize(head)
            while True:
                if isinstance(head, App):
                    inner_head, inner_args = spine(head)
                    head, args = inner_head, inner_args + args
                    continue
                if isinstance(head, Lam) and args:
                    head = normalize(substitute(head.body, {head.var: args[0]}, check_types=False))
                    args = args[1:]
                    continue
                if isinstance(head, Const):
                    if head.name == "Pi" and len(args) >= 2:
                        head, args = normalize(args[0]), args[2:]
                        continue
                    if head.name == "Sigma" and len(args) >= 3:
                        x, y, z = args[:3]
                        head = normalize(App(App(x, z), App(y, z)))
                        args = args[3:]
                        continue
                    if head.name == "cond" and len(args) >= 3:
                        test = normalize(args[0])
                        if test in (TRUE, FALSE):
                            head = normalize(args[1] if test == TRUE else args[2])
                            args = args[3:]
                            continue
                if isinstance(head, Cond) and args and head.test in (TRUE, FALSE):
                    head = normalize(head)
                    continue
                break
            return apply(head, *[normalize(a) for a in args])
    raise TypeError(f"not a term: {t!r}")


def normalize_formula(f):
    match f:
        case Atom(p, args):
            return Atom(p, tuple(normalize(a) for a in args))
        case Zero() | Bot():
            return f
        case BoolEq(l, r):
            return BoolEq(normalize(l), normalize(r))
        case Member(l, r):
            return Member(normalize(l), normalize(r))
        case Bang(body):
            return Bang(normalize_formula(body))
        case Forall(v, body) | Exists(v, body):
            return type(f)(v, normalize_formula(body))
        case _ if isinstance(f, BINARY):
            return type(f)(normalize_formula(f.left), normalize_formula(f.right))
    raise TypeError(f"not a formula: {f!r}")


def normalize_any(x):
    from .syntax import is_term
    return normalize(x) if is_term(x) else normalize_formula(x)


# ---------------------------------------------------------------------------
# Bracket abstraction

def _identity(ty):
    return App(App(sigma_const(ty, Arrow(ty, ty), ty), pi_const(ty, Arrow(ty, ty))),
               pi_const(ty, ty))


def bracket_abstract(x, t):
    """Lam-free combinator term ``u`` with ``u s`` convertible to ``t[x:=s]``."""
    if x not in free_vars(t):
        return App(pi_const(type_of(t), x.type), t)
    match t:
        case Var():
            return _identity(x.type)
        case App(f, a):
            fty = type_of(f)
            uf = bracket_abstract(x, f)
            ua = bracket_abstract(x, a)
            return App(App(sigma_const(x.type, fty.dom, fty.cod), uf), ua)
        case Cond(z, a, b):
            return bracket_abstract(x, apply(cond_const(type_of(a)), z, a, b))
        case Lam():
            raise ValueError("bracket_abstract expects a Lam-free term")
        case DecCases():
            raise ValueError("cannot abstract over a variable inside a case split")
    raise TypeError(f"not a term: {t!r}")


def eliminate_lambdas(t):
    """Replace every Lam by its bracket abstraction, innermost first."""
    match t:
        case Lam(v, body):
            return bracket_abstract(v, eliminate_lambdas(body))
        case App(f, a):
            return App(eliminate_lambdas(f), eliminate_lambdas(a))
        case Cond(z, a, b):
            return Cond(eliminate_lambdas(z), eliminate_lambdas(a), eliminate_lambdas(b))
        case _:
            return t
