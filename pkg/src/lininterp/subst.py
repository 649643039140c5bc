"""Free variables, capture-avoiding substitution, alpha-equivalence and the
deterministic fresh-name supply."""
from __future__ import annotations

from functools import lru_cache

from .errors import TypeMismatch
from .syntax import (
    BINARY, App, Atom, Bang, BoolEq, Bot, Cond, Const, DecCases, Exists, Forall, Lam,
    Member, Var, Zero, type_of,
)


@lru_cache(maxsize=200_000)
def free_vars(node) -> frozenset:
    match node:
        case Var():
            return frozenset((node,))
        case Const() | Zero() | Bot():
            return frozenset()
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Lam(v, body) | Forall(v, body) | Exists(v, body):
            return free_vars(body) - {v}
        case Cond(z, a, b):
            return free_vars(z) | free_vars(a) | free_vars(b)
        case DecCases(m, a, b):
            return free_vars(m) | free_vars(a) | free_vars(b)
        case Atom(_, args):
            out = frozenset()
            for a in args:
                out |= free_vars(a)
            return out
        case BoolEq(l, r) | Member(l, r):
            return free_vars(l) | free_vars(r)
        case Bang(body):
            return free_vars(body)
        case _ if isinstance(node, BINARY):
            return free_vars(node.left) | free_vars(node.right)
    raise TypeError(f"not a term or formula: {node!r}")


def free_vars_all(nodes) -> frozenset:
    out = frozenset()
    for n in nodes:
        out |= free_vars(n)
    return out


def all_names(node) -> set:
    """Every variable name occurring in ``node``, bound or free."""
    names = set()

    def visit(n):
        match n:
            case Var(name, _):
                names.add(name)
            case App(f, a):
                visit(f)
                visit(a)
            case Lam(v, body) | Forall(v, body) | Exists(v, body):
                names.add(v.name)
                visit(body)
            case Cond(z, a, b) | DecCases(z, a, b):
                visit(z)
                visit(a)
                visit(b)
            case Atom(_, args):
                for a in args:
                    visit(a)
            case BoolEq(l, r) | Member(l, r):
                visit(l)
                visit(r)
            case Bang(body):
                visit(body)
            case _ if isinstance(n, BINARY):
                visit(n.left)
                visit(n.right)

    visit(node)
    return names


class FreshSupply:
    """Deterministic counter-based fresh variables.

    Names have the form ``<prefix>_<n>``; any name in ``avoid`` is skipped.
    """

    def __init__(self, avoid=(), start=0):
        self.avoid = set(avoid)
        self.counter = start

    def var(self, prefix, ty):
        while True:
            self.counter += 1
            name = f"{prefix}_{self.counter}"
            if name not in self.avoid:
                self.avoid.add(name)
                return Var(name, ty)

    def vars(self, prefix, types):
        return tuple(self.var(prefix, t) for t in types)


def _prime(v, taken):
    name = v.name + "'"
    while name in taken:
        name += "'"
    return Var(name, v.type)


def substitute(node, subst, check_types=True):
    """Simultaneous capture-avoiding substitution ``node[subst]``."""
    subst = {v: t for v, t in subst.items() if v != t}
    if not subst:
        return node
    if check_types:
        for v, t in subst.items():
            ty = type_of(t)
            if ty != v.type:
                raise TypeMismatch(v.type, ty, f"substitution for {v.name}")
    return _subst(node, subst)


def _subst(node, subst):
    match node:
        case Var():
            return subst.get(node, node)
        case Const() | Zero() | Bot():
            return node
        case App(f, a):
            return App(_subst(f, subst), _subst(a, subst))
        case Cond(z, a, b):
            return Cond(_subst(z, subst), _subst(a, subst), _subst(b, subst))
        case DecCases(m, a, b):
            return DecCases(_subst(m, subst), _subst(a, subst), _subst(b, subst))
        case Atom(p, args):
            return Atom(p, tuple(_subst(a, subst) for a in args))
        case BoolEq(l, r):
            return BoolEq(_subst(l, subst), _subst(r, subst))
        case Member(l, r):
            return Member(_subst(l, subst), _subst(r, subst))
        case Bang(body):
            return Bang(_subst(body, subst))
        case Lam(v, body) | Forall(v, body) | Exists(v, body):
            inner = {w: t for w, t in subst.items() if w != v}
            fv_body = free_vars(body)
            inner = {w: t for w, t in inner.items() if w in fv_body}
            if not inner:
                return node
            incoming = free_vars_all(inner.values())
            if any(w.name == v.name for w in incoming):
                taken = {w.name for w in fv_body | incoming}
                fresh = _prime(v, taken)
                inner = dict(inner)
                inner[v] = fresh
                v = fresh
            return type(node)(v, _subst(body, inner))
        case _ if isinstance(node, BINARY):
            return type(node)(_subst(node.left, subst), _subst(node.right, subst))
    raise TypeError(f"not a term or formula: {node!r}")


def rename(node, pairs):
    """Substitute variables for variables (positional pairs or a dict)."""
    mapping = dict(pairs)
    return substitute(node, mapping)


# ---------------------------------------------------------------------------
# Alpha-equivalence via locally nameless canonical forms

def canonical(node, env=None):
    """Nested tuples in which bound variables are replaced by de Bruijn levels."""
    env = env or {None: 0}
    match node:
        case Var():
            if node in env:
                return ("bv", env[node], node.type)
            return ("fv", node.name, node.type)
        case Const(name, ty):
            return ("c", name, ty)
        case Zero():
            return ("0",)
        case Bot():
            return ("bot",)
        case App(f, a):
            return ("app", canonical(f, env), canonical(a, env))
        case Cond(z, a, b):
            return ("cond", canonical(z, env), canonical(a, env), canonical(b, env))
        case DecCases(m, a, b):
            return ("cases", canonical(m, env), canonical(a, env), canonical(b, env))
        case Atom(p, args):
            return ("atom", p) + tuple(canonical(a, env) for a in args)
        case BoolEq(l, r):
            return ("eqb", canonical(l, env), canonical(r, env))
        case Member(l, r):
            return ("in", canonical(l, env), canonical(r, env))
        case Bang(body):
            return ("!", canonical(body, env))
        case Lam(v, body) | Forall(v, body) | Exists(v, body):
            inner = dict(env)
            inner[v] = env[None]
            inner[None] = env[None] + 1
            return (type(node).__name__, v.type, canonical(body, inner))
        case _ if isinstance(node, BINARY):
            return (type(node).__name__, canonical(node.left, env), canonical(node.right, env))
    raise TypeError(f"not a term or formula: {node!r}")


def alpha_equal(a, b) -> bool:
    return canonical(a) == canonical(b)
