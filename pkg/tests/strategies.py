"""Hypothesis generators for well-typed terms over a small fixed signature."""
import itertools

from hypothesis import strategies as st

from lininterp.models import FiniteModel, eval_term
from lininterp.subst import free_vars

from lininterp.syntax import (
    FALSE, INHABITANT, TRUE, App, Arrow, B, Cond, I, Lam, Var, apply, pi_const, sigma_const,
)

II = Arrow(I, I)

x = Var("x", I)
y = Var("y", I)
u = Var("u", I)
z = Var("z", B)
f = Var("f", II)
g = Var("g", Arrow(I, II))

LEAVES = {
    I: (x, y, INHABITANT),
    B: (z, TRUE, FALSE),
    II: (f,),
    Arrow(I, II): (g,),
}


def terms(ty, depth=3, bound=()):
    """Terms of type ``ty`` from variables, constants, application,
    conditionals, lambdas and the Pi/Sigma combinators."""
    leaves = st.sampled_from(LEAVES[ty] + (bound if ty == I else ()))
    if depth == 0:
        return leaves
    sub = lambda t: terms(t, depth - 1, bound)
    options = [
        leaves,
        st.builds(Cond, sub(B), sub(ty), sub(ty)),
        st.builds(lambda a, b: apply(pi_const(ty, I), a, b), sub(ty), sub(I)),
    ]
    if ty == I:
        options.append(st.builds(App, sub(II), sub(I)))
        options.append(st.builds(lambda a, b: apply(g, a, b), sub(I), sub(I)))
        options.append(st.builds(lambda w: apply(sigma_const(I, I, I), g, f, w), sub(I)))
    elif ty == II:
        options.append(st.builds(lambda body: Lam(u, body), terms(I, depth - 1, (u,))))
        options.append(st.builds(App, sub(Arrow(I, II)), sub(I)))
    return st.one_of(*options)


def closed_terms(ty, depth=2):
    """Terms without free variables other than those bound by lambdas."""
    leaves = {I: (INHABITANT,), B: (TRUE, FALSE)}
    if depth == 0 or ty not in leaves:
        if ty == II:
            return st.builds(lambda body: Lam(u, body), st.sampled_from((u, INHABITANT)))
        return st.sampled_from(leaves[ty])
    sub = lambda t: closed_terms(t, depth - 1)
    options = [st.sampled_from(leaves[ty]), st.builds(Cond, sub(B), sub(ty), sub(ty))]
    if ty == I:
        options.append(st.builds(App, sub(II), sub(I)))
    return st.one_of(*options)


def same_denotation(a, b, size=2):
    """``a`` and ``b`` (of type i or b) agree under every environment over a
    model of the given size."""
    m = FiniteModel(size)
    vs = sorted(free_vars(a) | free_vars(b), key=lambda v: v.name)
    for vals in itertools.product(*(m.carrier(v.type) for v in vs)):
        env = dict(zip(vs, vals))
        if eval_term(a, m, env) != eval_term(b, m, env):
            return False
    return True
