"""Brute-force evaluation over finite models.

Linear connectives collapse to their classical readings: tensor and with are
conjunction, plus is disjunction, lollipop is implication, bang is dropped
and 0 is false.  This is a refutation oracle: anything provable is true in
every model, not conversely.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field

from .errors import Inconclusive, SignatureMismatch
from .subst import free_vars
from .syntax import (
    And, App, Arrow, Atom, Bang, Base, BoolEq, BoolT, Bot, Cond, Const, DecCases,
    Exists, FinSet, Forall, Implies, Lam, Lolli, Member, Or, Plus, Tensor, Var, With,
    Zero, atoms_of, spine,
)

CAP_ENV = "LININTERP_MAX_ASSIGNMENTS"
DEFAULT_CAP = 10 ** 6
DEFAULT_SAMPLES = 64


def assignment_cap(cap=None):
    if cap is not None:
        return cap
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


class Fn:
    """A total function on a finite carrier, compared extensionally."""

    __slots__ = ("fun", "domain", "cache", "_key")

    def __init__(self, fun, domain):
        self.fun = fun
        self.domain = domain
        self.cache = {}
        self._key = None

    def __call__(self, v):
        try:
            return self.cache[v]
        except KeyError:
            out = self.cache[v] = self.fun(v)
            return out

    def key(self):
        if self._key is None:
            self._key = tuple(self(v) for v in self.domain)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Fn) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Fn{" + ", ".join(f"{k!r}: {v!r}" for k, v in zip(self.domain, self.key())) + "}"


def _curry(n, body, domains):
    """Curried Fn of ``n`` arguments over the given domains."""
    def build(args):
        if len(args) == n:
            return body(*args)
        return Fn(lambda v: build(args + (v,)), domains[len(args)])
    return build(())


@dataclass
class FiniteModel:
    size: int
    tables: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carriers must be nonempty")
        self._carriers = {}

    def carrier(self, ty):
        try:
            return self._carriers[ty]
        except KeyError:
            pass
        match ty:
            case Base():
                out = tuple(range(self.size))
            case BoolT():
                out = (True, False)
            case Arrow(dom, cod):
                d, c = self.carrier(dom), self.carrier(cod)
                out = tuple(Fn(dict(zip(d, vals)).__getitem__, d)
                            for vals in itertools.product(c, repeat=len(d)))
            case FinSet(elem):
                # nonempty only: no closed term denotes the empty set
                e = self.carrier(elem)
                out = tuple(frozenset(x for x, keep in zip(e, bits) if keep)
                            for bits in itertools.product((False, True), repeat=len(e))
                            if any(bits))
            case _:
                raise TypeError(f"not a type: {ty!r}")
        self._carriers[ty] = out
        return out

    def holds(self, pred, args):
        table = self.tables.get(pred)
        if table is None:
            return False
        return tuple(args) in table


# ---------------------------------------------------------------------------
# Terms

def eval_term(t, m, env):
    match t:
        case Var():
            return env[t]
        case Const(name, ty):
            return _const(name, ty, m)
        case App():
            head, args = spine(t)
            f = eval_term(head, m, env)
            for a in args:
                f = f(eval_term(a, m, env))
            return f
        case Lam(v, body):
            return Fn(lambda x: eval_term(body, m, {**env, v: x}), m.carrier(v.type))
        case Cond(z, a, b):
            return eval_term(a if eval_term(z, m, env) else b, m, env)
        case DecCases(phi, a, b):
            return eval_term(b if eval_formula(phi, m, env) else a, m, env)
    raise TypeError(f"not a term: {t!r}")


def _uncurried(ty):
    doms = []
    while isinstance(ty, Arrow):
        doms.append(ty.dom)
        ty = ty.cod
    return doms


def _const(name, ty, m):
    doms = [m.carrier(d) for d in _uncurried(ty)]
    match name:
        case "T":
            return True
        case "F":
            return False
        case "o":
            return 0
        case "Pi":
            return _curry(2, lambda x, y: x, doms)
        case "Sigma":
            return _curry(3, lambda x, y, z: x(z)(y(z)), doms)
        case "cond":
            return _curry(3, lambda z, a, b: a if z else b, doms)
        case "single":
            return _curry(1, lambda x: frozenset((x,)), doms)
        case "join":
            return _curry(2, lambda s, t: s | t, doms)
        case "comp":
            k = len(doms) - 1

            def comp(*args):
                sets, f = args[:k], args[k]
                out = frozenset()
                for xs in itertools.product(*sets):
                    g = f
                    for x in xs:
                        g = g(x)
                    out |= g
                return out
            return _curry(k + 1, comp, doms)
    raise ValueError(f"no semantics for constant {name}")


# ---------------------------------------------------------------------------
# Formulas

def eval_formula(f, m, env):
    match f:
        case Atom(p, args):
            return m.holds(p, [eval_term(a, m, env) for a in args])
        case Zero() | Bot():
            return False
        case Tensor(l, r) | With(l, r) | And(l, r):
            return eval_formula(l, m, env) and eval_formula(r, m, env)
        case Plus(l, r) | Or(l, r):
            return eval_formula(l, m, env) or eval_formula(r, m, env)
        case Lolli(l, r) | Implies(l, r):
            return (not eval_formula(l, m, env)) or eval_formula(r, m, env)
        case Bang(body):
            return eval_formula(body, m, env)
        case Forall(v, body):
            return all(eval_formula(body, m, {**env, v: x}) for x in m.carrier(v.type))
        case Exists(v, body):
            return any(eval_formula(body, m, {**env, v: x}) for x in m.carrier(v.type))
        case BoolEq(l, r):
            return eval_term(l, m, env) == eval_term(r, m, env)
        case Member(e, s):
            return eval_term(e, m, env) in eval_term(s, m, env)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Model streams

def _signature(*formulas):
    sig = {}
    for f in formulas:
        for p, types in atoms_of(f).items():
            if p in sig and sig[p] != types:
                raise SignatureMismatch(f"predicate {p} used at {sig[p]} and {types}")
            sig[p] = types
    return sig


def merge_signatures(*sigs):
    out = {}
    for s in sigs:
        for p, types in s.items():
            if p in out and out[p] != tuple(types):
                raise SignatureMismatch(f"predicate {p} used at {out[p]} and {types}")
            out[p] = tuple(types)
    return out


EXHAUSTIVE_TABLE_BITS = 12


def exhaustive(signature, size=2):
    """Whether atom tables are enumerated rather than sampled: always for at
    most two predicates of arity at most two, and otherwise whenever the
    tables have at most ``EXHAUSTIVE_TABLE_BITS`` cells in total."""
    if len(signature) <= 2 and all(len(t) <= 2 for t in signature.values()):
        return True
    base = FiniteModel(size)
    cells = 0
    for types in signature.values():
        n = 1
        for t in types:
            n *= len(base.carrier(t))
        cells += n
    return cells <= EXHAUSTIVE_TABLE_BITS


def models(signature, size, seed=0, samples=DEFAULT_SAMPLES):
    """Every model of the given size over ``signature`` (a map predicate ->
    argument types), or a seeded sample when the signature is too large."""
    base = FiniteModel(size)
    preds = sorted(signature)
    cells = {p: tuple(itertools.product(*(base.carrier(t) for t in signature[p])))
             for p in preds}
    if exhaustive(signature, size):
        choices = [
            [frozenset(c for c, keep in zip(cells[p], bits) if keep)
             for bits in itertools.product((False, True), repeat=len(cells[p]))]
            for p in preds
        ]
        for combo in itertools.product(*choices):
            yield FiniteModel(size, dict(zip(preds, combo)))
        return
    rng = random.Random(seed * 7919 + size)
    for _ in range(samples):
        yield FiniteModel(size, {p: frozenset(c for c in cells[p] if rng.random() < 0.5)
                                 for p in preds})


def _assignments(vs, m):
    vs = tuple(vs)
    for vals in itertools.product(*(m.carrier(v.type) for v in vs)):
        yield dict(zip(vs, vals))


def _count(vs, m):
    n = 1
    for v in vs:
        n *= len(m.carrier(v.type))
    return n


def _ordered(vs):
    return sorted(vs, key=lambda v: (v.name, str(v.type)))


class _Budget:
    def __init__(self, cap):
        self.cap = assignment_cap(cap)
        self.used = 0

    def spend(self, n):
        self.used += n
        if self.used > self.cap:
            raise Inconclusive(f"more than {self.cap} assignments to enumerate")


def valid(f, size_bound=2, signature=None, cap=None, seed=0, sizes=None):
    """True iff ``f`` holds in every model up to ``size_bound`` under every
    assignment to its free variables."""
    sig = merge_signatures(signature or {}, _signature(f))
    vs = _ordered(free_vars(f))
    budget = _Budget(cap)
    for n in sizes or range(1, size_bound + 1):
        for m in models(sig, n, seed):
            budget.spend(_count(vs, m))
            for env in _assignments(vs, m):
                if not eval_formula(f, m, env):
                    return False
    return True


def semantic_equiv(a, b, size_bound=2, signature=None, cap=None, seed=0):
    sig = merge_signatures(_signature(a), _signature(b), signature or {})
    vs = _ordered(free_vars(a) | free_vars(b))
    budget = _Budget(cap)
    for n in range(1, size_bound + 1):
        for m in models(sig, n, seed):
            budget.spend(_count(vs, m))
            for env in _assignments(vs, m):
                if eval_formula(a, m, env) != eval_formula(b, m, env):
                    return False
    return True


def find_countermodel(f, size_bound=2, signature=None, cap=None, seed=0):
    """First (model, env) falsifying ``f``, or None."""
    sig = merge_signatures(signature or {}, _signature(f))
    vs = _ordered(free_vars(f))
    budget = _Budget(cap)
    for n in range(1, size_bound + 1):
        for m in models(sig, n, seed):
            budget.spend(_count(vs, m))
            for env in _assignments(vs, m):
                if not eval_formula(f, m, env):
                    return m, env
    return None


# ---------------------------------------------------------------------------
# Extraction results

def verify_extraction_model(r, m, cap=None):
    """Whether the verifying sequent of ``r`` holds in ``m`` for every choice
    of hypothesis witnesses, parameters and conclusion challenges."""
    return _verify(r, m, _Budget(cap))


def _verify(r, m, budget):
    seq = r.verifying_sequent
    vs = []
    for h in r.hypotheses:
        vs.extend(h.witnesses)
    vs.extend(r.parameters)
    vs.extend(r.conclusion.challenges)
    vs = list(dict.fromkeys(vs))
    budget.spend(_count(vs, m))
    for env in _assignments(vs, m):
        if all(eval_formula(h, m, env) for h in seq.hyps) and not eval_formula(seq.concl, m, env):
            return False
    return True


def extraction_signature(r):
    return _signature(*r.source.hyps, r.source.concl, *r.verifying_sequent.hyps,
                      r.verifying_sequent.concl)


def verify_extraction(r, size_bound=2, signature=None, cap=None, seed=0):
    """verify_extraction_model over every model up to ``size_bound``."""
    sig = merge_signatures(extraction_signature(r), signature or {})
    budget = _Budget(cap)
    for n in range(1, size_bound + 1):
        for m in models(sig, n, seed):
            if not _verify(r, m, budget):
                return False
    return True

