"""Fixture derivations, IL theorems and seeded formula generators.

Every fixture states the sequent it claims to prove, so the checker is
tested against an independent statement rather than its own output.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace

from .calculus import Derivation, Sequent, check_proves, node
from .embeddings import PrincipleInstance, embed_star, translate_proof
from .lemmas import build_lemma_useful, expected_sequent
from .subst import free_vars
from .syntax import (
    B, BOT, FALSE, INHABITANT, TRUE, ZERO, And, Atom, Bang, BoolEq, Cond, DecCases, Exists,
    FinSet, Forall, I, Implies, Lolli, Member, Or, Plus, Tensor, Var, With, apply, iff,
    join_const, single_const,
)

x, y, z = Var("x", I), Var("y", I), Var("z", I)
u, w = Var("u", B), Var("w", B)
s1, s2 = Var("s", FinSet(I)), Var("t", FinSet(I))

P = Atom("P", ())
Q = Atom("Q", ())


def R(t):
    return Atom("R", (t,))


ALL_R = Forall(y, R(y))
SOME_R = Exists(y, R(y))


@dataclass(frozen=True)
class Fixture:
    name: str
    system: str
    derivation: Derivation
    hyps: tuple
    concl: object
    simplified_with: bool = False

    @property
    def sequent(self):
        return Sequent(tuple(self.hyps), self.concl)

    def check(self):
        return check_proves(self.derivation, self.system, self.sequent)


def _id(f):
    return node("id", formula=f)


def _ax(k, *terms, **kw):
    return node("axiom", k=k, terms=tuple(terms), **kw)


def _eq(a, b):
    return Bang(BoolEq(a, b))


# ---------------------------------------------------------------------------
# One fixture per rule

def _linear_rules():
    tensor_pq = node("tensorR", _id(P), _id(Q))
    swap = node("tensorL", node("per", node("tensorR", _id(Q), _id(P)), perm=(1, 0)))
    inst_x = node("forallL", _id(R(x)), formula=ALL_R, term=x)
    yield "id", "ill", _id(P), (P,), P
    yield "zeroL", "ill", node("zeroL", context=(P,), formula=Q), (P, ZERO), Q
    yield "cut", "ill", node("cut", tensor_pq, swap), (P, Q), Tensor(Q, P)
    yield ("per", "ill", node("per", node("tensorR", _id(Q), _id(P)), perm=(1, 0)),
           (P, Q), Tensor(Q, P))
    yield "tensorR", "ill", tensor_pq, (P, Q), Tensor(P, Q)
    yield "tensorL", "ill", swap, (Tensor(P, Q),), Tensor(Q, P)
    yield "lolliR", "ill", node("lolliR", _id(P)), (), Lolli(P, P)
    yield "lolliL", "ill", node("lolliL", _id(P), _id(Q)), (P, Lolli(P, Q)), Q
    yield ("withR", "ill",
           node("withR", node("withL2", _id(Q), formula=P), node("withL1", _id(P), formula=Q)),
           (With(P, Q),), With(Q, P))
    yield "withL1", "ill", node("withL1", _id(P), formula=Q), (With(P, Q),), P
    yield "withL2", "ill", node("withL2", _id(Q), formula=P), (With(P, Q),), Q
    yield "plusR1", "ill", node("plusR1", _id(P), formula=Q), (P,), Plus(P, Q)
    yield "plusR2", "ill", node("plusR2", _id(Q), formula=P), (Q,), Plus(P, Q)
    yield ("plusL", "ill",
           node("plusL", node("plusR2", _id(P), formula=Q), node("plusR1", _id(Q), formula=P)),
           (Plus(P, Q),), Plus(Q, P))
    yield ("forallR", "ill", node("forallR", inst_x, var=x), (ALL_R,), Forall(x, R(x)))
    yield "forallL", "ill", inst_x, (ALL_R,), R(x)
    yield "existsR", "ill", node("existsR", _id(R(x)), formula=SOME_R, term=x), (R(x),), SOME_R
    yield ("existsL", "ill",
           node("existsL", node("existsR", _id(R(x)), formula=SOME_R, term=x), var=x),
           (Exists(x, R(x)),), SOME_R)
    yield ("con", "ill", node("con", node("tensorR", _id(Bang(P)), _id(Bang(P)))),
           (Bang(P),), Tensor(Bang(P), Bang(P)))
    yield "wkn", "ill", node("wkn", _id(P), formula=Bang(Q)), (P, Bang(Q)), P
    yield "bangR", "ill", node("bangR", _id(Bang(P))), (Bang(P),), Bang(Bang(P))
    yield "bangL", "ill", node("bangL", _id(P)), (Bang(P),), P


def _axioms():
    v = Var("v", I)
    yield "axiom1", "illb", _ax(1, u), (), _eq(u, u)
    yield "axiom2", "illb", _ax(2, u, TRUE), (), Lolli(_eq(u, TRUE), _eq(TRUE, u))
    yield ("axiom3", "illb", _ax(3, u, w, TRUE), (),
           Lolli(Tensor(_eq(u, w), _eq(w, TRUE)), _eq(u, TRUE)))
    yield ("axiom4", "illb", _ax(4, u, w, var=Var("c", B), formula=_eq(Var("c", B), TRUE)), (),
           Lolli(Tensor(_eq(u, w), _eq(u, TRUE)), _eq(w, TRUE)))
    yield "axiom5", "illb", _ax(5), (), Lolli(_eq(TRUE, FALSE), ZERO)
    yield "axiom6", "illb", _ax(6, u), (), Plus(_eq(u, TRUE), _eq(u, FALSE))
    yield ("axiom7", "illb", _ax(7, TRUE, x, z, var=v, formula=R(v)), (),
           iff(R(Cond(TRUE, x, z)), R(x)))
    yield ("axiom7F", "illb", _ax(7, FALSE, x, z, var=v, formula=R(v)), (),
           iff(R(Cond(FALSE, x, z)), R(z)))


def _extensions():
    v = Var("v", I)
    single = apply(single_const(I), x)
    joined = apply(join_const(I), s1, s2)
    yield "memSingle", "illb-dn", node("memSingle", terms=(x,)), (), Bang(Member(x, single))
    yield ("memJoinL", "illb-dn", node("memJoinL", terms=(x, s1, s2)), (),
           Lolli(Bang(Member(x, s1)), Bang(Member(x, joined))))
    yield ("memJoinR", "illb-dn", node("memJoinR", terms=(x, s1, s2)), (),
           Lolli(Bang(Member(x, s2)), Bang(Member(x, joined))))
    yield ("memJoinE", "illb-dn", node("memJoinE", terms=(x, s1, s2)), (),
           Lolli(Bang(Member(x, joined)), Plus(Bang(Member(x, s1)), Bang(Member(x, s2)))))
    yield "decAx", "illb-dia", node("decAx", formula=P), (), Plus(Bang(P), Lolli(Bang(P), ZERO))
    split = R(DecCases(P, x, z))
    yield ("decCasesR", "illb-dia",
           node("decCasesR", _id(split), context=(P,), terms=(x, z), var=v, formula=R(v)),
           (split, Bang(P)), R(z))
    yield ("decCasesL", "illb-dia",
           node("decCasesL", _id(split), context=(P,), terms=(x, z), var=v, formula=R(v)),
           (split, Lolli(Bang(P), ZERO)), R(x))


def _lemma_items():
    items = [
        ("lemma_i", dict(which="i", formula=_eq(w, w), var=w, term=u,
                         premises=(_ax(1, TRUE), _ax(1, FALSE)))),
        ("lemma_iiT", dict(which="ii", formula=P, flag="T")),
        ("lemma_iiF", dict(which="ii", formula=P, flag="F")),
        ("lemma_iii", dict(which="iii", formula=P, other=Q)),
        ("lemma_ivT", dict(which="iv", formula=P, other=Q, flag="T")),
        ("lemma_ivF", dict(which="iv", formula=P, other=Q, flag="F")),
        ("lemma_v", dict(which="v", formula=P, other=Q, term=u)),
    ]
    for name, kw in items:
        d = build_lemma_useful(**kw)
        kw = {k: v for k, v in kw.items() if k != "premises"}
        hyps, concl = expected_sequent(**kw)
        yield name, "illb", d, hyps, concl


def _il_rules():
    r_inst = node("il_forallL", node("il_id", formula=R(x)), formula=ALL_R, term=x)
    yield "il_id", "il", node("il_id", formula=P), (P,), P
    yield "il_botL", "il", node("il_botL", context=(Q,), formula=P), (Q, BOT), P
    yield ("il_cut", "il",
           node("il_cut", node("andL1", node("il_id", formula=P), formula=Q),
                node("orR1", node("il_id", formula=P), formula=Q)),
           (And(P, Q),), Or(P, Q))
    yield ("il_per", "il",
           node("il_per", node("il_wkn", node("il_id", formula=P), formula=Q), perm=(1, 0)),
           (Q, P), P)
    yield "il_wkn", "il", node("il_wkn", node("il_id", formula=P), formula=Q), (P, Q), P
    yield ("il_con", "il",
           node("il_con", node("andR", node("il_wkn", node("il_id", formula=P), formula=P),
                              node("il_wkn", node("il_id", formula=P), formula=P))),
           (P,), And(P, P))
    yield ("andR", "il",
           node("andR", node("andL2", node("il_id", formula=Q), formula=P),
                node("andL1", node("il_id", formula=P), formula=Q)),
           (And(P, Q),), And(Q, P))
    yield "andL1", "il", node("andL1", node("il_id", formula=P), formula=Q), (And(P, Q),), P
    yield "andL2", "il", node("andL2", node("il_id", formula=Q), formula=P), (And(P, Q),), Q
    yield "orR1", "il", node("orR1", node("il_id", formula=P), formula=Q), (P,), Or(P, Q)
    yield "orR2", "il", node("orR2", node("il_id", formula=Q), formula=P), (Q,), Or(P, Q)
    yield ("orL", "il",
           node("orL", node("orR2", node("il_id", formula=P), formula=Q),
                node("orR1", node("il_id", formula=Q), formula=P)),
           (Or(P, Q),), Or(Q, P))
    yield "impR", "il", node("impR", node("il_id", formula=P)), (), Implies(P, P)
    yield ("impL", "il", node("impL", node("il_id", formula=P), node("il_id", formula=Q)),
           (P, Implies(P, Q)), Q)
    yield "il_forallR", "il", node("il_forallR", r_inst, var=x), (ALL_R,), Forall(x, R(x))
    yield "il_forallL", "il", r_inst, (ALL_R,), R(x)
    yield ("il_existsR", "il",
           node("il_existsR", node("il_id", formula=R(x)), formula=SOME_R, term=x),
           (R(x),), SOME_R)
    yield ("il_existsL", "il",
           node("il_existsL", node("il_existsR", node("il_id", formula=R(x)),
                                   formula=SOME_R, term=x), var=x),
           (Exists(x, R(x)),), SOME_R)


def rule_fixtures():
    """Checked derivations covering every rule, axiom and lemma item."""
    out = []
    for gen in (_linear_rules, _axioms, _extensions, _lemma_items, _il_rules):
        for name, system, d, hyps, concl in gen():
            out.append(Fixture(name, system, d, tuple(hyps), concl))
    return out


def restriction_violation():
    """A derivation using &R over a non-! context; fine in ILL, rejected in ILL_r."""
    for f in _linear_rules():
        if f[0] == "withR":
            return Fixture("withR_unbanged", "illr", f[2], f[3], f[4])
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Derivations for extraction

def _extraction_derivations():
    inst = lambda t: node("forallL", _id(R(t)), formula=ALL_R, term=t)  # noqa: E731
    banged_inst = lambda t: node("bangL", inst(t))  # noqa: E731
    two = node("con", node("tensorR", banged_inst(x), banged_inst(z)))
    yield "x_modus_ponens", "ill", node("cut", _id(Lolli(P, Q)),
                                        node("lolliL", _id(P), _id(Q))), (Lolli(P, Q), P), Q
    yield ("x_zero_forall", "ill", node("zeroL", context=(P,), formula=ALL_R),
           (P, ZERO), ALL_R)
    yield ("x_curry", "ill",
           node("lolliR", node("lolliR", node("tensorR", _id(P), _id(Q)))),
           (), Lolli(P, Lolli(Q, Tensor(P, Q))))
    yield ("x_forall_exists", "ill",
           node("existsR", inst(x), formula=SOME_R, term=x), (ALL_R,), SOME_R)
    yield ("x_forall_lolli", "ill",
           node("forallR", node("lolliR", _id(R(x))), var=x), (), Forall(x, Lolli(R(x), R(x))))
    yield ("x_exists_bang", "ill",
           node("existsL", node("existsR", node("bangL", _id(R(x))), formula=SOME_R, term=x),
                var=x),
           (Exists(x, Bang(R(x))),), SOME_R)
    yield ("x_con_two_instances", "ill", two, (Bang(ALL_R),), Tensor(R(x), R(z)))
    yield ("x_con_closed", "ill", node("lolliR", two), (), Lolli(Bang(ALL_R), Tensor(R(x), R(z))))
    yield ("x_bangR_forall", "ill",
           node("forallR", node("bangR", banged_inst(x)), var=x),
           (Bang(ALL_R),), Forall(x, Bang(R(x))))
    yield ("x_bangL_forall", "ill", banged_inst(x), (Bang(ALL_R),), R(x))
    yield ("x_wkn_forall", "ill", node("wkn", _id(R(x)), formula=Bang(ALL_R)),
           (R(x), Bang(ALL_R)), R(x))
    yield ("x_wkn_con", "ill",
           node("con", node("wkn", banged_inst(x), formula=Bang(ALL_R))),
           (Bang(ALL_R),), R(x))
    yield ("x_bang_plus", "ill",
           node("bangL", node("plusL", node("plusR1", node("bangR", _id(Bang(P))),
                                            formula=Bang(Bang(Q))),
                              node("plusR2", node("bangR", _id(Bang(Q))),
                                   formula=Bang(Bang(P))))),
           (Bang(Plus(Bang(P), Bang(Q))),), Plus(Bang(Bang(P)), Bang(Bang(Q))))
    yield ("x_plus_forall", "ill",
           node("plusL", node("plusR1", inst(x), formula=Q),
                node("plusR2", _id(Q), formula=R(x))),
           (Plus(ALL_R, Q),), Plus(R(x), Q))
    yield ("x_with_forall", "ill",
           node("withR", node("withL1", inst(x), formula=Q), node("withL2", _id(Q),
                                                                 formula=ALL_R)),
           (With(ALL_R, Q),), With(R(x), Q))
    yield ("x_with_singleton_ctx", "illr",
           node("withR", banged_inst(x), banged_inst(z)),
           (Bang(ALL_R),), With(R(x), R(z)))
    left = node("wkn", node("bangL", _id(P)), formula=Bang(Q))
    right = node("per", node("wkn", node("bangL", _id(Q)), formula=Bang(P)), perm=(1, 0))
    yield ("x_with_banged_pair", "illr", node("withR", left, right),
           (Bang(P), Bang(Q)), With(P, Q))
    yield ("x_tensor_swap_cut", "ill",
           node("cut", node("tensorR", inst(x), _id(Q)),
                node("tensorL", node("per", node("tensorR", _id(Q), _id(R(x))), perm=(1, 0)))),
           (ALL_R, Q), Tensor(Q, R(x)))
    yield ("x_exists_lolli", "ill",
           node("lolliR", node("existsL", node("existsR", _id(R(x)), formula=SOME_R, term=x),
                               var=x)),
           (), Lolli(Exists(x, R(x)), SOME_R))
    yield ("x_lolli_forall", "ill",
           node("lolliL", inst(x), _id(Q)), (ALL_R, Lolli(R(x), Q)), Q)


def extraction_fixtures():
    """Derivations run through every extraction handler, in ILL (full &)
    or ILL_r (simplified &)."""
    out = []
    for f in rule_fixtures():
        if f.system == "ill":
            out.append(f)
    for name, system, d, hyps, concl in _extraction_derivations():
        out.append(Fixture(name, system, d, tuple(hyps), concl,
                           simplified_with=(system == "illr")))
    for f in il_theorems():
        d = translate_proof(f.derivation)
        out.append(Fixture("x_translated_" + f.name, "illr", d,
                           tuple(Bang(embed_star(h)) for h in f.hyps), embed_star(f.concl),
                           simplified_with=True))
    return out


# ---------------------------------------------------------------------------
# IL theorems

def _il(rule, *prem, **kw):
    return node(rule, *prem, **kw)


def _il_id(f):
    return node("il_id", formula=f)


def _il_theorems():
    inst = node("il_forallL", _il_id(R(x)), formula=ALL_R, term=x)
    yield "identity", _il_id(P), (P,), P
    yield "identity_closed", _il("impR", _il_id(P)), (), Implies(P, P)
    yield "and_proj1", _il("andL1", _il_id(P), formula=Q), (And(P, Q),), P
    yield "and_proj2", _il("andL2", _il_id(Q), formula=P), (And(P, Q),), Q
    yield ("and_comm", _il("andR", _il("andL2", _il_id(Q), formula=P),
                           _il("andL1", _il_id(P), formula=Q)), (And(P, Q),), And(Q, P))
    yield "forall_inst", inst, (ALL_R,), R(x)
    yield ("exists_intro", _il("il_existsR", _il_id(R(x)), formula=SOME_R, term=x),
           (R(x),), SOME_R)
    yield ("forall_exists", _il("il_existsR", inst, formula=SOME_R, term=x), (ALL_R,), SOME_R)
    yield ("forall_exists_closed",
           _il("impR", _il("il_existsR", inst, formula=SOME_R, term=x)),
           (), Implies(ALL_R, SOME_R))
    yield ("or_comm", _il("orL", _il("orR2", _il_id(P), formula=Q),
                          _il("orR1", _il_id(Q), formula=P)), (Or(P, Q),), Or(Q, P))
    yield "modus_ponens", _il("impL", _il_id(P), _il_id(Q)), (P, Implies(P, Q)), Q
    yield "ex_falso", _il("il_botL", formula=P), (BOT,), P
    yield ("weak_imp", _il("impR", _il("il_wkn", _il_id(P), formula=Q)),
           (P,), Implies(Q, P))
    yield ("duplicate", _il("il_con", _il("andR", _il("il_wkn", _il_id(P), formula=P),
                                          _il("il_wkn", _il_id(P), formula=P))),
           (P,), And(P, P))
    # exists x (P and R x) |- P and exists y R y
    body = And(P, R(x))
    left = _il("andL1", _il_id(P), formula=R(x))
    right = _il("andL2", _il("il_existsR", _il_id(R(x)), formula=SOME_R, term=x), formula=P)
    yield ("exists_and_dist",
           _il("andR", _il("il_existsL", left, var=x), _il("il_existsL", right, var=x)),
           (Exists(x, body),), And(P, SOME_R))
    # forall x (P and R x) |- P and forall x R x
    all_body = Forall(x, body)
    first = _il("il_forallL", _il("andL1", _il_id(P), formula=R(x)), formula=all_body, term=x)
    second = _il("il_forallR",
                 _il("il_forallL", _il("andL2", _il_id(R(x)), formula=P), formula=all_body,
                     term=x), var=x)
    yield "forall_and_dist", _il("andR", first, second), (all_body,), And(P, Forall(x, R(x)))
    # P or Q, P -> R x, Q -> R x |- R x
    yield ("or_elim",
           _il("orL", _il("il_per", _il("il_wkn", _il("impL", _il_id(P), _il_id(R(x))),
                                        formula=Implies(Q, R(x))), perm=(1, 2, 0)),
               _il("il_per", _il("il_wkn", _il("impL", _il_id(Q), _il_id(R(x))),
                                 formula=Implies(P, R(x))), perm=(2, 1, 0))),
           (Implies(P, R(x)), Implies(Q, R(x)), Or(P, Q)), R(x))


def il_theorems():
    return [Fixture(name, "il", d, tuple(hyps), concl)
            for name, d, hyps, concl in _il_theorems()]


# ---------------------------------------------------------------------------
# Mutations

def _sub_paths(d, path=()):
    yield path, d
    for i, p in enumerate(d.premises):
        yield from _sub_paths(p, path + (i,))


def _replace_at(d, path, new):
    if not path:
        return new
    i = path[0]
    prem = list(d.premises)
    prem[i] = _replace_at(prem[i], path[1:], new)
    return replace(d, premises=tuple(prem))


_SWAPS = {
    "withL1": "withL2", "withL2": "withL1", "plusR1": "plusR2", "plusR2": "plusR1",
    "andL1": "andL2", "andL2": "andL1", "orR1": "orR2", "orR2": "orR1",
    "forallL": "existsR", "existsR": "forallL", "forallR": "bangR", "existsL": "bangL",
    "bangR": "bangL", "bangL": "bangR", "tensorL": "con", "con": "tensorL",
    "tensorR": "lolliL", "lolliL": "tensorR", "lolliR": "bangL", "id": "zeroL",
    "zeroL": "id", "memJoinL": "memJoinR", "memJoinR": "memJoinL",
    "decCasesL": "decCasesR", "decCasesR": "decCasesL", "impR": "il_wkn",
    "impL": "andR", "andR": "impL", "orL": "andR", "il_con": "il_per",
    "il_forallL": "il_existsR", "il_existsR": "il_forallL", "il_existsL": "il_forallR",
    "il_forallR": "il_existsL", "il_id": "il_botL", "il_botL": "il_id",
    "plusL": "withR", "withR": "plusL", "cut": "tensorR", "per": "con", "wkn": "bangL",
    "il_cut": "andR", "il_per": "il_con", "il_wkn": "impR", "axiom": "memSingle",
    "memSingle": "axiom", "memJoinE": "memJoinL", "decAx": "axiom",
}


def _formula_mutant(f):
    if isinstance(f, Atom) and f.pred in ("P", "Q"):
        return Atom("Q" if f.pred == "P" else "P", f.args)
    return Bang(f) if not isinstance(f, Bang) else f.body


def _term_mutant(t):
    if t == TRUE:
        return FALSE
    if t == FALSE:
        return TRUE
    if t == x:
        return z
    if t.type == I:
        return INHABITANT if t != INHABITANT else x
    return t


def mutants(d):
    """Single-point mutations of ``d``: a rule swap, a dropped premise, a
    perturbed payload, or a reordered permutation, at each node."""
    for path, sub in _sub_paths(d):
        yield path, "rule", _replace_at(d, path, replace(sub, rule=_SWAPS.get(sub.rule, "id")))
        if sub.premises:
            yield path, "drop", _replace_at(d, path, replace(sub, premises=sub.premises[:-1]))
        if sub.formula is not None:
            yield path, "formula", _replace_at(d, path,
                                               replace(sub, formula=_formula_mutant(sub.formula)))
        if sub.term is not None:
            new = _term_mutant(sub.term)
            if new != sub.term:
                yield path, "term", _replace_at(d, path, replace(sub, term=new))
        if sub.terms:
            for i, t in enumerate(sub.terms):
                new = _term_mutant(t)
                if new != t:
                    ts = sub.terms[:i] + (new,) + sub.terms[i + 1:]
                    yield path, f"terms[{i}]", _replace_at(d, path, replace(sub, terms=ts))
        if sub.k is not None:
            yield path, "k", _replace_at(d, path, replace(sub, k=sub.k % 7 + 1))
        if sub.var is not None:
            yield path, "var", _replace_at(d, path,
                                           replace(sub, var=Var(sub.var.name + "'", sub.var.type)))
        if len(sub.perm) >= 2:
            perm = tuple(sorted(sub.perm))
            if perm == sub.perm:
                perm = perm[::-1]
            yield path, "perm", _replace_at(d, path, replace(sub, perm=perm))
        if sub.context:
            yield path, "context", _replace_at(d, path, replace(sub, context=sub.context[1:] or
                                                                (Bang(sub.context[0]),)))


# ---------------------------------------------------------------------------
# Formula generators

IL_ATOMS = (R(x), Q, BOT)
IL_BINARY = (And, Or, Implies)


def il_formulas_of_depth(depth):
    if depth == 0:
        return list(IL_ATOMS)
    smaller = il_formulas_up_to(depth - 1)
    exact = set(il_formulas_of_depth(depth - 1)) if depth > 1 else set(IL_ATOMS)
    out = []
    for op in IL_BINARY:
        for a, b in itertools.product(smaller, repeat=2):
            if a in exact or b in exact:
                out.append(op(a, b))
    for a in exact:
        out.append(Forall(x, a))
        out.append(Exists(x, a))
    return out


def il_formulas_up_to(depth):
    out = []
    for d in range(depth + 1):
        out.extend(il_formulas_of_depth(d))
    return out


def random_il_formula(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice(IL_ATOMS)
    k = rng.randrange(5)
    if k < 3:
        return IL_BINARY[k](random_il_formula(rng, depth - 1), random_il_formula(rng, depth - 1))
    body = random_il_formula(rng, depth - 1)
    return (Forall if k == 3 else Exists)(x, body)


def il_corpus(count=120, depth=3, seed=0):
    """Every formula of depth <= 1 followed by seeded samples up to ``depth``,
    without duplicates."""
    out = list(dict.fromkeys(il_formulas_up_to(min(depth, 1))))
    if depth <= 1:
        return out[:count]
    rng = random.Random(seed)
    seen = set(out)
    while len(out) < count:
        f = random_il_formula(rng, depth)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out[:count]


ILL_ATOMS = (R(x), P, ZERO)
ILL_BINARY = (Tensor, With, Plus, Lolli)


def random_ill_formula(rng, depth, atoms=ILL_ATOMS):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice(atoms)
    k = rng.randrange(7)
    if k < 4:
        return ILL_BINARY[k](random_ill_formula(rng, depth - 1, atoms),
                             random_ill_formula(rng, depth - 1, atoms))
    body = random_ill_formula(rng, depth - 1, atoms)
    if k == 4:
        return Bang(body)
    return (Forall if k == 5 else Exists)(x, body)


def ill_corpus(count=120, depth=3, seed=0, atoms=ILL_ATOMS):
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        f = random_ill_formula(rng, depth, atoms)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


MATRIX_ATOMS = (R(y), P, R(x), BoolEq(u, TRUE))


def _random_matrix(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(MATRIX_ATOMS)
    k = rng.randrange(5)
    if k == 4:
        return Bang(_random_matrix(rng, depth - 1))
    return ILL_BINARY[k](_random_matrix(rng, depth - 1), _random_matrix(rng, depth - 1))


def matrix_corpus(count=60, seed=0):
    """Quantifier-free matrices paired with their challenge tuple: ``(y,)``,
    or ``(y, u)`` when the boolean ``u`` occurs as well."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        f = _random_matrix(rng, 3)
        fv = free_vars(f)
        if y in fv and f not in seen:
            seen.add(f)
            out.append((f, (y, u) if u in fv else (y,)))
    return out


# ---------------------------------------------------------------------------
# Principle instances

def principle_instances():
    s_xyz = Atom("S", (x, y, z))
    return [
        PrincipleInstance("AC_l", a=Forall(z, s_xyz), xs=(x,), ys=(y,)),
        PrincipleInstance("AC_l", a=Atom("S", (x, y)), xs=(x,), ys=(y,)),
        PrincipleInstance("MP_l", a=R(x), b=Q, xs=(x,)),
        PrincipleInstance("MP_l", a=P, b=Q),
        PrincipleInstance("IP_l", a=ALL_R, b=R(y), ys=(y,)),
        PrincipleInstance("EP", a=R(x), b=R(y), xs=(x,), ys=(y,)),
        PrincipleInstance("EP", a=P, b=R(y), ys=(y,)),
        PrincipleInstance("P_plus", a=P, b=Q),
        PrincipleInstance("P_plus", a=ALL_R, b=Q),
        PrincipleInstance("P_exists", a=R(x), ys=(x,)),
        PrincipleInstance("P_exists", a=Forall(z, Atom("S", (x, z))), ys=(x,)),
    ]
