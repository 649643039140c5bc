"""Translations of intuitionistic formulas and proofs into linear logic,
and the schematic principles used alongside them."""
from __future__ import annotations

from dataclasses import dataclass

from .calculus import SystemId, check_derivation, node
from .errors import SlotClassViolation
from .subst import FreshSupply, all_names, alpha_equal, free_vars, substitute
from .syntax import (
    ZERO, And, Atom, Bang, BoolEq, Bot, Exists, Forall, Implies, Lolli, Member, Or, Plus,
    Tensor, With,
    apply, arrows, exists_many, forall_many, subformulas,
)


def embed_star(a):
    match a:
        case Atom() | BoolEq() | Member():
            return a
        case Bot():
            return ZERO
        case And(l, r):
            return With(embed_star(l), embed_star(r))
        case Or(l, r):
            return Plus(Bang(embed_star(l)), Bang(embed_star(r)))
        case Implies(l, r):
            return Lolli(Bang(embed_star(l)), embed_star(r))
        case Forall(v, body):
            return Forall(v, embed_star(body))
        case Exists(v, body):
            return Exists(v, Bang(embed_star(body)))
    raise TypeError(f"not an intuitionistic formula: {a!r}")


def embed_circle(a):
    match a:
        case Atom() | BoolEq() | Member():
            return Bang(a)
        case Bot():
            return ZERO
        case And(l, r):
            return Tensor(embed_circle(l), embed_circle(r))
        case Or(l, r):
            return Plus(embed_circle(l), embed_circle(r))
        case Implies(l, r):
            return Bang(Lolli(embed_circle(l), embed_circle(r)))
        case Forall(v, body):
            return Bang(Forall(v, embed_circle(body)))
        case Exists(v, body):
            return Exists(v, embed_circle(body))
    raise TypeError(f"not an intuitionistic formula: {a!r}")


def embed_simplified(a):
    match a:
        case Atom() | BoolEq() | Member():
            return a
        case Bot():
            return ZERO
        case And(l, r):
            return With(embed_simplified(l), embed_simplified(r))
        case Or(l, r):
            return Plus(embed_simplified(l), embed_simplified(r))
        case Implies(l, r):
            return Lolli(Bang(embed_simplified(l)), embed_simplified(r))
        case Forall(v, body):
            return Forall(v, embed_simplified(body))
        case Exists(v, body):
            return Exists(v, embed_simplified(body))
    raise TypeError(f"not an intuitionistic formula: {a!r}")


EMBEDDINGS = {"star": embed_star, "circle": embed_circle, "simplified": embed_simplified}


# ---------------------------------------------------------------------------
# Proof translation: an IL derivation of G |- A becomes !G* |- A*

def _to_last(n):
    """per payload moving hypothesis 0 of an n-element context to the end."""
    return tuple(range(1, n)) + (0,)


def translate_proof(d):
    """Translate an IL derivation rule by rule; the result checks in ILL_r."""
    out, _ = _translate(d)
    check_derivation(out, SystemId.ILL_r)
    return out


def _bang(f):
    return Bang(embed_star(f))


def _translate(d):
    seq = check_derivation(d, SystemId.IL)
    subs = [_translate(p) for p in d.premises]
    ts = [s[0] for s in subs]
    prem = [s[1] for s in subs]
    r = d.rule
    match r:
        case "il_id":
            a = embed_star(d.formula)
            out = node("bangL", node("id", formula=a))
        case "il_botL":
            ctx = tuple(_bang(f) for f in d.context)
            out = node("bangL", node("zeroL", context=ctx, formula=embed_star(d.formula)))
        case "il_cut":
            left, right = prem
            pos = d.pos
            if pos is None:
                pos = _last_match(right.hyps, left.concl)
            out = node("cut", node("bangR", ts[0]), ts[1], pos=pos)
        case "il_per":
            out = node("per", ts[0], perm=d.perm)
        case "il_wkn":
            out = node("wkn", ts[0], formula=_bang(d.formula))
        case "il_con":
            out = node("con", ts[0])
        case "andR":
            out = node("withR", ts[0], ts[1])
        case "andL1" | "andL2":
            part = prem[0].hyps[-1]
            side = embed_star(d.formula)
            rule = "withL1" if r == "andL1" else "withL2"
            get = node("bangR", node("bangL", node(rule, node("id", formula=embed_star(part)),
                                                   formula=side)))
            cut = node("cut", get, ts[0])
            out = node("per", cut, perm=_to_last(len(seq.hyps)))
        case "orR1" | "orR2":
            rule = "plusR1" if r == "orR1" else "plusR2"
            out = node(rule, node("bangR", ts[0]), formula=_bang(d.formula))
        case "orL":
            out = node("bangL", node("plusL", ts[0], ts[1]))
        case "impR":
            out = node("lolliR", ts[0])
        case "impL":
            left, right = prem
            b_star = embed_star(right.hyps[-1])
            g = len(left.hyps)
            n_delta = len(right.hyps) - 1
            use = node("bangR", node("bangL", node("lolliL", node("bangR", ts[0]),
                                                   node("id", formula=b_star))))
            cut = node("cut", use, ts[1])
            # cut yields G, imp, D; the IL conclusion is G, D, imp
            perm = tuple(range(g)) + tuple(range(g + 1, g + 1 + n_delta)) + (g,)
            out = node("per", cut, perm=perm)
        case "il_forallR":
            out = node("forallR", ts[0], var=d.var)
        case "il_forallL":
            q = embed_star(d.formula)
            inst = substitute(q.body, {q.var: d.term})
            get = node("bangR", node("bangL", node("forallL", node("id", formula=inst),
                                                   formula=q, term=d.term)))
            cut = node("cut", get, ts[0])
            out = node("per", cut, perm=_to_last(len(seq.hyps)))
        case "il_existsR":
            q = embed_star(d.formula)
            out = node("existsR", node("bangR", ts[0]), formula=q, term=d.term)
        case "il_existsL":
            out = node("bangL", node("existsL", ts[0], var=d.var))
        case _:
            raise ValueError(f"not an IL rule: {r}")
    return out, seq


def _last_match(hyps, f):
    hits = [i for i, h in enumerate(hyps) if alpha_equal(h, f)]
    return hits[-1]


# ---------------------------------------------------------------------------
# Principles

PRINCIPLES = ("AC_l", "MP_l", "IP_l", "EP", "P_plus", "P_exists")


def is_open(f):
    """No quantifiers and nothing whose interpretation adds variables
    (so bang, plus and with are excluded too)."""
    return not any(isinstance(g, (Forall, Exists, Bang, Plus, With)) for g in subformulas(f))


def is_universal(f):
    while isinstance(f, Forall):
        f = f.body
    return is_open(f)


def is_bang_free(f):
    return not any(isinstance(g, Bang) for g in subformulas(f))


@dataclass(frozen=True)
class PrincipleInstance:
    """A principle schema with its slots filled.

    ``a``/``b`` are the component formulas; ``xs`` is the x-tuple and ``ys``
    the y-tuple (v-tuple for EP, the single bound variable for P_exists).
    """
    kind: str
    a: object = None
    b: object = None
    xs: tuple = ()
    ys: tuple = ()

    def __post_init__(self):
        if self.kind not in PRINCIPLES:
            raise SlotClassViolation(f"unknown principle {self.kind!r}")


def _require(cond, why):
    if not cond:
        raise SlotClassViolation(why)


def check_slots(p):
    a, b = p.a, p.b
    match p.kind:
        case "AC_l":
            _require(is_universal(a), "AC_l needs a purely universal slot")
        case "MP_l":
            _require(is_open(a) and is_open(b), "MP_l needs quantifier-free slots")
            _require(not set(p.xs) & free_vars(b), "the x-tuple must not occur in B")
        case "IP_l":
            _require(is_universal(a) and is_universal(b), "IP_l needs purely universal slots")
            _require(not set(p.ys) & free_vars(a), "the y-tuple must not occur in A")
        case "EP":
            _require(is_open(a) and is_open(b), "EP needs quantifier-free slots")
            _require(not set(p.ys) & free_vars(a), "the v-tuple must not occur in A")
        case "P_plus":
            _require(a is not None and b is not None, "P_plus needs two slots")
        case "P_exists":
            _require(a is not None and len(p.ys) == 1, "P_exists needs a slot and one variable")


def choice_functions(p):
    """The f-tuple of AC_l, one function per y, over the x-tuple."""
    avoid = set()
    for f in (p.a, p.b):
        if f is not None:
            avoid |= all_names(f)
    avoid |= {v.name for v in p.xs + p.ys}
    fresh = FreshSupply(avoid)
    return tuple(fresh.var("f", arrows([x.type for x in p.xs], y.type)) for y in p.ys)


def principle_formula(p):
    check_slots(p)
    a, b, xs, ys = p.a, p.b, p.xs, p.ys
    match p.kind:
        case "AC_l":
            fs = choice_functions(p)
            chosen = substitute(a, {y: apply(f, *xs) for y, f in zip(ys, fs)})
            return Lolli(forall_many(xs, exists_many(ys, a)),
                         exists_many(fs, forall_many(xs, chosen)))
        case "MP_l":
            return Lolli(Lolli(forall_many(xs, a), b), exists_many(xs, Lolli(a, b)))
        case "IP_l":
            return Lolli(Lolli(a, exists_many(ys, b)), exists_many(ys, Lolli(a, b)))
        case "EP":
            return Lolli(forall_many(xs + ys, Tensor(a, b)),
                         Tensor(forall_many(xs, a), forall_many(ys, b)))
        case "P_plus":
            return Lolli(Bang(Plus(a, b)), Plus(Bang(a), Bang(b)))
        case "P_exists":
            (x,) = ys
            return Lolli(Bang(Exists(x, a)), Exists(x, Bang(a)))
    raise SlotClassViolation(p.kind)


def principle_free_vars(p):
    """Free variables of the rendered instance."""
    return free_vars(principle_formula(p))

