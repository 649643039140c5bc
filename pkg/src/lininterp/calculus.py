"""Sequents, derivation trees and the rule checker for every system.

Left rules act on the *last* hypothesis (or last two, for tensorL and con);
``per`` reorders hypotheses explicitly.  ``cut`` takes the cut formula from
position ``pos`` of the second premise, defaulting to the last occurrence.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    EigenvariableViolation, LinInterpError, RestrictionViolation, RuleMismatch,
    SystemViolation, TypeMismatch,
)
from .reduction import typecheck_formula, typecheck_term
from .subst import alpha_equal, free_vars, free_vars_all, substitute
from .syntax import (
    FALSE, TRUE, ZERO, And, App, Arrow, Atom, Bang, Base, BoolEq, BoolT, Bot,
    Cond, Const, DecCases, Exists, FinSet, Forall, Implies, Lam, Lolli, Member, Or,
    Plus, Tensor, Var, With, Zero, iff, join_const, single_const, type_of,
    is_quantifier_free, subformulas,
)


class SystemId(enum.Enum):
    IL = "il"
    ILL = "ill"
    ILL_r = "illr"
    ILL_b = "illb"
    ILL_b_DN = "illb-dn"
    ILL_b_Dia = "illb-dia"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        for s in cls:
            if s.value == text.lower() or s.name.lower() == text.lower():
                return s
        raise ValueError(f"unknown system {text!r}")


_VERIFYING = {SystemId.ILL_b, SystemId.ILL_b_DN, SystemId.ILL_b_Dia}


@dataclass(frozen=True)
class Sequent:
    hyps: tuple
    concl: object

    def alpha_equal(self, other):
        return (len(self.hyps) == len(other.hyps)
                and all(alpha_equal(a, b) for a, b in zip(self.hyps, other.hyps))
                and alpha_equal(self.concl, other.concl))


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple = ()
    formula: object = None
    term: object = None
    terms: tuple = ()
    var: object = None
    perm: tuple = ()
    context: tuple = ()
    k: int | None = None
    pos: int | None = None


ILL_RULES = {
    "id", "zeroL", "cut", "per", "tensorR", "tensorL", "lolliR", "lolliL", "withR",
    "withL1", "withL2", "plusR1", "plusR2", "plusL", "forallR", "forallL", "existsR",
    "existsL", "con", "wkn", "bangR", "bangL",
}
AXIOM_RULES = {"axiom"}
DN_RULES = {"memSingle", "memJoinL", "memJoinR", "memJoinE"}
DIA_RULES = {"decAx", "decCasesL", "decCasesR"}
IL_RULES = {
    "il_id", "il_botL", "il_cut", "il_per", "il_wkn", "il_con", "andR", "andL1",
    "andL2", "orR1", "orR2", "orL", "impR", "impL", "il_forallR", "il_forallL",
    "il_existsR", "il_existsL",
}
RULES = ILL_RULES | AXIOM_RULES | DN_RULES | DIA_RULES | IL_RULES


def rules_of(sys):
    sys = SystemId.parse(sys)
    if sys is SystemId.IL:
        return IL_RULES
    out = set(ILL_RULES)
    if sys in _VERIFYING:
        out |= AXIOM_RULES
    if sys is SystemId.ILL_b_DN:
        out |= DN_RULES
    if sys is SystemId.ILL_b_Dia:
        out |= DIA_RULES
    return out


# ---------------------------------------------------------------------------
# System validator

_IL_NODES = (Atom, Bot, And, Or, Implies, Forall, Exists)
_ILL_NODES = (Atom, Zero, Tensor, With, Plus, Lolli, Bang, Forall, Exists)


def _type_ok(ty, sys):
    match ty:
        case Base():
            return True
        case BoolT():
            return sys in _VERIFYING
        case FinSet(e):
            return sys is SystemId.ILL_b_DN and _type_ok(e, sys)
        case Arrow(d, c):
            return _type_ok(d, sys) and _type_ok(c, sys)
    return False


def _term_violation(t, sys):
    match t:
        case Var(_, ty) | Const(_, ty):
            if not _type_ok(ty, sys):
                return f"type {ty} not available"
            if isinstance(t, Const):
                allowed = {"o", "Pi", "Sigma"}
                if sys in _VERIFYING:
                    allowed |= {"T", "F", "cond"}
                if sys is SystemId.ILL_b_DN:
                    allowed |= {"single", "join", "comp"}
                if t.name not in allowed:
                    return f"constant {t.name} not available"
            return None
        case App(f, a):
            return _term_violation(f, sys) or _term_violation(a, sys)
        case Lam(v, body):
            return _term_violation(v, sys) or _term_violation(body, sys)
        case Cond(z, a, b):
            if sys not in _VERIFYING:
                return "conditional terms need a verifying system"
            return _term_violation(z, sys) or _term_violation(a, sys) or _term_violation(b, sys)
        case DecCases(m, a, b):
            if sys is not SystemId.ILL_b_Dia:
                return "definition by cases needs the Dialectica verifying system"
            if not is_quantifier_free(m):
                return "case split over a formula with quantifiers"
            return (formula_violation(m, sys) or _term_violation(a, sys)
                    or _term_violation(b, sys))
    return f"unknown term {t!r}"


def formula_violation(f, sys):
    """Reason ``f`` is not a formula of ``sys``, or None."""
    sys = SystemId.parse(sys)
    for g in subformulas(f):
        if sys is SystemId.IL:
            ok = isinstance(g, _IL_NODES)
        else:
            ok = isinstance(g, _ILL_NODES)
            if isinstance(g, BoolEq):
                ok = sys in _VERIFYING
            if isinstance(g, Member):
                ok = sys is SystemId.ILL_b_DN
        if not ok:
            return f"{type(g).__name__} not allowed in {sys.value}"
        terms = ()
        match g:
            case Atom(_, args):
                terms = args
            case BoolEq(l, r) | Member(l, r):
                terms = (l, r)
            case Forall(v, _) | Exists(v, _):
                terms = (v,)
        for t in terms:
            why = _term_violation(t, sys)
            if why:
                return why
    return None


def validate_formula(f, sys):
    return formula_violation(f, sys) is None


# ---------------------------------------------------------------------------
# Axiom schemas of the verifying system

def axiom_formula(k, terms=(), var=None, formula=None):
    def eq(a, b):
        return Bang(BoolEq(a, b))

    def need(n):
        if len(terms) != n:
            raise LinInterpError(f"axiom ({k}) takes {n} terms, got {len(terms)}")

    match k:
        case 1:
            need(1)
            (x,) = terms
            return eq(x, x)
        case 2:
            need(2)
            x, y = terms
            return Lolli(eq(x, y), eq(y, x))
        case 3:
            need(3)
            x, y, z = terms
            return Lolli(Tensor(eq(x, y), eq(y, z)), eq(x, z))
        case 4:
            need(2)
            x, y = terms
            if var is None or formula is None:
                raise LinInterpError("axiom (4) needs :var and :formula")
            return Lolli(Tensor(eq(x, y), substitute(formula, {var: x})),
                         substitute(formula, {var: y}))
        case 5:
            need(0)
            return Lolli(eq(TRUE, FALSE), ZERO)
        case 6:
            need(1)
            (z,) = terms
            return Plus(eq(z, TRUE), eq(z, FALSE))
        case 7:
            need(3)
            flag, t, q = terms
            if flag not in (TRUE, FALSE):
                raise LinInterpError("axiom (7) needs a literal T or F flag")
            if var is None or formula is None:
                raise LinInterpError("axiom (7) needs :var and :formula")
            picked = t if flag == TRUE else q
            return iff(substitute(formula, {var: Cond(flag, t, q)}),
                       substitute(formula, {var: picked}))
    raise LinInterpError(f"no axiom ({k})")


def _dn_axiom(rule, terms):
    def mem(x, s):
        return Bang(Member(x, s))

    if rule == "memSingle":
        (t,) = terms
        return mem(t, App(single_const(type_of(t)), t))
    x, s, t = terms
    joined = App(App(join_const(type_of(x)), s), t)
    if rule == "memJoinL":
        return Lolli(mem(x, s), mem(x, joined))
    if rule == "memJoinR":
        return Lolli(mem(x, t), mem(x, joined))
    return Lolli(mem(x, joined), Plus(mem(x, s), mem(x, t)))


# ---------------------------------------------------------------------------
# Checker

def check_derivation(d, sys) -> Sequent:
    """Return the root sequent of ``d`` or raise a CheckError subclass."""
    sys = SystemId.parse(sys)
    return _check(d, sys, ())


def _same_list(a, b):
    return len(a) == len(b) and all(alpha_equal(x, y) for x, y in zip(a, b))


def _check(d, sys, path):
    if d.rule not in RULES:
        raise RuleMismatch(path, f"unknown rule {d.rule!r}")
    if d.rule not in rules_of(sys):
        raise SystemViolation(path, f"rule {d.rule} is not part of {sys.value}")

    def fail(reason):
        return RuleMismatch(path, f"{d.rule}: {reason}")

    def formula_ok(f, what="formula"):
        if f is None:
            raise fail(f"missing {what}")
        try:
            typecheck_formula(f)
        except (TypeMismatch, LinInterpError) as e:
            raise fail(f"ill-typed {what}: {e}") from None
        why = formula_violation(f, sys)
        if why:
            raise SystemViolation(path, why)
        return f

    def term_ok(t, ty=None):
        if t is None:
            raise fail("missing term")
        try:
            found = typecheck_term(t)
        except LinInterpError as e:
            raise fail(f"ill-typed term: {e}") from None
        if ty is not None and found != ty:
            raise fail(f"term has type {found}, expected {ty}")
        why = _term_violation(t, sys)
        if why:
            raise SystemViolation(path, why)
        return t

    prem = [_check(p, sys, path + (i,)) for i, p in enumerate(d.premises)]

    def arity(n):
        if len(prem) != n:
            raise fail(f"expected {n} premises, found {len(prem)}")

    def last(seq, n=1):
        if len(seq.hyps) < n:
            raise fail(f"premise needs at least {n} hypotheses")
        return seq.hyps[:-n], seq.hyps[-n:]

    r = d.rule
    il = r in IL_RULES
    if il:
        r = {"il_id": "id", "il_cut": "cut", "il_per": "per", "il_wkn": "wkn",
             "il_con": "con", "il_forallR": "forallR", "il_forallL": "forallL",
             "il_existsR": "existsR", "il_existsL": "existsL"}.get(r, r)
    Conj, Disj, Imp = (And, Or, Implies)

    match r:
        case "id":
            arity(0)
            a = formula_ok(d.formula)
            return Sequent((a,), a)
        case "zeroL" | "il_botL":
            arity(0)
            ctx = tuple(formula_ok(f, "context formula") for f in d.context)
            a = formula_ok(d.formula)
            return Sequent(ctx + ((Bot() if il else ZERO),), a)
        case "cut":
            arity(2)
            left, right = prem
            pos = d.pos
            if pos is None:
                hits = [i for i, h in enumerate(right.hyps) if alpha_equal(h, left.concl)]
                if not hits:
                    raise fail("cut formula does not occur in the second premise")
                pos = hits[-1]
            if not 0 <= pos < len(right.hyps) or not alpha_equal(right.hyps[pos], left.concl):
                raise fail("cut formula does not match")
            rest = right.hyps[:pos] + right.hyps[pos + 1:]
            return Sequent(left.hyps + rest, right.concl)
        case "per":
            arity(1)
            (p,) = prem
            if sorted(d.perm) != list(range(len(p.hyps))):
                raise fail("payload is not a permutation of the hypotheses")
            return Sequent(tuple(p.hyps[i] for i in d.perm), p.concl)
        case "tensorR":
            arity(2)
            a, b = prem
            return Sequent(a.hyps + b.hyps, Tensor(a.concl, b.concl))
        case "tensorL":
            arity(1)
            ctx, (a, b) = last(prem[0], 2)
            return Sequent(ctx + (Tensor(a, b),), prem[0].concl)
        case "lolliR" | "impR":
            arity(1)
            ctx, (a,) = last(prem[0])
            return Sequent(ctx, (Imp if il else Lolli)(a, prem[0].concl))
        case "lolliL" | "impL":
            arity(2)
            left, right = prem
            delta, (b,) = last(right)
            return Sequent(left.hyps + delta + ((Imp if il else Lolli)(left.concl, b),),
                           right.concl)
        case "withR" | "andR":
            arity(2)
            a, b = prem
            if not _same_list(a.hyps, b.hyps):
                raise fail("premise contexts differ")
            if sys is SystemId.ILL_r and not all(isinstance(h, Bang) for h in a.hyps):
                raise RestrictionViolation(
                    path, "the context of &R must consist entirely of !-formulas")
            return Sequent(a.hyps, (Conj if il else With)(a.concl, b.concl))
        case "withL1" | "withL2" | "andL1" | "andL2":
            arity(1)
            ctx, (a,) = last(prem[0])
            c = formula_ok(d.formula, "side formula")
            node = Conj if il else With
            f = node(a, c) if r.endswith("1") else node(c, a)
            return Sequent(ctx + (f,), prem[0].concl)
        case "plusR1" | "plusR2" | "orR1" | "orR2":
            arity(1)
            c = formula_ok(d.formula, "side formula")
            node = Disj if il else Plus
            a = prem[0].concl
            f = node(a, c) if r.endswith("1") else node(c, a)
            return Sequent(prem[0].hyps, f)
        case "plusL" | "orL":
            arity(2)
            p, q = prem
            ctx1, (a,) = last(p)
            ctx2, (b,) = last(q)
            if not _same_list(ctx1, ctx2):
                raise fail("premise contexts differ")
            if not alpha_equal(p.concl, q.concl):
                raise fail("premise conclusions differ")
            return Sequent(ctx1 + ((Disj if il else Plus)(a, b),), p.concl)
        case "forallR":
            arity(1)
            z = d.var
            if not isinstance(z, Var):
                raise fail("missing eigenvariable")
            formula_ok(Forall(z, prem[0].concl))
            if z in free_vars_all(prem[0].hyps):
                raise EigenvariableViolation(path, f"{z.name} occurs free in the context")
            return Sequent(prem[0].hyps, Forall(z, prem[0].concl))
        case "existsL":
            arity(1)
            z = d.var
            if not isinstance(z, Var):
                raise fail("missing eigenvariable")
            ctx, (a,) = last(prem[0])
            if z in free_vars_all(ctx) or z in free_vars(prem[0].concl):
                raise EigenvariableViolation(path, f"{z.name} occurs free in the conclusion")
            return Sequent(ctx + (Exists(z, a),), prem[0].concl)
        case "forallL" | "existsR":
            arity(1)
            q = formula_ok(d.formula, "quantified formula")
            want = Forall if r == "forallL" else Exists
            if not isinstance(q, want):
                raise fail(f"payload must be a {want.__name__} formula")
            t = term_ok(d.term, q.var.type)
            inst = substitute(q.body, {q.var: t})
            if r == "forallL":
                ctx, (a,) = last(prem[0])
                if not alpha_equal(a, inst):
                    raise fail("premise hypothesis is not the instance at the payload term")
                return Sequent(ctx + (q,), prem[0].concl)
            if not alpha_equal(prem[0].concl, inst):
                raise fail("premise conclusion is not the instance at the payload term")
            return Sequent(prem[0].hyps, q)
        case "con":
            arity(1)
            ctx, (a, b) = last(prem[0], 2)
            if not alpha_equal(a, b):
                raise fail("contracted hypotheses differ")
            if not il and not isinstance(a, Bang):
                raise fail("only !-formulas can be contracted")
            return Sequent(ctx + (a,), prem[0].concl)
        case "wkn":
            arity(1)
            a = formula_ok(d.formula)
            if not il and not isinstance(a, Bang):
                raise fail("only !-formulas can be weakened")
            return Sequent(prem[0].hyps + (a,), prem[0].concl)
        case "bangR":
            arity(1)
            if not all(isinstance(h, Bang) for h in prem[0].hyps):
                raise fail("!R needs an all-! context")
            return Sequent(prem[0].hyps, Bang(prem[0].concl))
        case "bangL":
            arity(1)
            ctx, (a,) = last(prem[0])
            return Sequent(ctx + (Bang(a),), prem[0].concl)
        case "axiom":
            arity(0)
            for t in d.terms:
                term_ok(t)
            if d.formula is not None:
                formula_ok(d.formula)
            try:
                f = axiom_formula(d.k, d.terms, d.var, d.formula)
                typecheck_formula(f)
            except LinInterpError as e:
                raise fail(str(e)) from None
            return Sequent((), formula_ok(f))
        case "memSingle" | "memJoinL" | "memJoinR" | "memJoinE":
            arity(0)
            if len(d.terms) != (1 if r == "memSingle" else 3):
                raise fail("wrong number of terms")
            for t in d.terms:
                term_ok(t)
            try:
                f = _dn_axiom(r, d.terms)
                typecheck_formula(f)
            except LinInterpError as e:
                raise fail(str(e)) from None
            return Sequent((), formula_ok(f))
        case "decAx":
            arity(0)
            a = formula_ok(d.formula)
            if not is_quantifier_free(a):
                raise fail("decidability is only assumed for quantifier-free formulas")
            return Sequent((), Plus(Bang(a), Lolli(Bang(a), ZERO)))
        case "decCasesL" | "decCasesR":
            arity(1)
            if len(d.context) != 1 or len(d.terms) != 2 or d.var is None:
                raise fail("needs :context (A), :terms (t s), :var w and :formula B")
            a = formula_ok(d.context[0], "decided formula")
            if not is_quantifier_free(a):
                raise fail("case split over a formula with quantifiers")
            body = formula_ok(d.formula)
            t, s = d.terms
            ty = d.var.type
            term_ok(t, ty)
            term_ok(s, ty)
            expected = substitute(body, {d.var: DecCases(a, t, s)})
            if not alpha_equal(prem[0].concl, expected):
                raise fail("premise conclusion does not mention the case split")
            if r == "decCasesR":
                return Sequent(prem[0].hyps + (Bang(a),), substitute(body, {d.var: s}))
            return Sequent(prem[0].hyps + (Lolli(Bang(a), ZERO),), substitute(body, {d.var: t}))
    raise fail("unhandled rule")


def check_proves(d, sys, claim):
    """Check ``d`` and that it ends in ``claim``; return the root sequent."""
    seq = check_derivation(d, sys)
    if not isinstance(claim, Sequent):
        claim = Sequent(tuple(claim[0]), claim[1])
    if not seq.alpha_equal(claim):
        raise RuleMismatch((), "the derivation does not end in the claimed sequent")
    return seq


def check_sequent_system(seq, sys):
    for f in seq.hyps + (seq.concl,):
        why = formula_violation(f, sys)
        if why:
            raise SystemViolation((), why)


# ---------------------------------------------------------------------------
# Small builders shared by fixtures, lemmas and the proof translation

def node(rule, *premises, **payload):
    return Derivation(rule, tuple(premises), **payload)


def modus_ponens(ante, imp, concl):
    """From ``ante: G |- X`` and ``imp: |- X -o Y`` build ``G |- Y``."""
    return node("cut", imp, node("lolliL", ante, node("id", formula=concl)))
