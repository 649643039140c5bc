"""Witness extraction from checked linear derivations.

Every sub-derivation yields a judgement: interpretations of its hypotheses
and conclusion together with challenge terms ``a_i`` for each hypothesis and
witness terms ``b`` for the conclusion, such that

    |A_0|^{x_0}_{a_0}, ..., |A_n|^{x_n}_{a_n} |- |B|^b_w

holds.  Terms only mention the hypothesis witnesses x_i, the conclusion
challenges w and the free parameters of the proof.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .calculus import Sequent, SystemId, check_derivation
from .embeddings import check_slots, is_bang_free, principle_formula
from .errors import ModalityRequired, RestrictionViolation, UnsupportedInstance
from .interpretation import (
    InterpretedFormula, bang_if, canonical_term, default_supply, exists_if, forall_if,
    interpret, lolli_if, modality, plus_if, tensor_if, with_if,
)
from .models import valid
from .reduction import normalize, typecheck_term
from .subst import all_names, alpha_equal, free_vars, free_vars_all, substitute
from .syntax import (
    FALSE, TRUE, App, Arrow, Bang, Cond, DecCases, Lam, apply, is_quantifier_free, lam,
    subformulas, uncurry,
)


@dataclass(frozen=True)
class Judgement:
    hyps: tuple
    a: tuple
    concl: object
    b: tuple

    def subst(self, sub):
        if not sub:
            return self
        return Judgement(self.hyps, tuple(_st(t, sub) for t in self.a),
                         self.concl, _st(self.b, sub))


def _st(terms, sub):
    return tuple(substitute(t, sub) for t in terms)


@dataclass(frozen=True)
class ExtractionResult:
    source: Sequent
    modality: str | None
    simplified_with: bool
    hypotheses: tuple
    hyp_challenge_terms: tuple
    conclusion: object
    conclusion_witness_terms: tuple
    parameters: tuple

    @property
    def hyp_witness_vars(self):
        return tuple(h.witnesses for h in self.hypotheses)

    @property
    def conclusion_challenge_vars(self):
        return self.conclusion.challenges

    @property
    def verifying_sequent(self):
        hyps = tuple(h.at(challenges=a) for h, a in zip(self.hypotheses, self.hyp_challenge_terms))
        return Sequent(hyps, self.conclusion.at(witnesses=self.conclusion_witness_terms))


def _needs_bang(d):
    if d.rule in ("con", "wkn", "bangR", "bangL"):
        return True
    for f in (d.formula,) + tuple(d.context):
        if f is not None and any(isinstance(g, Bang) for g in subformulas(f)):
            return True
    return any(_needs_bang(p) for p in d.premises)


def _parameters(d):
    """Free variables of payload terms outside the scope of the
    eigenvariable rule binding them."""
    found = set()
    for t in ((d.term,) if d.term is not None else ()) + tuple(d.terms):
        found |= free_vars(t)
    for p in d.premises:
        found |= _parameters(p)
    if d.rule in ("forallR", "existsL") and d.var is not None:
        found.discard(d.var)
    return found


def extract(d, m=None, simplified_with=False):
    """Extract witness and challenge terms from a derivation in ILL (or
    ILL_r when ``simplified_with``)."""
    system = SystemId.ILL_r if simplified_with else SystemId.ILL
    seq = check_derivation(d, system)
    mod = modality(m) if m is not None else None
    if mod is None and (_needs_bang(d) or any(
            isinstance(g, Bang) for f in seq.hyps + (seq.concl,) for g in subformulas(f))):
        raise ModalityRequired("derivation uses the exponential; pass a modality")
    avoid = set()
    stack = [d]
    while stack:
        n = stack.pop()
        for x in (n.formula, n.term, n.var) + tuple(n.terms) + tuple(n.context):
            if x is not None:
                avoid |= all_names(x)
        stack.extend(n.premises)
    supply = default_supply(*seq.hyps, seq.concl)
    supply.avoid |= avoid
    ex = _Extractor(mod, simplified_with, supply)
    j = ex.run(d)
    params = set(free_vars_all(seq.hyps + (seq.concl,))) | _parameters(d)
    a = tuple(tuple(normalize(t) for t in ts) for ts in j.a)
    b = tuple(normalize(t) for t in j.b)
    hyps = tuple(_with_source(h, f) for h, f in zip(j.hyps, seq.hyps))
    concl = _with_source(j.concl, seq.concl)
    return ExtractionResult(seq, mod.name if mod else None, simplified_with, hyps, a, concl, b,
                            tuple(sorted(params, key=lambda v: v.name)))


def _with_source(i, f):
    return InterpretedFormula(i.witnesses, i.challenges, i.matrix, f, i.inner)


class _Extractor:
    def __init__(self, m, simplified, supply):
        self.m = m
        self.simplified = simplified
        self.supply = supply

    def interp(self, f):
        return interpret(f, self.m, self.simplified, self.supply)

    def run(self, d):
        seq = check_derivation(d, SystemId.ILL)
        handler = getattr(self, "r_" + d.rule)
        return handler(d, [self.run(p) for p in d.premises], seq)

    # -- structural

    def r_id(self, d, prem, seq):
        h = self.interp(d.formula)
        c = self.interp(d.formula)
        return Judgement((h,), (c.challenges,), c, h.witnesses)

    def r_zeroL(self, d, prem, seq):
        hyps = tuple(self.interp(f) for f in seq.hyps)
        c = self.interp(seq.concl)
        a = tuple(tuple(canonical_term(t) for t in h.challenge_types) for h in hyps)
        return Judgement(hyps, a, c, tuple(canonical_term(t) for t in c.witness_types))

    def r_cut(self, d, prem, seq):
        j1, j2 = prem
        left = check_derivation(d.premises[0], SystemId.ILL)
        right = check_derivation(d.premises[1], SystemId.ILL)
        pos = d.pos
        if pos is None:
            pos = [i for i, h in enumerate(right.hyps) if alpha_equal(h, left.concl)][-1]
        ia = j2.hyps[pos]
        a0 = j1.b
        on_x = dict(zip(ia.witnesses, a0))
        a1 = _st(j2.a[pos], on_x)
        on_y = dict(zip(j1.concl.challenges, a1))
        gamma = tuple(_st(t, on_y) for t in j1.a)
        rest = j2.hyps[:pos] + j2.hyps[pos + 1:]
        delta = tuple(_st(t, on_x) for i, t in enumerate(j2.a) if i != pos)
        return Judgement(j1.hyps + rest, gamma + delta, j2.concl, _st(j2.b, on_x))

    def r_per(self, d, prem, seq):
        (j,) = prem
        return Judgement(tuple(j.hyps[i] for i in d.perm), tuple(j.a[i] for i in d.perm),
                         j.concl, j.b)

    # -- multiplicatives

    def r_tensorR(self, d, prem, seq):
        j1, j2 = prem
        return Judgement(j1.hyps + j2.hyps, j1.a + j2.a, tensor_if(j1.concl, j2.concl),
                         j1.b + j2.b)

    def r_tensorL(self, d, prem, seq):
        (j,) = prem
        h = tensor_if(j.hyps[-2], j.hyps[-1])
        return Judgement(j.hyps[:-2] + (h,), j.a[:-2] + (j.a[-2] + j.a[-1],), j.concl, j.b)

    def r_lolliR(self, d, prem, seq):
        (j,) = prem
        ia, ib = j.hyps[-1], j.concl
        c = lolli_if(ia, ib, self.supply)
        xs, ws = ia.witnesses, ib.challenges
        b = tuple(lam(xs + ws, t) for t in j.a[-1]) + tuple(lam(xs, t) for t in j.b)
        return Judgement(j.hyps[:-1], j.a[:-1], c, b)

    def r_lolliL(self, d, prem, seq):
        j1, j2 = prem
        ia, ib = j1.concl, j2.hyps[-1]
        h = lolli_if(ia, ib, self.supply)
        fs = h.witnesses[:len(ia.challenges)]
        gs = h.witnesses[len(ia.challenges):]
        b_a = j1.b
        g_b = tuple(apply(g, *b_a) for g in gs)
        on_xb = dict(zip(ib.witnesses, g_b))
        w = _st(j2.a[-1], on_xb)
        on_ya = dict(zip(ia.challenges, (apply(f, *b_a, *w) for f in fs)))
        gamma = tuple(_st(t, on_ya) for t in j1.a)
        delta = tuple(_st(t, on_xb) for t in j2.a[:-1])
        return Judgement(j1.hyps + j2.hyps[:-1] + (h,), gamma + delta + (b_a + w,),
                         j2.concl, _st(j2.b, on_xb))

    # -- additives

    def r_withR(self, d, prem, seq):
        j1, j2 = prem
        sub = {}
        for h1, h2 in zip(j1.hyps, j2.hyps):
            sub.update(zip(h2.witnesses, h1.witnesses))
        j2 = j2.subst(sub)
        if self.simplified:
            if not all(isinstance(f, Bang) for f in seq.hyps):
                raise RestrictionViolation((), "simplified & needs an all-! context")
            c = with_if(j1.concl, j2.concl, self.supply, simplified=True)
            a = tuple(self._join(h, t0, t1) for h, t0, t1 in zip(j1.hyps, j1.a, j2.a))
        else:
            c = with_if(j1.concl, j2.concl, self.supply)
            z = c.challenges[-1]
            a = tuple(tuple(Cond(z, s, t) for s, t in zip(t0, t1)) for t0, t1 in zip(j1.a, j2.a))
        return Judgement(j1.hyps, a, c, j1.b + j2.b)

    def _join(self, h, t0, t1):
        if self.m is None:
            raise ModalityRequired("joining challenges of !-hypotheses needs a modality")
        inner = h.inner
        return self.m.join(t0, t1, inner.challenges, inner.matrix)

    def _with_left(self, d, prem, first):
        (j,) = prem
        ia = j.hyps[-1]
        ic = self.interp(d.formula)
        pad = tuple(canonical_term(t) for t in ic.challenge_types)
        pair = (ia, ic) if first else (ic, ia)
        h = with_if(*pair, self.supply, simplified=self.simplified)
        a = j.a[-1] + pad if first else pad + j.a[-1]
        if not self.simplified:
            a += (TRUE if first else FALSE,)
        return Judgement(j.hyps[:-1] + (h,), j.a[:-1] + (a,), j.concl, j.b)

    def r_withL1(self, d, prem, seq):
        return self._with_left(d, prem, True)

    def r_withL2(self, d, prem, seq):
        return self._with_left(d, prem, False)

    def _plus_right(self, d, prem, first):
        (j,) = prem
        ia = j.concl
        ic = self.interp(d.formula)
        pad = tuple(canonical_term(t) for t in ic.witness_types)
        c = plus_if(ia, ic, self.supply) if first else plus_if(ic, ia, self.supply)
        b = (j.b + pad + (TRUE,)) if first else (pad + j.b + (FALSE,))
        return Judgement(j.hyps, j.a, c, b)

    def r_plusR1(self, d, prem, seq):
        return self._plus_right(d, prem, True)

    def r_plusR2(self, d, prem, seq):
        return self._plus_right(d, prem, False)

    def r_plusL(self, d, prem, seq):
        j1, j2 = prem
        sub = {}
        for h1, h2 in zip(j1.hyps[:-1], j2.hyps[:-1]):
            sub.update(zip(h2.witnesses, h1.witnesses))
        sub.update(zip(j2.concl.challenges, j1.concl.challenges))
        j2 = j2.subst(sub)
        h = plus_if(j1.hyps[-1], j2.hyps[-1], self.supply)
        z = h.witnesses[-1]
        ctx = tuple(tuple(Cond(z, s, t) for s, t in zip(t0, t1))
                    for t0, t1 in zip(j1.a[:-1], j2.a[:-1]))
        b = tuple(Cond(z, s, t) for s, t in zip(j1.b, j2.b))
        return Judgement(j1.hyps[:-1] + (h,), ctx + (j1.a[-1] + j2.a[-1],), j1.concl, b)

    # -- quantifiers

    def _fresh_for(self, v):
        return self.supply.var(v.name.split("_")[0].rstrip("'") or "z", v.type)

    def r_forallR(self, d, prem, seq):
        (j,) = prem
        z = d.var
        z2 = self._fresh_for(z)
        j = j.subst({z: z2})
        inner = j.concl
        inner = type(inner)(inner.witnesses, inner.challenges,
                            substitute(inner.matrix, {z: z2}), inner.source, inner.inner)
        c = forall_if(z2, inner, self.supply)
        return Judgement(j.hyps, j.a, c, tuple(lam((z2,), t) for t in j.b))

    def r_existsL(self, d, prem, seq):
        (j,) = prem
        z = d.var
        z2 = self._fresh_for(z)
        j = j.subst({z: z2})
        ia = j.hyps[-1]
        ia = type(ia)(ia.witnesses, ia.challenges, substitute(ia.matrix, {z: z2}),
                      ia.source, ia.inner)
        h = exists_if(z2, ia)
        return Judgement(j.hyps[:-1] + (h,), j.a, j.concl, j.b)

    def _quantified(self, q):
        """Fresh interpretation of the body at a fresh variable, plus that variable."""
        z2 = self._fresh_for(q.var)
        return z2, self.interp(substitute(q.body, {q.var: z2}))

    def r_forallL(self, d, prem, seq):
        (j,) = prem
        q, t = d.formula, d.term
        z2, inner = self._quantified(q)
        h = forall_if(z2, inner, self.supply)
        old = j.hyps[-1]
        on_x = {x: apply(f, t) for x, f in zip(old.witnesses, h.witnesses)}
        j = j.subst(on_x)
        return Judgement(j.hyps[:-1] + (h,), j.a[:-1] + (j.a[-1] + (t,),), j.concl, j.b)

    def r_existsR(self, d, prem, seq):
        (j,) = prem
        q, t = d.formula, d.term
        z2, inner = self._quantified(q)
        c = exists_if(z2, inner)
        j = j.subst(dict(zip(j.concl.challenges, inner.challenges)))
        return Judgement(j.hyps, j.a, c, j.b + (t,))

    # -- exponentials

    def r_con(self, d, prem, seq):
        (j,) = prem
        h0, h1 = j.hyps[-2], j.hyps[-1]
        j = j.subst(dict(zip(h1.witnesses, h0.witnesses)))
        a = self._join(h0, j.a[-2], j.a[-1])
        return Judgement(j.hyps[:-2] + (h0,), j.a[:-2] + (a,), j.concl, j.b)

    def r_wkn(self, d, prem, seq):
        (j,) = prem
        h = self.interp(d.formula)
        a = tuple(canonical_term(t) for t in h.challenge_types)
        return Judgement(j.hyps + (h,), j.a + (a,), j.concl, j.b)

    def r_bangR(self, d, prem, seq):
        (j,) = prem
        ia = j.concl
        c = bang_if(ia, self.m, self.supply)
        a = tuple(self.m.comp(ia.challenges, c.challenges, t) for t in j.a)
        return Judgement(j.hyps, a, c, j.b)

    def r_bangL(self, d, prem, seq):
        (j,) = prem
        h = bang_if(j.hyps[-1], self.m, self.supply)
        return Judgement(j.hyps[:-1] + (h,), j.a[:-1] + (self.m.single(j.a[-1]),),
                         j.concl, j.b)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WellformedReport:
    ok: bool
    path: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_extraction_wellformed(r):
    """Typing and free-variable side conditions of an extraction result."""
    xs = set()
    for h in r.hypotheses:
        xs |= set(h.witnesses)
    ws = set(r.conclusion.challenges)
    zs = set(r.parameters)
    if len(r.hyp_challenge_terms) != len(r.hypotheses):
        return WellformedReport(False, "hypotheses", "one challenge tuple per hypothesis")

    def check(path, terms, types, allowed):
        if len(terms) != len(types):
            return WellformedReport(False, path, f"expected {len(types)} terms, got {len(terms)}")
        for k, (t, ty) in enumerate(zip(terms, types)):
            try:
                found = typecheck_term(t)
            except Exception as e:
                return WellformedReport(False, f"{path}[{k}]", f"ill-typed: {e}")
            if found != ty:
                return WellformedReport(False, f"{path}[{k}]", f"has type {found}, expected {ty}")
            extra = free_vars(t) - allowed
            if extra:
                names = ", ".join(sorted(v.name for v in extra))
                return WellformedReport(False, f"{path}[{k}]", f"free variables not allowed: {names}")
            for node in _dec_nodes(t):
                if not is_quantifier_free(node.matrix):
                    return WellformedReport(False, f"{path}[{k}]",
                                            "case split over a quantified matrix")
        return None

    for i, (h, a) in enumerate(zip(r.hypotheses, r.hyp_challenge_terms)):
        bad = check(f"hypotheses[{i}].challenge_terms", a, h.challenge_types, zs | xs | ws)
        if bad is not None:
            return bad
    bad = check("conclusion.witness_terms", r.conclusion_witness_terms,
                r.conclusion.witness_types, zs | xs)
    return WellformedReport(True) if bad is None else bad


def _dec_nodes(t):
    match t:
        case DecCases(_, a, b):
            yield t
            yield from _dec_nodes(a)
            yield from _dec_nodes(b)
        case App(f, a):
            yield from _dec_nodes(f)
            yield from _dec_nodes(a)
        case Lam(_, body):
            yield from _dec_nodes(body)
        case Cond(z, a, b):
            yield from _dec_nodes(z)
            yield from _dec_nodes(a)
            yield from _dec_nodes(b)



# ---------------------------------------------------------------------------
# Realizers for the characterization principles

REALIZER_DEPTH = 2
REALIZER_SEARCH_LIMIT = 4096


def _candidates(ty, env, supply, depth):
    """Closed-over-``env`` terms of type ``ty`` built from variables and
    applications only, most direct first."""
    if isinstance(ty, Arrow):
        v = supply.var("u", ty.dom)
        return [Lam(v, t) for t in _candidates(ty.cod, env + (v,), supply, depth)]
    out = [v for v in reversed(env) if v.type == ty]
    if depth > 0:
        for h in reversed(env):
            doms, cod = uncurry(h.type)
            if not doms or cod != ty:
                continue
            arg_lists = [_candidates(d, env, supply, depth - 1) for d in doms]
            out.extend(apply(h, *args) for args in itertools.product(*arg_lists))
    out.append(canonical_term(ty))
    return list(dict.fromkeys(out))


def principle_interpretation(p, m=None):
    """The interpreted implication of a principle instance."""
    f = principle_formula(p)
    return interpret(f, m, supply=default_supply(f))


def principle_realizer(p, m=None, size_bound=2, cap=None):
    """Witness terms for the interpreted implication of ``p``.

    Candidates are identity and projection plumbing between the two sides;
    the first tuple whose matrix is valid in every model up to
    ``size_bound`` is returned.
    """
    if p.kind in ("AC_l", "MP_l", "IP_l", "EP"):
        if not all(s is None or is_bang_free(s) for s in (p.a, p.b)):
            raise UnsupportedInstance(f"{p.kind} is only realized for bang-free slots")
    check_slots(p)
    ip = principle_interpretation(p, m)
    supply = default_supply(ip.matrix, *ip.witnesses, *ip.challenges)
    pools = [_candidates(w.type, (), supply, REALIZER_DEPTH) for w in ip.witnesses]
    for n, terms in enumerate(itertools.product(*pools)):
        if n >= REALIZER_SEARCH_LIMIT:
            break
        terms = tuple(normalize(t) for t in terms)
        if valid(ip.at(witnesses=terms), size_bound, cap=cap):
            return terms
    raise UnsupportedInstance(f"no identity or projection realizer found for {p.kind}")


def verify_principle_realizer(p, terms, m=None, size_bound=2, cap=None):
    ip = principle_interpretation(p, m)
    if tuple(typecheck_term(t) for t in terms) != ip.witness_types:
        return False
    return valid(ip.at(witnesses=tuple(terms)), size_bound, cap=cap)
