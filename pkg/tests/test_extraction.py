import dataclasses

import pytest

from lininterp.calculus import Sequent, node
from lininterp.corpus import ALL_R, P, R, SOME_R, extraction_fixtures, restriction_violation, x
from lininterp.errors import ModalityRequired, RestrictionViolation
from lininterp.extraction import check_extraction_wellformed, extract
from lininterp.interpretation import canonical_term
from lininterp.models import FiniteModel, verify_extraction, verify_extraction_model
from lininterp.reduction import normalize
from lininterp.serialize import dumps, extraction_doc
from lininterp.subst import FreshSupply, all_names, alpha_equal, substitute
from lininterp.syntax import (
    App, Bang, DecCases, FinSet, I, Lam, Var, is_quantifier_free, join_const,
)

MODS = ("mr", "dn", "dia")
FIXTURES = extraction_fixtures()
CASES = [(fx, m) for fx in FIXTURES for m in MODS]


def run(fx, mod):
    return extract(fx.derivation, mod, fx.simplified_with)


def fixture(name):
    return next(f for f in FIXTURES if f.name == name)


def test_identity():
    r = extract(node("id", formula=P))
    assert r.hyp_challenge_terms == ((),) and r.conclusion_witness_terms == ()
    assert r.verifying_sequent == Sequent((P,), P)


def test_forall_then_exists():
    d = node("existsR", node("forallL", node("id", formula=R(x)), formula=ALL_R, term=x),
             formula=SOME_R, term=x)
    r = extract(d)
    assert r.source == Sequent((ALL_R,), SOME_R)
    assert r.hyp_challenge_terms == ((x,),)
    assert r.conclusion_witness_terms == (x,)


@pytest.mark.parametrize("mod", MODS)
def test_weakening_uses_canonical_terms(mod):
    r = run(fixture("x_wkn_forall"), mod)
    weak = r.hypotheses[1]
    assert r.hyp_challenge_terms[1] == tuple(canonical_term(t) for t in weak.challenge_types)
    assert r.conclusion_witness_terms == ()
    assert r.hyp_challenge_terms[0] == ()


def test_contraction_joins_under_dn():
    r = run(fixture("x_con_two_instances"), "dn")
    (a,) = r.hyp_challenge_terms[0]
    assert a.fun.fun == join_const(I)
    assert r.hypotheses[0].challenge_types == (FinSet(I),)
    assert verify_extraction(r)


def test_contraction_cases_under_dia():
    r = run(fixture("x_con_two_instances"), "dia")
    (a,) = r.hyp_challenge_terms[0]
    assert isinstance(a, DecCases)


def test_modality_required():
    with pytest.raises(ModalityRequired):
        extract(fixture("con").derivation)


def test_full_with_rejected_when_simplified():
    with pytest.raises(RestrictionViolation):
        extract(restriction_violation().derivation, "mr", simplified_with=True)


@pytest.mark.parametrize("fx, mod", CASES, ids=lambda c: getattr(c, "name", c))
def test_wellformed(fx, mod):
    report = check_extraction_wellformed(run(fx, mod))
    assert report, report


@pytest.mark.parametrize("fx, mod", CASES, ids=lambda c: getattr(c, "name", c))
def test_round_trip_in_small_models(fx, mod):
    assert verify_extraction(run(fx, mod), size_bound=2)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_mr_banged_hypotheses_have_no_challenges(fx):
    r = run(fx, "mr")
    for h, a in zip(r.hypotheses, r.hyp_challenge_terms):
        if isinstance(h.source, Bang):
            assert a == ()


def _dec_nodes(t):
    if isinstance(t, DecCases):
        yield t
    for f in dataclasses.fields(t) if dataclasses.is_dataclass(t) else ():
        v = getattr(t, f.name)
        if dataclasses.is_dataclass(v) and not isinstance(v, type):
            yield from _dec_nodes(v)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_dialectica_cases_are_decidable(fx):
    r = run(fx, "dia")
    for ts in r.hyp_challenge_terms + (r.conclusion_witness_terms,):
        for t in ts:
            for n in _dec_nodes(t):
                assert is_quantifier_free(n.matrix)


def test_forged_challenge_in_witness_term():
    r = run(fixture("x_exists_lolli"), "mr")
    (w,) = r.conclusion.challenges
    (g,) = r.conclusion.witnesses
    bad = dataclasses.replace(r, conclusion_witness_terms=(Lam(Var("v", g.type.dom), w),))
    report = check_extraction_wellformed(bad)
    assert not report and "free variables" in report.reason
    assert report.path == "conclusion.witness_terms[0]"


def test_forged_type():
    r = run(fixture("x_forall_exists"), "mr")
    bad = dataclasses.replace(r, hyp_challenge_terms=((App(Var("k", FinSet(I)), x),),))
    report = check_extraction_wellformed(bad)
    assert not report and "ill-typed" in report.reason
    bad = dataclasses.replace(r, hyp_challenge_terms=((Var("k", FinSet(I)),),))
    report = check_extraction_wellformed(bad)
    assert not report and "expected" in report.reason


def test_forged_swap_fails_in_two_point_model():
    r = run(fixture("existsR"), "mr")
    (x0,) = r.parameters
    other = Var("other", I)
    forged = dataclasses.replace(r, conclusion_witness_terms=(other,),
                                 parameters=r.parameters + (other,))
    m = FiniteModel(2, {"R": {(0,)}})
    assert verify_extraction_model(r, m)
    assert not verify_extraction_model(forged, m)


@pytest.mark.parametrize("mod", MODS)
def test_deterministic(mod):
    for fx in FIXTURES:
        assert dumps(extraction_doc(run(fx, mod))) == dumps(extraction_doc(run(fx, mod)))


# -- cut is substitution --------------------------------------------------

def _pairs(src, dst):
    return dict(zip(src.witnesses + src.challenges, dst.witnesses + dst.challenges))


def _rename(terms, ren):
    return tuple(substitute(t, ren) for t in terms)


def _cut_pairs(limit=60):
    out = []
    for f1 in FIXTURES:
        for f2 in FIXTURES:
            if f1.simplified_with != f2.simplified_with:
                continue
            for j, h in enumerate(f2.hyps):
                if alpha_equal(h, f1.concl):
                    out.append((f1, f2, j))
    return out[:limit]


CUTS = _cut_pairs()


def test_enough_generated_cuts():
    assert len(CUTS) >= 20


@pytest.mark.parametrize("f1, f2, j", CUTS, ids=lambda c: getattr(c, "name", str(c)))
def test_cut_is_substitution(f1, f2, j):
    simplified = f1.simplified_with
    for mod in MODS:
        d = node("cut", f1.derivation, f2.derivation, pos=j)
        rc = extract(d, mod, simplified)
        r1 = extract(f1.derivation, mod, simplified)
        r2 = extract(f2.derivation, mod, simplified)
        n = len(f1.hyps)
        rest = [k for k in range(len(f2.hyps)) if k != j]

        ren1, ren2 = {}, {}
        for i in range(n):
            ren1.update(_pairs(r1.hypotheses[i], rc.hypotheses[i]))
        for pos, k in enumerate(rest):
            ren2.update(_pairs(r2.hypotheses[k], rc.hypotheses[n + pos]))
        ren2.update(_pairs(r2.conclusion, rc.conclusion))

        avoid = set()
        for r in (r1, r2, rc):
            for i in r.hypotheses + (r.conclusion,):
                avoid |= all_names(i.matrix) | {v.name for v in i.witnesses + i.challenges}
        fresh = FreshSupply(avoid)
        cut_formula = r1.conclusion
        xa = tuple(fresh.var("cx", v.type) for v in cut_formula.witnesses)
        ya = tuple(fresh.var("cy", v.type) for v in cut_formula.challenges)
        ren1.update(zip(cut_formula.witnesses + cut_formula.challenges, xa + ya))
        ren2.update(zip(r2.hypotheses[j].witnesses + r2.hypotheses[j].challenges, xa + ya))

        b1 = _rename(r1.conclusion_witness_terms, ren1)
        on_x = dict(zip(xa, b1))
        a_cut = tuple(substitute(t, on_x) for t in _rename(r2.hyp_challenge_terms[j], ren2))
        on_y = dict(zip(ya, a_cut))
        want = [tuple(substitute(t, on_y) for t in _rename(r1.hyp_challenge_terms[i], ren1))
                for i in range(n)]
        want += [tuple(substitute(t, on_x) for t in _rename(r2.hyp_challenge_terms[k], ren2))
                 for k in rest]
        want_b = tuple(substitute(t, on_x) for t in _rename(r2.conclusion_witness_terms, ren2))

        got = list(rc.hyp_challenge_terms)
        assert len(got) == len(want)
        for g, w in zip(got + [rc.conclusion_witness_terms], want + [want_b]):
            assert len(g) == len(w)
            for s, t in zip(g, w):
                assert alpha_equal(normalize(s), normalize(t)), (mod, s, t)
