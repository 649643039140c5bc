"""JSON documents for structured CLI output.

Every leaf is a string in the s-expression syntax, so documents read back
through the same parsers used for input files.
"""
from __future__ import annotations

import json

from .calculus import Sequent
from .extraction import ExtractionResult
from .interpretation import InterpretedFormula
from .sexpr import (
    formula_to_str, parse_formula, parse_term, read_one, term_to_str, var_from, var_to_str,
)


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def var_list(vs):
    return [var_to_str(v) for v in vs]


def read_vars(items):
    return tuple(var_from(read_one(s)) for s in items)


def term_list(ts):
    return [term_to_str(t) for t in ts]


def read_terms(items):
    return tuple(parse_term(s) for s in items)


def sequent_doc(seq):
    return {"hyps": [formula_to_str(h) for h in seq.hyps], "concl": formula_to_str(seq.concl)}


def read_sequent(doc):
    return Sequent(tuple(parse_formula(h) for h in doc["hyps"]), parse_formula(doc["concl"]))


def interpreted_doc(i):
    return {
        "witnesses": var_list(i.witnesses),
        "challenges": var_list(i.challenges),
        "matrix": formula_to_str(i.matrix),
        "source": None if i.source is None else formula_to_str(i.source),
        "inner": None if i.inner is None else interpreted_doc(i.inner),
    }


def read_interpreted(doc):
    return InterpretedFormula(
        read_vars(doc["witnesses"]), read_vars(doc["challenges"]), parse_formula(doc["matrix"]),
        None if doc.get("source") is None else parse_formula(doc["source"]),
        None if doc.get("inner") is None else read_interpreted(doc["inner"]),
    )


def extraction_doc(r):
    return {
        "kind": "extraction",
        "modality": r.modality,
        "simplified_with": r.simplified_with,
        "source": sequent_doc(r.source),
        "hypotheses": [interpreted_doc(h) for h in r.hypotheses],
        "hyp_challenge_terms": [term_list(a) for a in r.hyp_challenge_terms],
        "conclusion": interpreted_doc(r.conclusion),
        "conclusion_witness_terms": term_list(r.conclusion_witness_terms),
        "parameters": var_list(r.parameters),
        "verifying_sequent": sequent_doc(r.verifying_sequent),
    }


def read_extraction(doc):
    if not isinstance(doc, dict) or doc.get("kind") != "extraction":
        raise ValueError("not an extraction document")
    return ExtractionResult(
        source=read_sequent(doc["source"]),
        modality=doc["modality"],
        simplified_with=bool(doc["simplified_with"]),
        hypotheses=tuple(read_interpreted(h) for h in doc["hypotheses"]),
        hyp_challenge_terms=tuple(read_terms(a) for a in doc["hyp_challenge_terms"]),
        conclusion=read_interpreted(doc["conclusion"]),
        conclusion_witness_terms=read_terms(doc["conclusion_witness_terms"]),
        parameters=read_vars(doc["parameters"]),
    )
