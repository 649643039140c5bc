import io
import json

import pytest

from lininterp.cli import FAILED, INCONCLUSIVE, OK, USAGE, run
from lininterp.corpus import il_theorems, restriction_violation, rule_fixtures
from lininterp.serialize import read_extraction, read_interpreted, read_sequent
from lininterp.sexpr import derivation_to_str


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def structured(*argv):
    code, text, err = cli(*argv, "--format", "structured")
    return code, json.loads(text) if text else None, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def theorem(name):
    return next(f for f in il_theorems() if f.name == name)


def test_check_restriction_violation(files):
    path = files("bad.illd", derivation_to_str(restriction_violation().derivation))
    code, out, _ = cli("check", "--system", "illr", path)
    assert code == FAILED and "RestrictionViolation" in out and "!-formulas" in out
    assert cli("check", "--system", "ill", path)[0] == OK


def test_pipeline_projection(files):
    path = files("proj.ild", derivation_to_str(theorem("and_proj1").derivation))
    code, doc, _ = structured("pipeline", "--modality", "dn", path, "--domain-size", "2")
    assert code == OK
    assert doc["verified"] is True and doc["wellformed"]["ok"]


def test_equiv():
    assert cli("equiv", "--size", "1", "(atom P)", "(atom P)")[0] == OK
    assert cli("equiv", "(atom P)", "(atom Q)")[0] == FAILED


def test_parse_error_position(files):
    path = files("broken.illd", "(id (atom P)")
    code, _, err = cli("check", path)
    assert code == USAGE and "broken.illd:1:1:" in err


def test_missing_modality(files):
    con = next(f for f in rule_fixtures() if f.name == "con")
    path = files("con.illd", derivation_to_str(con.derivation))
    code, _, err = cli("extract", path)
    assert code == USAGE and "modality" in err


def test_bad_arguments():
    assert cli("frobnicate")[0] == USAGE
    assert cli("verify", "--domain-size", "0", "x.json")[0] == USAGE


def test_domain_size_cap(monkeypatch, files):
    path = files("x.json", "{}")
    assert cli("verify", "--domain-size", "9", path)[0] == USAGE
    monkeypatch.setenv("LININTERP_MAX_DOMAIN_SIZE", "1")
    assert cli("equiv", "--size", "2", "(atom P)", "(atom P)")[0] == USAGE


def test_extract_then_verify(files, tmp_path):
    d = "(existsR (forallL (id (atom R x)) :formula (forall (y i) (atom R y)) :term x)" \
        " :formula (exists (y i) (atom R y)) :term x)"
    path = files("fe.illd", d)
    out = str(tmp_path / "fe.json")
    assert cli("extract", "--modality", "mr", "--format", "structured", "--out", out, path)[0] == OK
    doc = json.loads(open(out).read())
    r = read_extraction(doc["extraction"])
    assert [str(t) for t in r.conclusion_witness_terms] == ["x"]
    assert cli("verify", "--domain-size", "2", out)[0] == OK


def test_human_output_file_is_structured(files, tmp_path):
    path = files("fi.illd", "(forallL (id (atom R x)) :formula (forall (y i) (atom R y)) :term x)")
    out = str(tmp_path / "fi.json")
    code, text = cli("extract", "--out", out, path)[:2]
    assert code == OK and "verifying sequent" in text
    assert json.loads(open(out).read())["command"] == "extract"
    assert cli("verify", out)[0] == OK


def test_verify_inconclusive(monkeypatch, files, tmp_path):
    path = files("x.illd", "(forallL (id (atom R x)) :formula (forall (y i) (atom R y)) :term x)")
    out = str(tmp_path / "x.json")
    cli("extract", "--format", "structured", "-o", out, path)
    monkeypatch.setenv("LININTERP_MAX_ASSIGNMENTS", "1")
    assert cli("verify", out)[0] == INCONCLUSIVE


def test_bad_verify_document(files):
    assert cli("verify", files("junk.json", "[1, 2]"))[0] == USAGE


def test_structured_round_trip(files):
    code, doc, _ = structured("interpret", "--modality", "dn", "(bang (forall (x i) (atom R x)))")
    assert code == OK
    i = read_interpreted(doc["interpretation"])
    assert len(i.challenges) == 1
    path = files("t.ild", derivation_to_str(theorem("forall_inst").derivation))
    code, doc, _ = structured("pipeline", "--modality", "dia", path)
    assert code == OK
    r = read_extraction(doc["extraction"])
    assert read_sequent(doc["extraction"]["verifying_sequent"]) == r.verifying_sequent


def test_embed():
    code, out, _ = cli("embed", "--which", "star", "(or (atom P) (atom Q))")
    assert code == OK and out.strip() == "(plus (bang (atom P)) (bang (atom Q)))"
    code, out, _ = cli("embed", "--which", "circle", "(atom P)")
    assert out.strip() == "(bang (atom P))"


def test_embed_proof(files):
    path = files("id.ild", derivation_to_str(theorem("identity").derivation))
    code, doc, _ = structured("embed", "--proof", path)
    assert code == OK and doc["sequent"]["hyps"] == ["(bang (atom P))"]


def test_correspond_summary():
    code, out, _ = cli("correspond", "--which", "dia", "--depth", "2", "--count", "10")
    assert code == OK
    assert out.splitlines()[-1].startswith("dia: 10 formulas;")


def test_principles():
    code, doc, _ = structured("principles", "--modality", "mr", "--kind", "P_plus")
    assert code == OK and all(row["valid"] for row in doc["results"])


def test_deterministic_output(files):
    path = files("t.ild", derivation_to_str(theorem("or_elim").derivation))
    first = cli("pipeline", "--modality", "dn", "--format", "structured", path)
    second = cli("pipeline", "--modality", "dn", "--format", "structured", path)
    assert first == second


def test_seed_in_header():
    code, doc, _ = structured("equiv", "--seed", "7", "(atom P)", "(atom P)")
    assert doc["seed"] == 7 and doc["exit"] == code == OK
