import json

import pytest

from lininterp.corpus import extraction_fixtures, ill_corpus
from lininterp.extraction import extract
from lininterp.interpretation import interpret
from lininterp.serialize import (
    dumps, extraction_doc, interpreted_doc, read_extraction, read_interpreted,
)


@pytest.mark.parametrize("mod", ["mr", "dn", "dia"])
def test_extraction_documents_read_back(mod):
    for fx in extraction_fixtures():
        r = extract(fx.derivation, mod, fx.simplified_with)
        back = read_extraction(json.loads(dumps(extraction_doc(r))))
        assert back == r
        assert back.verifying_sequent == r.verifying_sequent


@pytest.mark.parametrize("mod", ["mr", "dn", "dia"])
def test_interpretations_read_back(mod):
    for a in ill_corpus(60, depth=3, seed=11):
        i = interpret(a, mod)
        back = read_interpreted(json.loads(dumps(interpreted_doc(i))))
        assert back == i
        if i.inner is not None:
            assert back.inner == i.inner


def test_dumps_is_stable():
    assert dumps({"b": 1, "a": [2]}) == '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'


def test_rejects_other_documents():
    with pytest.raises(ValueError):
        read_extraction({"kind": "something else"})
