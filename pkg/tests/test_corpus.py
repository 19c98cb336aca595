import pytest

from kprime import corpus
from kprime.ktheory import burnside_report, compute
from kprime.monoid import finite_length, is_pc_monoid, units
from kprime.nset import classify_nset

ENTRIES = corpus.CORPUS


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: e.name)
def test_file_round_trips_bit_exactly(e):
    text = e.path.read_text()
    obj = e.load()
    assert corpus.serialize(obj) == text
    assert corpus.serialize(corpus.build(e)) == text


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: e.name)
def test_expectations_have_provenance(e):
    assert e.expected
    for prop, (value, note) in e.expected.items():
        assert isinstance(note, str) and note


@pytest.mark.parametrize("e", [e for e in ENTRIES if e.kind == "monoid"], ids=lambda e: e.name)
def test_monoid_expectations(e):
    A = e.load()
    exp = {k: v for k, (v, _) in e.expected.items()}
    assert bool(is_pc_monoid(A)) == exp["pc"]
    assert len(units(A)) == exp["units"]
    if exp["pc"]:
        assert finite_length(A) == exp["length"]
    if "k0_rank" in exp:
        _, group, _ = compute(A, "pc", exp.get("k0_bound", 4))
        assert group.free_rank == exp["k0_rank"] and not group.torsion


@pytest.mark.parametrize("e", [e for e in ENTRIES if e.kind == "group"], ids=lambda e: e.name)
def test_group_expectations(e):
    G = e.load()
    rep = burnside_report(G.table, G.name)
    assert rep["rank"] == e.expected["burnside_rank"][0]
    if "marks" in e.expected:
        assert rep["marks"] == e.expected["marks"][0]


@pytest.mark.parametrize("e", [e for e in ENTRIES if e.kind == "nset"], ids=lambda e: e.name)
def test_nset_expectations(e):
    X = e.load()
    exp = {k: v for k, (v, _) in e.expected.items()}
    if "rooted_tree" in exp:
        assert classify_nset(X).rooted_tree == exp["rooted_tree"]
    if "loops" in exp:
        assert list(classify_nset(X).loops) == exp["loops"]
    if "tails" in exp:
        assert len(X.tails) == exp["tails"]


def test_write_corpus_matches_shipped(tmp_path):
    corpus.write_corpus(tmp_path)
    for e in ENTRIES:
        assert (tmp_path / e.file).read_text() == e.path.read_text()


def test_required_coverage():
    names = {e.name for e in ENTRIES}
    for n in ("f1", "ntr2", "ntr3", "ntr4", "proto1", "proto2", "proto3", "z2", "z3", "z4", "s3", "twisted", "idempotent"):
        assert n in names
    assert sum(e.kind == "nset" for e in ENTRIES) >= 5
