import pytest

from conftest import FIXTURES
from mvskit.catalog import M_AB, M_SAT3, P_ABCD
from mvskit.core import RawTable, check_axioms, mutual_order_congruence
from mvskit.errors import DocumentSemanticError, DocumentSyntaxError
from mvskit.formats import (
    Document,
    MvsBody,
    load_map,
    load_map_data,
    load_mvs,
    load_presentation,
    load_quasimetric,
    load_topology,
    mvs_document,
    parse,
    presentation_document,
    quasimetric_document,
    read_document,
    relation_document,
    serialize,
    to_presentation,
    to_raw_table,
    to_relation,
    to_topology,
    topology_document,
)
from mvskit.topology import canonical_quasimetric, induced_topology

ALL_FIXTURES = sorted(p.name for p in FIXTURES.iterdir() if p.is_file())


def test_parse_magma_example():
    doc = parse("mvs\nelems e a b\nrow e: e a b\nrow a: a b a\nrow b: b a b\n")
    assert doc == Document("mvs", MvsBody(("e", "a", "b"),
                                          (("e", "a", "b"), ("a", "b", "a"), ("b", "a", "b"))))
    raw = to_raw_table(doc)
    assert raw == RawTable(("e", "a", "b"), ((0, 1, 2), (1, 2, 1), (2, 1, 2)))


def test_missing_row_is_semantic_error():
    with pytest.raises(DocumentSemanticError, match="table not square"):
        parse("mvs\nelems e a\nrow e: e a\n")


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as exc:
        parse("mvs\nelems e a\nrow e e a\nrow a: a a\n")
    assert (exc.value.line, exc.value.col) == (3, 7)


def test_unknown_kind():
    with pytest.raises(DocumentSyntaxError) as exc:
        parse("# header\nwidget\n")
    assert exc.value.line == 2


def test_comments_and_blank_lines():
    doc = parse("presentation  # words\n\nletters a b\nrel a b ~ b  # absorb\n")
    assert to_presentation(doc).relations == (("a", "b", "b"),)


def test_sat3_fixture_validates():
    M = load_mvs(FIXTURES / "m_sat3.mvs")
    assert M.table == M_SAT3.table


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_round_trip(name):
    text = (FIXTURES / name).read_text()
    doc = parse(text)
    assert serialize(doc) == text
    assert parse(serialize(doc)) == doc


def test_domain_round_trips():
    assert to_raw_table(parse(serialize(mvs_document(M_AB)))) == M_AB.raw()
    R = mutual_order_congruence(M_AB)
    assert to_relation(parse(serialize(relation_document(R, M_AB))), M_AB) == R
    T = induced_topology(canonical_quasimetric(M_SAT3))
    assert to_topology(parse(serialize(topology_document(T)))) == T
    assert to_presentation(parse(serialize(presentation_document(P_ABCD)))) == P_ABCD


def test_quasimetric_round_trip(tmp_path):
    (tmp_path / "m.mvs").write_text(serialize(mvs_document(M_SAT3)))
    q = canonical_quasimetric(M_SAT3)
    (tmp_path / "q.qm").write_text(serialize(quasimetric_document(q, "m.mvs")))
    assert load_quasimetric(tmp_path / "q.qm") == q


def test_relation_is_literal():
    R = to_relation(read_document(FIXTURES / "merge12_sat3.rel"), M_SAT3)
    assert R.is_equivalence()
    half = to_relation(parse("relation\npairs 0 0\npairs 1 2\n"), M_SAT3)
    assert not half.is_reflexive()


def test_loaders():
    h = load_map(FIXTURES / "collapse.map")
    assert h.mapping == (0, 1, 1)
    dom, cod, mapping = load_map_data(FIXTURES / "bad_h1.map")
    assert mapping[1] == 0
    assert load_presentation(FIXTURES / "p_abcd.pres") == P_ABCD
    assert load_topology(FIXTURES / "discrete3.top").n == 3
    assert check_axioms(to_raw_table(read_document(FIXTURES / "z2.mvs"))).failed_axioms() == ["M3"]


def test_semantic_errors():
    with pytest.raises(DocumentSemanticError):
        read_document(FIXTURES / "does_not_exist.mvs")
    with pytest.raises(DocumentSemanticError):
        to_relation(parse("relation\npairs 0 9\n"), M_SAT3)
    with pytest.raises(DocumentSemanticError):
        to_raw_table(parse("presentation\nletters a\n"))
