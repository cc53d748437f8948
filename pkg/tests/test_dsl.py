import pytest
from hypothesis import given, settings, strategies as st

from csystems import dsl, fixtures

ALL = fixtures.fixture_names() + fixtures.fixture_names("faults")


def test_empty_document():
    doc = dsl.parse("")
    assert doc.blocks == [] and dsl.print_doc(doc) == ""


@pytest.mark.parametrize("name", ALL)
def test_round_trip_fixpoint(name):
    text = fixtures.fixture_text(name)
    printed = dsl.print_doc(dsl.parse(text))
    assert printed == dsl.normalize(text)
    assert dsl.print_doc(dsl.parse(printed)) == printed


TABLE = """[category]
objects = A B
morphism f : A -> B
"""


def test_table_category_gets_identities():
    doc = dsl.parse(TABLE)
    t = doc.table
    assert t.identities == {"A": "id.A", "B": "id.B"}
    assert t.composition[("id.A", "f")] == "f"


def errors(text):
    with pytest.raises(dsl.ParseError) as e:
        dsl.parse(text)
    return e.value


def test_duplicate_object_names_both_locations():
    e = errors("[category]\nobjects = A B A\n")
    assert "'A'" in e.msg and "2:11" in e.msg and "2:15" in e.msg
    assert (e.line, e.col) == (2, 15)


def test_duplicate_morphism_names_both_locations():
    e = errors(TABLE + "morphism f : B -> B\n")
    assert "'f'" in e.msg and "3:10" in e.msg and e.line == 4


def test_unresolved_id():
    e = errors(TABLE + "morphism g : A -> C\n")
    assert "unresolved object id 'C'" in e.msg and (e.line, e.col) == (4, 19)


def test_non_total_composition():
    e = errors(TABLE + "morphism g : B -> A\n")
    assert "non-total" in e.msg


def test_syntax_errors_have_positions():
    assert errors("objects = A\n").line == 1
    assert errors("[nope]\n").msg.startswith("unknown block")
    assert errors("[finset]\nK = two\n").line == 2
    e = errors("[finset]\nK = 2\n[finset]\n")
    assert "duplicate block" in e.msg and e.line == 3


def test_universe_typing():
    text = TABLE + "\n[universe]\nU = B\nUt = A\np = id.A\n"
    assert "Ut -> U" in errors(text).msg
    ok = TABLE + "\n[universe]\nU = B\nUt = A\np = f\n"
    assert dsl.parse(ok).block("universe").get("p") == "f"


def test_suite_parameters_checked():
    assert "bad check parameter" in errors("[suite]\ncheck all n=x\n").msg


def test_comments_and_spacing_do_not_matter():
    a = dsl.parse("[finset]\nK   =  2   # two\n\n\n[universe]\nsizes = 0 1 2\n")
    b = dsl.parse("[finset]\nK = 2\n[universe]\nsizes = 0 1 2")
    assert dsl.print_doc(a) == dsl.print_doc(b)


ident = st.from_regex(r"[a-z][a-z0-9]{0,4}", fullmatch=True)


@st.composite
def table_docs(draw):
    names = draw(st.lists(ident, min_size=1, max_size=4, unique=True))
    lines = ["# generated", "[category]", "objects = " + "   ".join(names)]
    pad = draw(st.sampled_from(["", " ", "\t"]))
    lines.append(pad + "kind = table" + pad)
    return "\n".join(lines) + draw(st.sampled_from(["", "\n", "\n\n"]))


@settings(max_examples=60, deadline=None)
@given(table_docs())
def test_round_trip_property(text):
    printed = dsl.print_doc(dsl.parse(text))
    assert printed == dsl.normalize(text)
    assert dsl.print_doc(dsl.parse(printed)) == printed
