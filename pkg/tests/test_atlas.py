import pytest

from cgtkit.atlas import (
    GF,
    atlas_dir,
    builtin,
    catalogue,
    format_record,
    load_group,
    load_record,
    parse_record,
    psl2,
    record_of,
)
from cgtkit.errors import InvalidParams, OrderMismatch, ParseError, UnknownName
from cgtkit.numtower import prime_powers_up_to, simple_order
from cgtkit.stabchain import alternating_group, is_simple_monte_carlo

STORED = {
    "M11": 7920,
    "M12": 95040,
    "M22": 443520,
    "M23": 10200960,
    "M24": 244823040,
    "PSL3_2": 168,
    "PSL3_3": 5616,
    "Sp6_2": 1451520,
}


def test_m12_record_loads_and_verifies():
    g = load_group(atlas_dir() / "M12.grp")
    assert g.order() == 95040 and g.degree == 12 and g.is_transitive()


@pytest.mark.parametrize("name", sorted(STORED))
def test_stored_records_verify_against_formulae(name):
    rec, g = load_record(atlas_dir() / f"{name}.grp")
    assert rec.claimed_order == g.order() == STORED[name]
    assert rec.provenance


def test_constructed_a9_record_round_trips(tmp_path):
    rec = record_of(alternating_group(9), "A9", "built from (1,2,3) and a 9-cycle")
    path = tmp_path / "A9.grp"
    path.write_text(format_record(rec))
    assert load_group(path).order() == 181440
    assert parse_record(path.read_text()) == rec


def test_wrong_order_is_rejected(tmp_path):
    text = (atlas_dir() / "M12.grp").read_text().replace("order 95040", "order 95041")
    path = tmp_path / "bad.grp"
    path.write_text(text)
    with pytest.raises(OrderMismatch):
        load_group(path)


@pytest.mark.parametrize(
    "text, line",
    [
        ("name X\ndegree 3\norder 3\ngen (1,2,3\n", 4),
        ("name X\ndegree 3\norder 3\ncolour red\ngen (1,2,3)\n", 4),
        ("name X\ndegree three\norder 3\ngen (1,2,3)\n", 2),
        ("name X\nname Y\ndegree 3\norder 3\ngen (1,2,3)\n", 2),
        ("name X\ndegree 3\norder 3\ngen (1,2,4)\n", 4),
    ],
)
def test_parse_errors_carry_positions(text, line):
    with pytest.raises(ParseError) as info:
        parse_record(text)
    assert info.value.line == line


def test_missing_fields():
    with pytest.raises(ParseError):
        parse_record("name X\ndegree 3\norder 3\n")
    with pytest.raises(ParseError):
        parse_record("degree 3\norder 3\ngen (1,2)\n")


def test_psl2_on_projective_line():
    g = builtin("PSL2", q=11)
    assert g.degree == 12 and g.order() == 660
    for q in prime_powers_up_to(32):
        if q > 3:
            h = psl2(q)
            assert h.degree == q + 1 and h.order() == simple_order("PSL", 2, q)


def test_small_psl2_orders():
    assert psl2(2).order() == 6 and psl2(3).order() == 12


def test_finite_field_axioms():
    for q in (4, 8, 9, 25, 27):
        f = GF(q)
        for a in range(1, q):
            assert f.mul(a, f.inv(a)) == 1
            assert f.add(a, f.neg(a)) == 0
        powers = {f.pow(f.primitive, k) for k in range(q - 1)}
        assert powers == set(range(1, q))


def test_constructed_builtins():
    assert builtin("Alt", n=5).order() == 60
    assert builtin("S6").order() == 720
    d24 = builtin("PSL3_2_deg24")
    assert d24.degree == 24 and d24.order() == 168 and d24.is_transitive()
    d11 = builtin("PSL2_11_deg11")
    assert d11.degree == 11 and d11.order() == 660


def test_builtin_errors():
    with pytest.raises(UnknownName):
        builtin("Monster")
    with pytest.raises(InvalidParams):
        builtin("PSL2", q=6)
    with pytest.raises(InvalidParams):
        builtin("Alt")


def test_catalogue_lists_records_and_constructions():
    names = {entry["name"] for entry in catalogue()}
    assert {"M24", "A5", "PSL3_2_deg24"} <= names
    for entry in catalogue():
        if entry["name"] in STORED:
            assert int(entry["order"]) == STORED[entry["name"]]


def test_stored_groups_are_simple():
    for name in ("M11", "M12", "PSL3_2", "PSL3_3"):
        v = is_simple_monte_carlo(builtin(name))
        assert v.verdict == "simple" and v.certified


def test_atlas_dir_env_override(tmp_path, monkeypatch):
    text = (atlas_dir() / "M11.grp").read_text().replace("name M11", "name Eleven")
    (tmp_path / "Eleven.grp").write_text(text)
    monkeypatch.setenv("CGTKIT_ATLAS_DIR", str(tmp_path))
    assert builtin("Eleven").order() == 7920
    with pytest.raises(UnknownName):
        builtin("M12")
