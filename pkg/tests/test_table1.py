import pytest
import sympy

from cgtkit.errors import ParseError
from cgtkit.numtower import simple_order
from cgtkit.table1 import TABLE1, Table1Bounds, compile_condition, enumerate_table1

LINE1_TEX = r"r\div n, r^2\nmid n, n\mbox{ not  prime}"
LINE3_TEX = r"m\ge 2, mf=2^e>2"


def test_line3_small_bound_gives_two_unitary_instances():
    got = enumerate_table1(3, Table1Bounds.single(4))
    assert {(i.L.name, i.T.name, i.r) for i in got} == {
        ("PSU_4(4)", "PSU_3(4)", 17),
        ("PSU_8(2)", "PSU_7(2)", 17),
    }


def test_line3_rejects_mf_two():
    got = enumerate_table1(3, Table1Bounds(exp_max=8))
    products = {int(i.params["m"]) * int(i.params["f"]) for i in got}
    assert 2 not in products
    assert products == {4, 8}
    assert {i.r for i in got} == {17, 257}


def test_line1_includes_a14():
    got = enumerate_table1(1, Table1Bounds(n_max=30))
    assert any(i.L.name == "A_14" and i.T.name == "A_13" and i.r == 7 for i in got)


def test_line1_matches_brute_force():
    got = {(i.r, int(i.params["n"])) for i in enumerate_table1(1, Table1Bounds(n_max=30))}
    expect = {
        (r, n)
        for r in sympy.primerange(7, 30)
        for n in range(2, 31)
        if n % r == 0 and n % (r * r) and not sympy.isprime(n)
    }
    assert got == expect


def test_condition_text_is_verbatim():
    assert enumerate_table1(1, Table1Bounds(n_max=14))[0].condition_tex == LINE1_TEX
    assert enumerate_table1(3, Table1Bounds(exp_max=4))[0].condition_tex == LINE3_TEX


def test_every_instance_has_prime_r_and_a_witness():
    conditions = {spec.row: spec.conditions for spec in TABLE1}
    for inst in enumerate_table1("all"):
        assert sympy.isprime(inst.r) and inst.r >= 7
        assert all(inst.checks.values()), inst.to_dict()
        assert len(inst.witness) == len(conditions[inst.row])


def test_all_lines_are_tabulated():
    assert sorted({spec.line for spec in TABLE1}) == list(range(1, 18))


def test_alternating_index_is_r():
    for inst in enumerate_table1(1, Table1Bounds(n_max=30)):
        n = int(inst.params["n"])
        assert simple_order("Alt", n) // simple_order("Alt", n - 1) == n


@pytest.mark.parametrize("text", ["__import__('os')", "n.real", "[1, 2]", "lambda: 1", "n if n else 1", "1.5 < n"])
def test_condition_language_rejects_other_constructs(text):
    with pytest.raises(ParseError):
        compile_condition(text)
