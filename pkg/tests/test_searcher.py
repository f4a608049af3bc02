import json
from importlib import resources

import jsonschema
import pytest

from cgtkit.atlas import builtin
from cgtkit.cosetgraph import analyze_spec, arc_transitivity_check, build_graph_with_action, graph_props
from cgtkit.errors import AmbientTooLarge, InvalidParams, NoHallSubgroupFound, UnknownClaim
from cgtkit.perm import parse_cycles
from cgtkit.schemas import load_schema
from cgtkit.searcher import (
    SearchBudget,
    SearchTask,
    claim_ids,
    hall_rprime_subgroup,
    hall_rprime_subgroups,
    load_registry,
    remark_search,
    reproduce_claim,
)
from cgtkit.stabchain import PermGroup, coset_action, factorization_check, symmetric_group

F21 = ("(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)")


def grp(n, *cycles):
    return PermGroup([parse_cycles(c, n) for c in cycles], n)


def test_hall_subgroup_of_f21():
    k = hall_rprime_subgroup(grp(7, *F21), 7)
    assert k.order() == 3


def test_hall_subgroup_of_psl32():
    h = builtin("PSL3_2")
    assert hall_rprime_subgroup(h, 7).order() == 24
    classes = hall_rprime_subgroups(h, 7)
    assert [k.order() for k in classes] == [24, 24]


def test_hall_subgroup_of_s5_with_a_fixed_point():
    h = symmetric_group(5)
    h6 = PermGroup([parse_cycles(str(g), 6) for g in h.generators], 6)
    k = hall_rprime_subgroup(h6, 5)
    assert k.order() == 24 and k.is_subgroup_of(h6)


def test_hall_subgroup_of_cyclic_group_is_trivial():
    assert hall_rprime_subgroup(grp(7, "(1,2,3,4,5,6,7)"), 7).order() == 1


def test_missing_hall_subgroup_is_reported_as_not_found():
    # PSL(2,8) has order 504 but no subgroup of order 72
    with pytest.raises(NoHallSubgroupFound):
        hall_rprime_subgroups(builtin("PSL2", q=8), 7, tries=30)


def test_task_validation():
    z5 = grp(5, "(1,2,3,4,5)")
    with pytest.raises(InvalidParams):
        SearchTask(z5, 4)
    with pytest.raises(InvalidParams):
        SearchTask(z5, 3)
    with pytest.raises(InvalidParams):
        SearchTask(z5, 5, mode="lucky")
    with pytest.raises(InvalidParams):
        SearchTask(grp(6, "(1,2,3,4,5)"), 5)
    with pytest.raises(InvalidParams):
        SearchTask(grp(25, "(" + ",".join(map(str, range(1, 26))) + ")"), 5)


def test_exhaustive_degree_cap():
    task = SearchTask(grp(5, "(1,2,3,4,5)"), 5, budget=SearchBudget(max_degree=4))
    with pytest.raises(AmbientTooLarge):
        remark_search(task)


def test_z5_in_a5_finds_a5_with_non_simple_stabilizer():
    res = remark_search(SearchTask(grp(5, "(1,2,3,4,5)"), 5))
    assert res.exhaustive and res.hits
    hit = res.hits[0]
    assert hit.generated_order == 60 and hit.generated_simple.is_simple
    assert hit.point_stab.order() == 12
    assert hit.point_stab_simple.verdict == "not_simple"
    assert hit.conditions["point_stab_simple"] is False and not hit.survives
    assert res.status == "not exists"


def test_randomized_empty_result_names_budget_and_seed():
    task = SearchTask(grp(5, "(1,2,3,4,5)"), 5, mode="randomized", seed=3, budget=SearchBudget(samples=0))
    res = remark_search(task)
    assert not res.exhaustive
    assert res.status == "not found (budget 0 samples, seed 3)"


def _check_hit(task, hit):
    h = task.h
    assert not h.contains(hit.x)
    order = hit.x.order()
    assert order & (order - 1) == 0
    assert hit.k.contains(hit.x * hit.x)
    assert hit.spec.valency == task.r
    rep = analyze_spec(hit.generated, h, hit.x)
    assert rep.connected and rep.undirected_ok and rep.valency == task.r
    graph, action = build_graph_with_action(rep.spec)
    assert graph_props(graph).valency == task.r
    assert arc_transitivity_check(action, graph)
    assert coset_action(hit.generated, h).degree == graph.vertex_count
    if hit.conditions["factorization"] is not None:
        assert hit.conditions["factorization"] == factorization_check(hit.generated, h)


@pytest.mark.parametrize("cycles", [("(1,2,3,4,5,6,7)",), F21])
def test_a7_hits_satisfy_the_certificate(cycles):
    task = SearchTask(grp(7, *cycles), 7, target_order=2520)
    res = remark_search(task)
    assert res.exhaustive and res.status == "exists"
    for hit in res.hits:
        _check_hit(task, hit)
    assert all(h.generated_order == 2520 for h in res.surviving)


@pytest.mark.parametrize("cycles, r", [(("(1,2,3,4,5)",), 5), (("(1,2,3,4,5,6,7)",), 7), (F21, 7)])
def test_exhaustive_signatures_do_not_depend_on_seed(cycles, r):
    h = grp(len(cycles[0].split(",")), *cycles)
    sigs = [sorted(s.signature for s in remark_search(SearchTask(h, r, seed=seed)).hits) for seed in (0, 1, 7)]
    assert sigs[0] == sigs[1] == sigs[2]


def test_result_json_matches_schema():
    res = remark_search(SearchTask(grp(7, *F21), 7))
    data = json.loads(json.dumps(res.to_dict()))
    jsonschema.validate(data, load_schema("search"))


def test_claim_registry():
    raw = json.loads(resources.files("cgtkit").joinpath("data", "claims.json").read_text())
    jsonschema.validate(raw, load_schema("registry"))
    assert set(load_registry()) == {c["id"] for c in raw["claims"]}
    assert set(claim_ids()) == {
        "ZSIG_TABLE",
        "LEMMA_R",
        "TABLE1_SANITY",
        "K12_FROM_M12",
        "PSL2_11_CAYLEY",
        "ALT7_R7",
        "ALT21_R7",
        "M24_PSL32",
    }
    with pytest.raises(UnknownClaim):
        reproduce_claim("NO_SUCH_CLAIM")


@pytest.mark.parametrize("claim", ["ZSIG_TABLE", "LEMMA_R", "TABLE1_SANITY", "PSL2_11_CAYLEY", "K12_FROM_M12"])
def test_quick_claims_pass(claim):
    rep = reproduce_claim(claim)
    assert rep.passed, rep.notes
    jsonschema.validate(json.loads(json.dumps(rep.to_dict())), load_schema("claim"))
