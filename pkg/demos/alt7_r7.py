"""Valency 7 inside A7: H = Z7 and H = F21 = Z7:Z3.

Both searches are exhaustive over the cosets of K in N_A7(K), so an empty
answer would be a proof of nonexistence.  For F21 the search finds an
involution x with <F21, x> = A7, which gives a connected arc-transitive
graph of valency 7 on 120 vertices with a solvable vertex stabilizer.
"""

from cgtkit.cosetgraph import build_graph_with_action, graph_props
from cgtkit.perm import parse_cycles
from cgtkit.searcher import SearchTask, remark_search
from cgtkit.stabchain import PermGroup

STABILIZERS = {
    "Z7": ["(1,2,3,4,5,6,7)"],
    "F21": ["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"],
}

for name, gens in STABILIZERS.items():
    h = PermGroup([parse_cycles(c, 7) for c in gens], 7)
    result = remark_search(SearchTask(h, 7, ambient="A", target_order=2520))
    print(f"H = {name}: {result.status} (exhaustive {result.exhaustive}, |N_A7(K)| = {result.normalizer_orders})")
    for hit in result.surviving:
        graph, _ = build_graph_with_action(hit.spec)
        props = graph_props(graph)
        print(f"  x = {hit.x}: {props.vertex_count} vertices, valency {props.valency}, "
              f"connected {props.connected}, T = point stabilizer of order {hit.point_stab.order()}")
