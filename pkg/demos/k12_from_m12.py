"""M12 with vertex stabilizer M11 and r = 11 gives the complete graph K12.

    python demos/k12_from_m12.py
"""

from cgtkit.atlas import builtin
from cgtkit.cosetgraph import build_graph_with_action, graph_props, stabilizer_rpart_check
from cgtkit.searcher import SearchTask, remark_search

m12 = builtin("M12")
h = m12.stabilizer(11)
print(f"|M12| = {m12.order()}, |H| = {h.order()}")

# H is not transitive on the 12 points, so the ambient group is M12 itself
result = remark_search(SearchTask(h, 11, ambient=m12, target_order=m12.order()))
print("status:", result.status, "| exhaustive:", result.exhaustive)

hit = result.surviving[0]
print("x =", hit.x, "| |<x,H>| =", hit.generated_order)
graph, action = build_graph_with_action(hit.spec)
props = graph_props(graph)
print(f"{props.vertex_count} vertices, valency {props.valency}, complete: {props.complete}")

check = stabilizer_rpart_check(action, 0, 11)
print(f"|G_v| = {check.stabilizer_order}, 11-part {check.r_part}, largest prime {check.max_prime}")
