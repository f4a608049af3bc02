"""A 60-vertex Cayley graph of A5 of valency 11 from PSL(2,11) = A5 Z11.

PSL(2,11) acts on the 11 cosets of an A5.  An 11-cycle is then transitive,
so every element factors through the point stabilizer and the cycle.
Taking H = <11-cycle> as the vertex stabilizer, each vertex has 11
neighbours and the point stabilizer A5 acts regularly on the 60 vertices.
"""

from cgtkit.atlas import builtin
from cgtkit.cosetgraph import arc_transitivity_check, build_graph_with_action, graph_props
from cgtkit.searcher import SearchTask, remark_search
from cgtkit.stabchain import PermGroup, coset_action, factorization_check

g = builtin("PSL2_11_deg11")
eleven = next(t for t in g.elements() if t.order() == 11)
h = PermGroup([eleven], 11)
print("G = T.H:", factorization_check(g, h))

result = remark_search(SearchTask(h, 11, ambient=g, target_order=660))
hit = result.surviving[0]
graph, action = build_graph_with_action(hit.spec)
props = graph_props(graph)
print(f"{props.vertex_count} vertices, valency {props.valency}, connected {props.connected}")
print("arc-transitive:", arc_transitivity_check(action, graph))

t = hit.point_stab
t_on_vertices = coset_action(g, h).image_group(t)
regular = t_on_vertices.is_transitive() and t_on_vertices.order() == graph.vertex_count
print(f"|T| = {t.order()}, simple: {hit.point_stab_simple.verdict}, regular on vertices: {regular}")
