"""PSL(3,2) on 24 points, r = 7: two classes of S4, one graph in M24.

PSL(3,2) has two conjugacy classes of subgroups S4, both of index 7.  For
each class the search runs over N_A24(S4) modulo S4.  Both classes lead
to subgroups of order |M24|, but they give the same signature, so only
one graph survives.  Inside the generated M24 the two S4 classes have
normalizers of orders 24 and 48.
"""

from cgtkit.atlas import builtin
from cgtkit.backtrack import normalizer
from cgtkit.searcher import SearchTask, hall_rprime_subgroups, remark_search

h = builtin("PSL3_2_deg24")
classes = hall_rprime_subgroups(h, 7)
print("Hall 7'-subgroups of PSL(3,2):", [k.order() for k in classes])

result = remark_search(SearchTask(h, 7, ambient="A", target_order=244823040))
print("status:", result.status, "| |N_A24(K)| per class:", result.normalizer_orders)
print("surviving signatures:", len(result.surviving_signatures))

hit = result.surviving[0]
print("|<x,H>| =", hit.generated_order, "| found from classes", sorted(hit.classes))
for i, k in enumerate(classes):
    print(f"  class {i}: |N_<x,H>(K)| = {normalizer(hit.generated, k).order()}")
