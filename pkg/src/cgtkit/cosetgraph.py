"""Coset graphs Cos(G, H, x), their predicates, and quotient graphs.

Vertices of Cos(G, H, x) are the right cosets ``Hg``; ``Hg ~ Hg'`` iff
``g' g^-1 in HxH``.  The neighbours of the base vertex ``H`` are the cosets
``Hxh`` (h in H), i.e. the orbit of ``Hx`` under H acting on cosets, and
the neighbours of ``Hw`` are those cosets translated by w.  So only the
coset action of G is ever materialized, never the double coset HxH.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .backtrack import intersection
from .errors import (
    BrokenSymmetry,
    DegenerateQuotient,
    NotAnAutomorphism,
    NotASubgroup,
    NotTransitive,
    TooManyVertices,
    XInsideH,
)
from .numtower import factorize, p_part
from .perm import Permutation, mul
from .stabchain import PermGroup, coset_action

__all__ = [
    "CosetSpec",
    "SpecReport",
    "Graph",
    "GraphProps",
    "QuotientReport",
    "RPartReport",
    "analyze_spec",
    "build_graph",
    "build_graph_with_action",
    "quotient_graph",
    "graph_props",
    "stabilizer_rpart_check",
    "arc_transitivity_check",
    "is_automorphism",
]


def _is_two_power(n: int) -> bool:
    return n & (n - 1) == 0


@dataclass
class CosetSpec:
    g: PermGroup
    h: PermGroup
    x: Permutation
    arc_stab: PermGroup
    valency: int
    vertex_count: int


@dataclass
class SpecReport:
    """Predicates of a coset-graph spec; nothing here builds the graph."""

    spec: CosetSpec
    valency: int
    vertex_count: int
    arc_stab_order: int
    connected: bool
    undirected_ok: bool
    x_normalizes_arc_stab: bool
    x_is_2_element: bool

    def to_dict(self) -> dict:
        return {
            "valency": self.valency,
            "vertex_count": str(self.vertex_count),
            "arc_stab_order": str(self.arc_stab_order),
            "connected": self.connected,
            "undirected_ok": self.undirected_ok,
            "x_normalizes_arc_stab": self.x_normalizes_arc_stab,
            "x_is_2_element": self.x_is_2_element,
            "x": str(self.spec.x),
        }


def analyze_spec(g: PermGroup, h: PermGroup, x: Permutation, check_subgroup: bool = True) -> SpecReport:
    """Valency and connectivity of Cos(g, h, x), plus an undirectedness witness.

    ``check_subgroup=False`` skips the membership checks when the caller
    already knows ``h <= g`` and ``x in g``.
    """
    if check_subgroup:
        if not h.is_subgroup_of(g):
            raise NotASubgroup("h is not contained in g")
        if not g.contains(x):
            raise NotASubgroup("x is not an element of g")
    if h.contains(x):
        raise XInsideH("x lies in h; the coset graph is degenerate")
    hx = h.conjugate(x)
    arc = intersection(h, hx)
    horder = h.order()
    valency = horder // arc.order()
    gorder = g.order()
    connected = h.closure([x]).order() == gorder
    x2 = x * x
    undirected = arc.contains(x2)
    normalizes = all(arc.contains(Permutation(t, check=False).conjugate(x)) for t in arc.gens)
    spec = CosetSpec(g, h, x, arc, valency, gorder // horder)
    return SpecReport(
        spec=spec,
        valency=valency,
        vertex_count=spec.vertex_count,
        arc_stab_order=arc.order(),
        connected=connected,
        undirected_ok=undirected,
        x_normalizes_arc_stab=normalizes,
        x_is_2_element=_is_two_power(x.order()),
    )


# ---------------------------------------------------------------------------


class Graph:
    """Finite simple undirected graph on 0..n-1 with sorted adjacency lists."""

    __slots__ = ("vertex_count", "adjacency")

    def __init__(self, vertex_count: int, adjacency: Sequence[Iterable[int]]):
        if len(adjacency) != vertex_count:
            raise ValueError("adjacency length differs from vertex count")
        adj = tuple(tuple(sorted(set(a))) for a in adjacency)
        for v, nb in enumerate(adj):
            for u in nb:
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                if not 0 <= u < vertex_count or v not in adj[u]:
                    raise ValueError(f"adjacency not symmetric at edge {v}-{u}")
        self.vertex_count = vertex_count
        self.adjacency = adj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj: list[set] = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_json(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in self.edges()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_edges(int(data["n"]), data["edges"])

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    @classmethod
    def from_edge_list(cls, n: int, text: str) -> "Graph":
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                u, v = line.split()
                edges.append((int(u), int(v)))
        return cls.from_edges(n, edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __repr__(self):
        return f"<Graph n={self.vertex_count} edges={len(self.edges())}>"


def _coset_rep_perms(act_gens: Sequence[tuple], n: int) -> list[tuple]:
    """For each vertex i, a product of generator images sending 0 to i."""
    ident = tuple(range(n))
    perms: list[Optional[tuple]] = [None] * n
    perms[0] = ident
    queue = [0]
    k = 0
    while k < len(queue):
        v = queue[k]
        k += 1
        for s in act_gens:
            w = s[v]
            if perms[w] is None:
                perms[w] = mul(perms[v], s)
                queue.append(w)
    return perms


def build_graph(spec: CosetSpec, max_vertices: int = 100_000) -> Graph:
    """Materialize Cos(G, H, x) on the right cosets of H (H is vertex 0)."""
    return build_graph_with_action(spec, max_vertices)[0]


def build_graph_with_action(spec: CosetSpec, max_vertices: int = 100_000) -> tuple[Graph, PermGroup]:
    """The graph together with G acting on its vertices."""
    if spec.vertex_count > max_vertices:
        raise TooManyVertices(f"{spec.vertex_count} vertices exceed the cap {max_vertices}")
    act = coset_action(spec.g, spec.h, max_index=max_vertices)
    n = act.degree
    hx = act.coset_of(spec.x)
    himg = act.image_group(spec.h)
    base_nb = sorted(himg.orbit(hx))
    if act.coset_of(~spec.x) not in base_nb:
        raise BrokenSymmetry("HxH differs from Hx^-1H")
    perms = _coset_rep_perms(act.group.gens, n)
    adj = [[p[j] for j in base_nb] for p in perms]
    try:
        graph = Graph(n, adj)
    except ValueError as exc:
        raise BrokenSymmetry(str(exc)) from None
    if any(len(a) != spec.valency for a in graph.adjacency):
        raise BrokenSymmetry("vertex degree differs from the spec valency")
    return graph, act.group


# ---------------------------------------------------------------------------


def is_automorphism(graph: Graph, p) -> bool:
    t = p.images if isinstance(p, Permutation) else tuple(p)
    if len(t) != graph.vertex_count:
        return False
    adj = graph.adjacency
    return all(tuple(sorted(t[w] for w in adj[v])) == adj[t[v]] for v in range(graph.vertex_count))


@dataclass
class GraphProps:
    vertex_count: int
    edge_count: int
    regular: bool
    valency: Optional[int]
    connected: bool
    bipartite: bool
    complete: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def graph_props(graph: Graph) -> GraphProps:
    n = graph.vertex_count
    degs = {len(a) for a in graph.adjacency}
    regular = len(degs) <= 1
    valency = next(iter(degs)) if regular and n else (0 if n == 0 else None)
    color = [-1] * n
    bipartite = True
    components = 0
    for s in range(n):
        if color[s] >= 0:
            continue
        components += 1
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in graph.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    edges = sum(len(a) for a in graph.adjacency) // 2
    return GraphProps(
        vertex_count=n,
        edge_count=edges,
        regular=regular,
        valency=valency,
        connected=components <= 1,
        bipartite=bipartite,
        complete=edges == n * (n - 1) // 2,
    )


@dataclass
class QuotientReport:
    quotient: Graph
    orbits: list[list[int]]
    semiregular: bool
    valency_preserved: bool
    original_valency: Optional[int]
    quotient_valency: Optional[int]
    k_normal_in_g: Optional[bool] = None
    induced_arc_transitive: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "quotient": self.quotient.to_json(),
            "orbits": self.orbits,
            "semiregular": self.semiregular,
            "valency_preserved": self.valency_preserved,
            "original_valency": self.original_valency,
            "quotient_valency": self.quotient_valency,
            "k_normal_in_g": self.k_normal_in_g,
            "induced_arc_transitive": self.induced_arc_transitive,
        }


def quotient_graph(
    graph: Graph,
    g: Optional[PermGroup],
    k: PermGroup,
    allow_few_orbits: bool = False,
) -> QuotientReport:
    """The quotient by the orbits of ``k``.

    Two orbits are adjacent when some pair of their members is.  At least
    three orbits are required unless ``allow_few_orbits`` is set; a single
    orbit is always rejected.  If ``g`` is given, the report says whether
    ``k`` is normal in ``g`` and, if so, whether the induced action is
    arc-transitive on the quotient.
    """
    for t in k.gens:
        if not is_automorphism(graph, t):
            raise NotAnAutomorphism("a generator of k is not a graph automorphism")
    orbits = k.orbits()
    if len(orbits) < 2 or (len(orbits) < 3 and not allow_few_orbits):
        raise DegenerateQuotient(f"{len(orbits)} orbit(s) give a degenerate quotient")
    where = {}
    for i, o in enumerate(orbits):
        for v in o:
            where[v] = i
    adj: list[set] = [set() for _ in orbits]
    for u, v in graph.edges():
        a, b = where[u], where[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    q = Graph(len(orbits), adj)
    korder = k.order()
    semi = all(len(o) == korder for o in orbits)
    p0, p1 = graph_props(graph), graph_props(q)
    report = QuotientReport(
        quotient=q,
        orbits=orbits,
        semiregular=semi,
        valency_preserved=p0.regular and p1.regular and p0.valency == p1.valency,
        original_valency=p0.valency,
        quotient_valency=p1.valency,
    )
    if g is not None:
        report.k_normal_in_g = k.is_normal_in(g)
        if report.k_normal_in_g:
            induced = PermGroup([tuple(where[t[o[0]]] for o in orbits) for t in g.gens], len(orbits))
            report.induced_arc_transitive = arc_transitivity_check(induced, q)
    return report


@dataclass
class RPartReport:
    vertex: int
    r: int
    stabilizer_order: int
    r_part: int
    max_prime: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "r": self.r,
            "stabilizer_order": str(self.stabilizer_order),
            "r_part": str(self.r_part),
            "max_prime": str(self.max_prime),
            "holds": self.holds,
        }


def stabilizer_rpart_check(g: PermGroup, vertex: int, r: int) -> RPartReport:
    """Whether |G_v|_r = r and r is the largest prime dividing |G_v|."""
    if not g.is_transitive():
        raise NotTransitive("g must be vertex-transitive")
    order = g.stabilizer(vertex).order()
    rp = p_part(order, r)
    mp = max(factorize(order)) if order > 1 else 1
    return RPartReport(vertex, r, order, rp, mp, rp == r and mp == r)


def arc_transitivity_check(g: PermGroup, graph: Graph) -> bool:
    """Vertex-transitive, with the stabilizer of 0 transitive on its neighbours."""
    if g.degree != graph.vertex_count or not g.is_transitive():
        return False
    nb = graph.neighbors(0)
    if not nb:
        return True
    return set(nb) <= set(g.stabilizer(0).orbit(nb[0]))
