"""Backtrack searches for subgroups defined by a property.

Normalizers and centralizers, like intersections, are found by one
driver: a bottom-up subgroup search along a fixed branch order of the
points.  The ambient group's stabilizer chain uses that order as its base,
so each node of the tree is a coset of a pointwise stabilizer and the
images allowed at the next point are read off the chain.  On top of that,
a property-specific propagator narrows the allowed images:

* normalizer of K: for each generator k of K, the candidates for ``k^x``
  are the elements of K with the cycle type of k.  Every assigned pair
  ``(a, a^k) -> (a^x, a^(kx))`` filters the candidates; once a single
  candidate remains, the images along k-edges are forced.
* centralizer: the same mechanism with the single candidate ``k`` itself.
* intersection with H: H's chain with the same base restricts each image
  to the current H-coset.

Points also carry a label (K-orbit length and the element orders of the
point stabilizer in K), which any normalizing element must preserve.

The driver keeps a subgroup L of known solutions.  At level i it only
searches for base images not already in an orbit of ``L`` restricted to
the pointwise stabilizer of the first i branch points, so every solution
found enlarges L and every failed search rules out a whole orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import BudgetExceeded, DegreeMismatch, NotASubgroup
from .perm import Permutation, cycle_type_of, inv, mul, order_of
from .stabchain import PermGroup

__all__ = [
    "normalizer",
    "centralizer",
    "intersection",
    "RefinementState",
    "SearchStats",
    "DEFAULT_BUDGET",
    "last_stats",
]

DEFAULT_BUDGET = 10**8
_ENUM_LIMIT = 200_000


@dataclass
class SearchStats:
    nodes: int = 0
    dfs_calls: int = 0
    solutions: int = 0
    pruned_orbits: int = 0


@dataclass
class RefinementState:
    """Ordered partition of the domain by point label, and the branch order."""

    cells: list[list[int]]
    order: list[int]
    depth: int = 0
    stats: SearchStats = field(default_factory=SearchStats)


_LAST: dict[str, Optional[RefinementState]] = {"state": None}


def last_stats() -> Optional[RefinementState]:
    """Refinement state of the most recent search in this process."""
    return _LAST["state"]


class _Budget(Exception):
    pass


# ---------------------------------------------------------------------------
# propagators


class _Trivial:
    def initial(self):
        return None

    def allowed(self, o, img, state):
        return None

    def update(self, o, gamma, img, state):
        return state

    def accept(self, x) -> bool:
        return True


class _PhiProp:
    """Candidate images of each generator under conjugation."""

    def __init__(self, kgens: list[tuple], phi: list[list[tuple]], accept):
        self.k = kgens
        self.kinv = [inv(k) for k in kgens]
        self.phi0 = [[(c, inv(c)) for c in cands] for cands in phi]
        self._accept = accept

    def initial(self):
        return tuple(self.phi0)

    def allowed(self, o, img, state):
        res = None
        for i, k in enumerate(self.k):
            a = self.kinv[i][o]
            ia = img[a]
            if ia >= 0:
                s = {c[ia] for c, _ in state[i]}
                res = s if res is None else res & s
            b = k[o]
            ib = img[b]
            if ib >= 0:
                s = {ci[ib] for _, ci in state[i]}
                res = s if res is None else res & s
            if res is not None and not res:
                return res
        return res

    def update(self, o, gamma, img, state):
        new = list(state)
        for i, k in enumerate(self.k):
            ia = img[self.kinv[i][o]]
            ib = img[k[o]]
            if ia < 0 and ib < 0:
                continue
            lst = state[i]
            if ia >= 0:
                lst = [cc for cc in lst if cc[0][ia] == gamma]
            if ib >= 0:
                lst = [cc for cc in lst if cc[0][gamma] == ib]
            if not lst:
                return None
            new[i] = lst
        return tuple(new)

    def accept(self, x) -> bool:
        return self._accept(x)


class _ChainProp:
    """Membership in a second group whose chain shares the branch order."""

    def __init__(self, chain, depth_points: Sequence[int]):
        self.chain = chain
        self.level = {p: i for i, p in enumerate(chain.base)}

    def initial(self):
        return self.chain._id

    def allowed(self, o, img, state):
        i = self.level.get(o)
        if i is None:
            return None
        return {state[d] for d in self.chain.transversals[i]}

    def update(self, o, gamma, img, state):
        i = self.level.get(o)
        if i is None:
            return state
        h = state
        hinv = inv(h)
        d = hinv[gamma]
        u = self.chain.transversals[i].get(d)
        if u is None:
            return None
        return mul(u, h)

    def accept(self, x) -> bool:
        return self.chain.contains(x)


# ---------------------------------------------------------------------------
# driver


class _SubgroupSearch:
    def __init__(self, g: PermGroup, order: list[int], labels: list, prop, seeds: list[tuple], budget: int):
        self.g = g
        self.n = g.degree
        self.order = order
        self.labels = labels
        self.prop = prop
        self.budget = budget
        self.stats = SearchStats()
        self.gch = g.chain_with_base(order)
        sizes = [len(t) for t in self.gch.transversals]
        self.depth = max((i + 1 for i, s in enumerate(sizes) if s > 1), default=0)
        self.found: list[tuple] = []
        for s in seeds:
            if s != self.gch._id and not self._in_L(s):
                self._add(s)

    def _L(self) -> PermGroup:
        return PermGroup(self.found, self.n)

    def _in_L(self, x) -> bool:
        return bool(self.found) and self._L().contains(x)

    def _add(self, x):
        self.found.append(x)
        self._Lchain = None

    def _L_orbit(self, level: int, point: int) -> set:
        if not self.found:
            return {point}
        if getattr(self, "_Lchain", None) is None:
            self._Lchain = self._L().chain_with_base(self.order)
        gens = self._Lchain.stabilizer_gens(level)
        seen = {point}
        stack = [point]
        while stack:
            p = stack.pop()
            for s in gens:
                q = s[p]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    def _prefix(self, level: int):
        img = [-1] * self.n
        state = self.prop.initial()
        for o in self.order[:level]:
            img[o] = o
            state = self.prop.update(o, o, img, state)
            if state is None:
                return img, None
        return img, state

    def _dfs(self, j: int, g: tuple, state, img: list) -> Optional[tuple]:
        self.stats.nodes += 1
        if self.stats.nodes > self.budget:
            raise _Budget()
        if j == self.depth:
            return g if self.prop.accept(g) else None
        o = self.order[j]
        allowed = self.prop.allowed(o, img, state)
        if allowed is not None and not allowed:
            return None
        lab = self.labels[o]
        cands = []
        for d, u in self.gch.transversals[j].items():
            gamma = g[d]
            if self.labels[gamma] != lab:
                continue
            if allowed is not None and gamma not in allowed:
                continue
            cands.append((gamma, u))
        cands.sort()
        for gamma, u in cands:
            img[o] = gamma
            st = self.prop.update(o, gamma, img, state)
            if st is not None:
                r = self._dfs(j + 1, mul(u, g), st, img)
                if r is not None:
                    img[o] = -1
                    return r
            img[o] = -1
        return None

    def run(self) -> list[tuple]:
        gorder = self.g.order()
        for level in range(self.depth - 1, -1, -1):
            if self.found and self._L().order() == gorder:
                break
            o = self.order[level]
            delta = sorted(self.gch.transversals[level])
            covered = self._L_orbit(level, o)
            if len(covered) == len(delta):
                continue
            img0, state0 = self._prefix(level)
            if state0 is None:
                continue
            failed: set = set()
            for gamma in delta:
                if gamma in covered or gamma in failed:
                    continue
                if self.labels[gamma] != self.labels[o]:
                    failed.add(gamma)
                    continue
                img = list(img0)
                img[o] = gamma
                st = self.prop.update(o, gamma, img, state0)
                x = None
                if st is not None:
                    self.stats.dfs_calls += 1
                    u = self.gch.transversals[level][gamma]
                    x = self._dfs(level + 1, u, st, img)
                if x is None:
                    self.stats.pruned_orbits += 1
                    failed |= self._L_orbit(level, gamma)
                else:
                    self.stats.solutions += 1
                    self._add(x)
                    covered = self._L_orbit(level, o)
        return self.found


def _result(found: list[tuple], n: int, label: Optional[str] = None) -> PermGroup:
    gens = sorted(found)
    if not gens:
        return PermGroup([], n, label=label, order_hint=1)
    return PermGroup(gens, n, label=label)


def _as_group(k, n: int) -> PermGroup:
    if isinstance(k, Permutation):
        if k.degree != n:
            raise DegreeMismatch("element and group have different degrees")
        return PermGroup([k], n)
    if k.degree != n:
        raise DegreeMismatch("groups have different degrees")
    return k


def _labels(n: int, kgroup: PermGroup, elems: Optional[list[tuple]]) -> list:
    orb_len = {}
    for orb in kgroup.orbits():
        for p in orb:
            orb_len[p] = len(orb)
    if elems is None:
        return [(orb_len[p],) for p in range(n)]
    orders = [order_of(c) for c in elems]
    stab: list[list[int]] = [[] for _ in range(n)]
    for c, oc in zip(elems, orders):
        for p in range(n):
            if c[p] == p:
                stab[p].append(oc)
    return [(orb_len[p], tuple(sorted(stab[p]))) for p in range(n)]


def _branch_order(n: int, kgroup: PermGroup, labels: list) -> list[int]:
    """BFS through K-orbits (smallest label cells first), then the rest."""
    cell_size: dict = {}
    for lab in labels:
        cell_size[lab] = cell_size.get(lab, 0) + 1
    orbits = [o for o in kgroup.orbits() if len(o) > 1]
    orbits.sort(key=lambda o: (cell_size[labels[o[0]]], -len(o), o[0]))
    gens = list(kgroup.gens)
    gens_inv = [inv(k) for k in gens]
    order: list[int] = []
    seen = set()
    for orb in orbits:
        start = orb[0]
        queue = [start]
        seen.add(start)
        k = 0
        while k < len(queue):
            p = queue[k]
            k += 1
            order.append(p)
            for s in gens + gens_inv:
                q = s[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    rest = [p for p in range(n) if p not in seen]
    rest.sort(key=lambda p: (cell_size[labels[p]], p))
    return order + rest


def _cells(labels: list) -> list[list[int]]:
    cells: dict = {}
    for p, lab in enumerate(labels):
        cells.setdefault(lab, []).append(p)
    return sorted(cells.values(), key=lambda c: (len(c), c[0]))


def _run(g, order, labels, prop, seeds, budget, what: str) -> PermGroup:
    search = _SubgroupSearch(g, order, labels, prop, seeds, budget)
    state = RefinementState(_cells(labels), order, search.depth, search.stats)
    _LAST["state"] = state
    try:
        found = search.run()
    except _Budget:
        partial = _result(search.found, g.degree)
        raise BudgetExceeded(
            f"{what}: node budget {budget} exhausted after {search.stats.nodes} nodes", partial
        ) from None
    return _result(found, g.degree)


def _conj(k: tuple, x: tuple) -> tuple:
    return mul(mul(inv(x), k), x)


def normalizer(
    g: PermGroup,
    k: PermGroup,
    budget: int = DEFAULT_BUDGET,
    require_subgroup: bool = False,
) -> PermGroup:
    """N_g(k) = {x in g : k^x = k}.

    ``k`` need not lie in ``g`` unless ``require_subgroup`` is set.
    """
    k = _as_group(k, g.degree)
    if require_subgroup and not k.is_subgroup_of(g):
        raise NotASubgroup("k is not contained in g")
    n = g.degree
    kgens = [t for t in k.gens if t != tuple(range(n))]
    if not kgens:
        return g
    korder = k.order()
    elems = k.element_tuples() if korder <= _ENUM_LIMIT else None
    labels = _labels(n, k, elems)
    kch = k.chain
    if elems is not None:
        by_type: dict = {}
        for c in elems:
            by_type.setdefault(cycle_type_of(c), []).append(c)
        phi = [sorted(by_type.get(cycle_type_of(t), [])) for t in kgens]
    else:
        phi = None

    def accept(x):
        return all(kch.contains(_conj(t, x)) for t in kgens)

    prop = _PhiProp(kgens, phi, accept) if phi is not None else _LeafOnly(accept)
    seeds = [t for t in kgens if g.contains(t)]
    return _run(g, _branch_order(n, k, labels), labels, prop, seeds, budget, "normalizer")


class _LeafOnly(_Trivial):
    def __init__(self, accept):
        self._accept = accept

    def accept(self, x) -> bool:
        return self._accept(x)


def centralizer(
    g: PermGroup,
    k: Union[PermGroup, Permutation],
    budget: int = DEFAULT_BUDGET,
) -> PermGroup:
    """C_g(k) for a subgroup or a single permutation ``k``."""
    k = _as_group(k, g.degree)
    n = g.degree
    kgens = [t for t in k.gens if t != tuple(range(n))]
    if not kgens:
        return g
    elems = k.element_tuples() if k.order() <= _ENUM_LIMIT else None
    labels = _labels(n, k, elems)

    def accept(x):
        return all(_conj(t, x) == t for t in kgens)

    prop = _PhiProp(kgens, [[t] for t in kgens], accept)
    seeds = [t for t in kgens if g.contains(t) and all(mul(t, s) == mul(s, t) for s in kgens)]
    return _run(g, _branch_order(n, k, labels), labels, prop, seeds, budget, "centralizer")


def intersection(g: PermGroup, h: PermGroup, budget: int = DEFAULT_BUDGET) -> PermGroup:
    """g ∩ h by simultaneous membership."""
    if g.degree != h.degree:
        raise DegreeMismatch("groups have different degrees")
    n = g.degree
    if h.is_subgroup_of(g):
        return h
    if g.is_subgroup_of(h):
        return g
    hbase = list(h.chain.base)
    order = hbase + [p for p in range(n) if p not in set(hbase)]
    hch = h.chain_with_base(order)
    prop = _ChainProp(hch, order)
    labels = [0] * n
    seeds = [t for t in g.gens if hch.contains(t)] + [t for t in h.gens if g.contains(t)]
    return _run(g, order, labels, prop, seeds, budget, "intersection")
