"""Stabilizer chains and permutation groups.

A :class:`StabChain` is a base with a strong generating set, built by a
randomized Schreier-Sims pass followed by a deterministic verification that
sifts every Schreier generator.  The result is exact; the seed only changes
which strong generators come out.  Verification is skipped only when the
order reached equals a provable upper bound (the order of the full symmetric
or alternating group on the moved points, or an order the caller already
knows exactly).

:class:`PermGroup` is the user-facing group object.  It builds its chain
lazily and caches derived data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from random import Random
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DegreeMismatch,
    IndexExceedsLimit,
    NotASubgroup,
    NotTransitive,
    PointOutOfRange,
    StepLimit,
    TrivialGroup,
)
from .perm import Permutation, identity_tuple, inv, is_even, mul, order_of

__all__ = [
    "StabChain",
    "PermGroup",
    "CosetAction",
    "SimplicityVerdict",
    "schreier_sims",
    "build_chain",
    "group_order",
    "contains",
    "orbit",
    "point_stabilizer",
    "coset_action",
    "derived_series",
    "DerivedSeries",
    "is_transitive",
    "minimal_block_system",
    "is_simple_monte_carlo",
    "factorization_check",
    "symmetric_group",
    "alternating_group",
]

# consecutive trivial sifts that end the random phase
_RANDOM_STOP = 12


class StabChain:
    """Base and strong generating set with orbit transversals.

    ``transversals[i]`` maps each point of the i-th basic orbit to an
    element ``u`` with ``base[i]^u == point``; level i generators fix
    ``base[:i]`` pointwise.
    """

    def __init__(self, degree: int, base: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[tuple] = []
        self.transversals: list[dict] = []
        self._inverses: list[dict] = []
        self.level_gens: list[list[tuple]] = []
        self._id = identity_tuple(degree)
        for b in base:
            self._new_level(b)

    # -- construction helpers -------------------------------------------

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.transversals.append({point: self._id})
        self._inverses.append({point: self._id})
        self.level_gens.append([])

    def _extend(self, i: int, new: list[tuple]) -> None:
        trans = self.transversals[i]
        invs = self._inverses[i]
        gens = self.level_gens[i]
        queue = []
        for p in list(trans):
            tp = trans[p]
            for s in new:
                q = s[p]
                if q not in trans:
                    u = mul(tp, s)
                    trans[q] = u
                    invs[q] = inv(u)
                    queue.append(q)
        k = 0
        while k < len(queue):
            p = queue[k]
            k += 1
            tp = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    u = mul(tp, s)
                    trans[q] = u
                    invs[q] = inv(u)
                    queue.append(q)

    def _insert(self, h: tuple, j: int) -> None:
        """Add residue ``h`` (which fixes base[:j]) as a strong generator."""
        if j == len(self.base):
            if h == self._id:
                return
            self._new_level(_pick_base_point(h))
        self.strong.append(h)
        for i in range(j + 1):
            self.level_gens[i].append(h)
            self._extend(i, [h])

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        """Strip ``g`` through levels ``start..``; return (residue, level)."""
        h = g
        base = self.base
        for i in range(start, len(base)):
            ui = self._inverses[i].get(h[base[i]])
            if ui is None:
                return h, i
            h = mul(h, ui)
        return h, len(base)

    def add(self, g: tuple) -> bool:
        """Sift ``g`` and insert the residue if nontrivial (no verification)."""
        h, j = self.sift(g)
        if h == self._id:
            return False
        self._insert(h, j)
        return True

    def verify(self) -> None:
        """Make the chain complete by sifting all Schreier generators."""
        i = len(self.base) - 1
        while i >= 0:
            redo = False
            trans = self.transversals[i]
            invs = self._inverses[i]
            for p, u in list(trans.items()):
                for s in list(self.level_gens[i]):
                    q = s[p]
                    sg = mul(mul(u, s), invs[q])
                    if sg == self._id:
                        continue
                    h, j = self.sift(sg, i + 1)
                    if h != self._id:
                        self._insert(h, j)
                        i = j
                        redo = True
                        break
                if redo:
                    break
            if not redo:
                i -= 1

    # -- queries ----------------------------------------------------------

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def orbit_lengths(self) -> list[int]:
        return [len(t) for t in self.transversals]

    def contains(self, g: tuple) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and h == self._id

    def stabilizer_gens(self, level: int) -> list[tuple]:
        """Strong generators of the pointwise stabilizer of base[:level]."""
        if level >= len(self.base):
            return []
        return list(self.level_gens[level])

    def random_element(self, rng: Random) -> tuple:
        g = self._id
        for trans in reversed(self.transversals):
            keys = list(trans)
            g = mul(g, trans[keys[rng.randrange(len(keys))]])
        return g

    def elements(self) -> Iterator[tuple]:
        """All group elements, via products of transversal elements."""
        levels = [list(t.values()) for t in self.transversals]
        if not levels:
            yield self._id
            return
        for combo in product(*reversed(levels)):
            g = self._id
            for u in combo:
                g = mul(g, u)
            yield g


def _pick_base_point(h: tuple) -> int:
    # point in the longest cycle of h, smallest index on ties
    best, best_len = None, 0
    seen = set()
    for i in range(len(h)):
        if h[i] == i or i in seen:
            continue
        j, k = i, 0
        while True:
            seen.add(j)
            j = h[j]
            k += 1
            if j == i:
                break
        if k > best_len:
            best, best_len = i, k
    return best


class _ProductReplacer:
    def __init__(self, gens: list[tuple], rng: Random, degree: int):
        self.rng = rng
        pool = list(gens) if gens else [identity_tuple(degree)]
        while len(pool) < 10:
            pool = pool + pool[: 10 - len(pool)]
        self.pool = pool
        self.acc = identity_tuple(degree)
        for _ in range(40):
            self.next()

    def next(self) -> tuple:
        r = self.rng
        n = len(self.pool)
        i = r.randrange(n)
        j = r.randrange(n - 1)
        if j >= i:
            j += 1
        b = self.pool[j] if r.random() < 0.5 else inv(self.pool[j])
        if r.random() < 0.5:
            self.pool[i] = mul(self.pool[i], b)
        else:
            self.pool[i] = mul(b, self.pool[i])
        self.acc = mul(self.acc, self.pool[i])
        return self.acc


def _support_bound(gens: list[tuple]) -> int:
    moved = set()
    for g in gens:
        moved.update(i for i, j in enumerate(g) if i != j)
    m = len(moved)
    full = math.factorial(m)
    if m >= 2 and all(is_even(g) for g in gens):
        return full // 2
    return full


def schreier_sims(
    degree: int,
    gens: Iterable[tuple],
    base: Sequence[int] = (),
    seed: int = 0,
    known_order: Optional[int] = None,
) -> StabChain:
    """Build a complete stabilizer chain for ``<gens>``.

    ``known_order`` must be the exact group order if given; the random phase
    then runs until it is reached and no verification is needed.
    """
    gens = [g for g in gens if g != identity_tuple(degree)]
    ch = StabChain(degree, base)
    for g in gens:
        ch.add(g)
    if not gens:
        return ch
    target = known_order if known_order is not None else _support_bound(gens)
    if ch.order() == target:
        return ch
    pr = _ProductReplacer(gens, Random(seed), degree)
    misses = 0
    while True:
        if ch.order() == target:
            return ch
        if known_order is None and misses >= _RANDOM_STOP:
            break
        if ch.add(pr.next()):
            misses = 0
        else:
            misses += 1
    ch.verify()
    return ch


# ---------------------------------------------------------------------------


def _as_tuple(p, degree=None) -> tuple:
    if isinstance(p, Permutation):
        t = p.images
    else:
        t = tuple(p)
    if degree is not None and len(t) != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {len(t)}")
    return t


class PermGroup:
    """A permutation group given by generators.

    ``order_hint`` is an exact order known from elsewhere (e.g. a stabilizer
    read off an existing chain); it speeds up chain construction and is
    never used for anything else.
    """

    def __init__(
        self,
        generators: Iterable = (),
        degree: Optional[int] = None,
        label: Optional[str] = None,
        order_hint: Optional[int] = None,
    ):
        gens = [_as_tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in degree-{degree} group")
        self.degree = degree
        self._gens = tuple(gens)
        self.label = label
        self._order_hint = order_hint
        self._chain: Optional[StabChain] = None
        self._based: dict[tuple, StabChain] = {}
        self._orbits = None

    # -- basic ------------------------------------------------------------

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(g, check=False) for g in self._gens)

    @property
    def gens(self) -> tuple[tuple, ...]:
        """Generators as raw image tuples."""
        return self._gens

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = schreier_sims(self.degree, self._gens, seed=0, known_order=self._order_hint)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabChain:
        """A complete chain whose base starts with ``prefix``."""
        key = tuple(prefix)
        ch = self._based.get(key)
        if ch is None:
            ch = schreier_sims(self.degree, self._gens, base=key, seed=0, known_order=self.order())
            self._based[key] = ch
        return ch

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def is_trivial(self) -> bool:
        return all(g == identity_tuple(self.degree) for g in self._gens)

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def contains(self, p) -> bool:
        return self.chain.contains(_as_tuple(p, self.degree))

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self):
        name = self.label or "PermGroup"
        return f"<{name} degree={self.degree} gens={len(self._gens)}>"

    # -- orbits -----------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        out = [point]
        k = 0
        while k < len(out):
            p = out[k]
            k += 1
            for g in self._gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
        return out

    def orbits(self) -> list[list[int]]:
        if self._orbits is None:
            seen = set()
            res = []
            for p in range(self.degree):
                if p not in seen:
                    o = self.orbit(p)
                    seen.update(o)
                    res.append(sorted(o))
            self._orbits = res
        return [list(o) for o in self._orbits]

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def moved_points(self) -> list[int]:
        return sorted({i for g in self._gens for i, j in enumerate(g) if i != j})

    # -- subgroups --------------------------------------------------------

    def stabilizer(self, point: int) -> "PermGroup":
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        ch = self.chain_with_base([point])
        gens = ch.stabilizer_gens(1)
        return PermGroup(gens, self.degree, order_hint=self.order() // len(ch.transversals[0]))

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        pts = list(points)
        if not pts:
            return self
        ch = self.chain_with_base(pts)
        k = len(pts)
        order = math.prod(len(t) for t in ch.transversals[k:])
        return PermGroup(ch.stabilizer_gens(k), self.degree, order_hint=order)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.chain.contains(g) for g in self._gens)

    def conjugate(self, x) -> "PermGroup":
        """The group ``self^x = x^-1 self x``."""
        xt = _as_tuple(x, self.degree)
        xi = inv(xt)
        gens = [mul(mul(xi, g), xt) for g in self._gens]
        hint = self._chain.order() if self._chain is not None else self._order_hint
        return PermGroup(gens, self.degree, order_hint=hint)

    def closure(self, extra: Iterable) -> "PermGroup":
        return PermGroup(list(self._gens) + [_as_tuple(e, self.degree) for e in extra], self.degree)

    def normal_closure(self, elements: Iterable, seed: int = 0) -> "PermGroup":
        """Smallest normal subgroup of ``self`` containing ``elements``."""
        ident = identity_tuple(self.degree)
        start = [_as_tuple(e, self.degree) for e in elements]
        start = [e for e in start if e != ident]
        if not start:
            return PermGroup([], self.degree, order_hint=1)
        rng = Random(seed)
        pool = list(start)
        for _ in range(min(10, 2 * len(self._gens) + 2)):
            g = self.chain.random_element(rng)
            e = start[rng.randrange(len(start))]
            pool.append(mul(mul(inv(g), e), g))
        ch = schreier_sims(self.degree, pool, seed=seed)
        gens = list(pool)
        queue = list(pool)
        while queue:
            n = queue.pop()
            for g in self._gens:
                c = mul(mul(inv(g), n), g)
                if not ch.contains(c):
                    ch.add(c)
                    ch.verify()
                    gens.append(c)
                    queue.append(c)
        return PermGroup(gens, self.degree, order_hint=ch.order())

    def derived_subgroup(self) -> "PermGroup":
        comms = []
        seen = set()
        gens = self._gens
        for i, a in enumerate(gens):
            ai = inv(a)
            for b in gens[i + 1 :]:
                c = mul(mul(ai, inv(b)), mul(a, b))
                if c not in seen:
                    seen.add(c)
                    comms.append(c)
        return self.normal_closure(comms)

    def is_abelian(self) -> bool:
        gens = self._gens
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1 :])

    def is_normal_in(self, g: "PermGroup") -> bool:
        return all(self.contains(mul(mul(inv(x), n), x)) for x in g.gens for n in self._gens)

    # -- elements ---------------------------------------------------------

    def random_element(self, rng: Random) -> Permutation:
        return Permutation(self.chain.random_element(rng), check=False)

    def elements(self) -> Iterator[Permutation]:
        for t in self.chain.elements():
            yield Permutation(t, check=False)

    def element_tuples(self) -> list[tuple]:
        return list(self.chain.elements())


# ---------------------------------------------------------------------------
# spec-level functions


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return PermGroup([], 1, label=f"S{n}")
    gens = [tuple(list(range(1, n)) + [0])]
    if n > 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    return PermGroup(gens, n, label=f"S{n}", order_hint=math.factorial(n))


def alternating_group(n: int) -> PermGroup:
    """``A_n`` as <(1 2 3), (1..n) or (2..n)> by parity of n."""
    if n < 1:
        raise ValueError("degree must be positive")
    if n < 3:
        return PermGroup([], n, label=f"A{n}", order_hint=1)
    c3 = tuple([1, 2, 0] + list(range(3, n)))
    if n == 3:
        return PermGroup([c3], n, label="A3", order_hint=3)
    if n % 2:
        long = tuple(list(range(1, n)) + [0])
    else:
        long = tuple([0] + list(range(2, n)) + [1])
    return PermGroup([c3, long], n, label=f"A{n}", order_hint=math.factorial(n) // 2)


def build_chain(g: PermGroup, seed: int = 0) -> StabChain:
    """A complete chain for ``g``; also cached on ``g`` for seed 0."""
    if seed == 0:
        return g.chain
    return schreier_sims(g.degree, g.gens, seed=seed, known_order=g._order_hint)


def group_order(g: PermGroup) -> int:
    return g.order()


def contains(g: PermGroup, p: Permutation) -> bool:
    if p.degree != g.degree:
        raise DegreeMismatch(f"permutation degree {p.degree}, group degree {g.degree}")
    return g.contains(p)


def orbit(g: PermGroup, point: int) -> list[int]:
    return g.orbit(point)


def point_stabilizer(g: PermGroup, point: int) -> PermGroup:
    return g.stabilizer(point)


def is_transitive(g: PermGroup) -> bool:
    return g.is_transitive()


@dataclass
class CosetAction:
    """Action of ``g`` on the right cosets of ``h`` (numbered 0.. with H = 0).

    ``representatives[i]`` is the canonical element of coset i: the one whose
    images of the base of ``g`` are lexicographically least.
    """

    group: PermGroup
    representatives: list[Permutation]
    faithful: bool
    _g: PermGroup = field(repr=False)
    _h_chain: StabChain = field(repr=False)
    _index: dict = field(repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    def _canon(self, gt: tuple) -> tuple[tuple, tuple]:
        return _canonical_coset(self._h_chain, gt)

    def coset_of(self, elem) -> int:
        key, _ = self._canon(_as_tuple(elem, self._g.degree))
        return self._index[key]

    def image(self, elem) -> Permutation:
        """The permutation of cosets induced by an element of ``g``."""
        et = _as_tuple(elem, self._g.degree)
        reps = self.representatives
        return Permutation(
            [self._index[self._canon(mul(r.images, et))[0]] for r in reps], check=False
        )

    def image_group(self, sub: PermGroup) -> PermGroup:
        return PermGroup([self.image(Permutation(t, check=False)) for t in sub.gens], self.degree)


def _canonical_coset(hch: StabChain, gt: tuple) -> tuple[tuple, tuple]:
    hacc = hch._id
    for lvl in range(len(hch.base)):
        trans = hch.transversals[lvl]
        best = None
        bu = None
        for d, u in trans.items():
            v = gt[hacc[d]]
            if best is None or v < best:
                best, bu = v, u
        hacc = mul(bu, hacc)
    e = mul(hacc, gt)
    return tuple(e[b] for b in hch.base), e


def coset_action(g: PermGroup, h: PermGroup, max_index: int = 10**6) -> CosetAction:
    """Permutation action of ``g`` on the right cosets ``H y`` of ``h``."""
    if h.degree != g.degree:
        raise DegreeMismatch("groups of different degree")
    if not h.is_subgroup_of(g):
        raise NotASubgroup("h is not contained in g")
    index = g.order() // h.order()
    if index > max_index:
        raise IndexExceedsLimit(f"index {index} exceeds limit {max_index}")
    base = list(g.chain.base)
    hch = h.chain_with_base(base)
    ident = identity_tuple(g.degree)
    key0, e0 = _canonical_coset(hch, ident)
    keys = {key0: 0}
    reps = [e0]
    k = 0
    while k < len(reps):
        r = reps[k]
        k += 1
        for s in g.gens:
            key, e = _canonical_coset(hch, mul(r, s))
            if key not in keys:
                keys[key] = len(reps)
                reps.append(e)
    images = []
    for s in g.gens:
        images.append(tuple(keys[_canonical_coset(hch, mul(r, s))[0]] for r in reps))
    act = PermGroup(images, len(reps), order_hint=None)
    faithful = act.order() == g.order()
    return CosetAction(
        group=act,
        representatives=[Permutation(r, check=False) for r in reps],
        faithful=faithful,
        _g=g,
        _h_chain=hch,
        _index=keys,
    )


@dataclass
class DerivedSeries:
    terms: list[PermGroup]
    is_perfect: bool
    is_solvable: bool

    @property
    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]


def derived_series(g: PermGroup, max_steps: int = 64) -> DerivedSeries:
    """G, G', G'', ... until the series stabilizes.

    The stable term is listed once: a perfect group gives ``[G]``.
    """
    terms = [g]
    cur = g
    for _ in range(max_steps):
        if cur.order() == 1:
            return DerivedSeries(terms, is_perfect=(len(terms) == 1), is_solvable=True)
        nxt = cur.derived_subgroup()
        if nxt.order() == cur.order():
            return DerivedSeries(terms, is_perfect=(len(terms) == 1), is_solvable=False)
        terms.append(nxt)
        cur = nxt
    if cur.order() == 1:
        return DerivedSeries(terms, is_perfect=False, is_solvable=True)
    raise StepLimit(f"derived series not stable after {max_steps} steps")


def _finest_block_system(gens, n: int, a: int, b: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for s in gens:
            u, v = s[x], s[y]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[rv] = ru
                queue.append((u, v))
    return [find(i) for i in range(n)]


def block_systems_from_pairs(g: PermGroup) -> list[list[list[int]]]:
    """Distinct nontrivial block systems generated by pairs {0, b}."""
    n = g.degree
    found = {}
    for b in range(1, n):
        lab = _finest_block_system(g.gens, n, 0, b)
        classes: dict[int, list[int]] = {}
        for i, c in enumerate(lab):
            classes.setdefault(c, []).append(i)
        if len(classes) == 1:
            continue
        blocks = tuple(sorted(tuple(v) for v in classes.values()))
        found.setdefault(blocks, None)
    return [[list(b) for b in sys] for sys in found]


def minimal_block_system(g: PermGroup) -> Optional[list[list[int]]]:
    """Nontrivial block system with the smallest blocks, or None if primitive."""
    if not g.is_transitive():
        raise NotTransitive("block systems need a transitive group")
    best = None
    for sys in block_systems_from_pairs(g):
        if best is None or len(sys[0]) < len(best[0]):
            best = sys
    return best


def is_primitive(g: PermGroup) -> bool:
    return minimal_block_system(g) is None


# ---------------------------------------------------------------------------
# simplicity


@dataclass
class SimplicityVerdict:
    """Outcome of :func:`is_simple_monte_carlo`.

    ``verdict`` is "simple", "not_simple" or "inconclusive".  ``certified``
    is True only when the answer does not rest on random sampling alone:
    a proper normal subgroup was exhibited, or the group is perfect, passed
    its normal-closure trials and has the order of a known simple group.
    """

    verdict: str
    certified: bool
    method: str
    order: int
    witness: Optional[PermGroup] = None
    table_matches: list[str] = field(default_factory=list)
    trials: int = 0
    seed: int = 0

    @property
    def is_simple(self) -> bool:
        return self.verdict == "simple"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certified": self.certified,
            "method": self.method,
            "order": str(self.order),
            "witness_order": None if self.witness is None else str(self.witness.order()),
            "table_matches": list(self.table_matches),
            "trials": self.trials,
            "seed": self.seed,
        }


def _is_prime_small(n: int) -> bool:
    from .numtower import is_prime

    return is_prime(n)


def is_simple_monte_carlo(g: PermGroup, trials: int = 5, seed: int = 0) -> SimplicityVerdict:
    from .numtower import simple_groups_of_order

    order = g.order()
    if order == 1:
        raise TrivialGroup("the trivial group is not simple")
    if _is_prime_small(order):
        return SimplicityVerdict("simple", True, "prime order", order, table_matches=[f"Z{order}"], seed=seed)

    moved = g.moved_points()
    m = len(moved)
    if m >= 5 and all(is_even(t) for t in g.gens) and order == math.factorial(m) // 2:
        return SimplicityVerdict(
            "simple", True, "alternating on its support", order, table_matches=[f"Alt({m})"], seed=seed
        )

    d = g.derived_subgroup()
    if d.order() != order:
        if d.order() > 1:
            return SimplicityVerdict("not_simple", True, "derived subgroup proper", order, witness=d, seed=seed)
        # abelian of composite order: a subgroup of prime order is normal
        for t in g.gens:
            o = order_of(t)
            if o > 1:
                p = _smallest_prime_factor(o)
                from .perm import power

                e = power(t, o // p)
                w = PermGroup([e], g.degree, order_hint=p)
                return SimplicityVerdict("not_simple", True, "abelian of composite order", order, witness=w, seed=seed)

    rng = Random(seed)
    ident = identity_tuple(g.degree)
    done = 0
    for _ in range(trials):
        e = g.chain.random_element(rng)
        while e == ident:
            e = g.chain.random_element(rng)
        nc = g.normal_closure([e], seed=seed)
        done += 1
        if nc.order() != order:
            return SimplicityVerdict(
                "not_simple", True, "normal closure proper", order, witness=nc, trials=done, seed=seed
            )
    matches = simple_groups_of_order(order)
    if matches:
        return SimplicityVerdict(
            "simple", True, "perfect, closure trials, order table", order, table_matches=matches, trials=done, seed=seed
        )
    if done == 0:
        return SimplicityVerdict("inconclusive", False, "perfect, no trials run", order, seed=seed)
    return SimplicityVerdict("simple", False, "monte-carlo (order not in table)", order, trials=done, seed=seed)


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def factorization_check(g: PermGroup, h: PermGroup) -> bool:
    """True iff ``g = T h`` with ``T`` a point stabilizer of transitive ``g``.

    By the orbit-counting identity |G:T| = |H : H cap T| this holds exactly
    when ``h`` is transitive on the points of ``g``.
    """
    if not h.is_subgroup_of(g):
        raise NotASubgroup("h is not contained in g")
    if not g.is_transitive():
        raise NotTransitive("g must be transitive")
    return len(h.orbit(0)) == g.degree
