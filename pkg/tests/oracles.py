"""Brute-force references that share no code with the chain engine.

``random_subgroup`` only builds inputs; it is the one helper that touches
the library.
"""

from __future__ import annotations

import random

from cgtkit.perm import Permutation
from cgtkit.stabchain import PermGroup


def t_mul(a: tuple, b: tuple) -> tuple:
    return tuple(b[i] for i in a)


def t_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def closure(gens, degree: int) -> set:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for e in frontier:
            for s in gens:
                f = t_mul(e, s)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return seen


def conj(t: tuple, x: tuple) -> tuple:
    return t_mul(t_mul(t_inv(x), t), x)


def normalizer(g_elems, k_gens, k_elems) -> set:
    return {x for x in g_elems if all(conj(t, x) in k_elems for t in k_gens)}


def centralizer(g_elems, k_gens) -> set:
    return {x for x in g_elems if all(t_mul(t, x) == t_mul(x, t) for t in k_gens)}


def derived_orders(gens, degree: int) -> list[int]:
    elems = closure(gens, degree)
    out = [len(elems)]
    while True:
        comms = {t_mul(t_mul(t_inv(a), t_inv(b)), t_mul(a, b)) for a in gens for b in elems}
        nxt = closure(comms, degree)
        if len(nxt) == len(elems):
            return out
        out.append(len(nxt))
        elems, gens = nxt, list(comms)


def random_subgroup(rng: random.Random, degree: int, max_gens: int = 3) -> PermGroup:
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        img = list(range(degree))
        rng.shuffle(img)
        gens.append(Permutation(img))
    return PermGroup(gens, degree)
