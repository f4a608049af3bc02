"""Regenerate the stored group records under src/cgtkit/data/atlas.

Mathieu generators are the standard words distributed with GAP's
primitive-groups library; the classical groups are computed here from
their natural actions.  Each record is verified by chain order before it
is written, and loading verifies it again.

    python tools/gen_atlas.py [output-dir]
"""

from __future__ import annotations

import sys
from itertools import product
from pathlib import Path

from cgtkit.atlas import GroupRecord, format_record
from cgtkit.perm import Permutation, format_cycles, parse_cycles
from cgtkit.stabchain import PermGroup

GAP_NOTE = "standard generators as in the GAP primitive groups library; order verified by stabilizer chain"

MATHIEU = {
    "M11": (11, 7920, ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]),
    "M12": (12, 95040, ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
                        "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"]),
    "M22": (22, 443520, ["(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
                         "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
                         "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)"]),
    "M23": (23, 10200960, ["(" + ",".join(str(i) for i in range(1, 24)) + ")",
                           "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)"]),
    "M24": (24, 244823040, ["(" + ",".join(str(i) for i in range(1, 24)) + ")",
                            "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
                            "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)"]),
}


def fano() -> GroupRecord:
    """Automorphisms of the Fano plane with lines {i, i+1, i+3} mod 7."""
    lines = {frozenset(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)}
    cyc = Permutation([(i + 1) % 7 for i in range(7)])
    from itertools import permutations

    inv = None
    for img in permutations(range(7)):
        p = Permutation(img)
        if p.order() == 2 and {frozenset(p[x] for x in ln) for ln in lines} == lines:
            inv = p
            break
    g = PermGroup([cyc, inv], 7)
    assert g.order() == 168
    return GroupRecord("PSL3_2", 7, [format_cycles(cyc), format_cycles(inv)], 168,
                       "collineations of the Fano plane with lines {i,i+1,i+3} mod 7: a 7-cycle and the "
                       "first line-preserving involution in lexicographic order")


def _proj_points(p: int, dim: int) -> list[tuple]:
    pts = []
    for v in product(range(p), repeat=dim):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def _normalize(v, p):
    for x in v:
        if x:
            s = pow(x, p - 2, p)
            return tuple(y * s % p for y in v)
    raise ValueError("zero vector")


def psl3_3() -> GroupRecord:
    p = 3
    pts = _proj_points(p, 3)
    idx = {v: i for i, v in enumerate(pts)}

    def act(mat):
        # row vector times matrix
        return Permutation([idx[_normalize(tuple(sum(v[k] * mat[k][j] for k in range(3)) % p for j in range(3)), p)]
                            for v in pts])

    a = act([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = act([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    c = act([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    g = PermGroup([a, b], 13)
    gens = [a, b]
    if g.order() != 5616:
        gens.append(c)
        g = PermGroup(gens, 13)
    assert g.order() == 5616, g.order()
    return GroupRecord("PSL3_3", 13, [format_cycles(x) for x in gens], 5616,
                       "PSL(3,3) on the 13 points of PG(2,3), points = normalized nonzero vectors of F_3^3 in "
                       "lexicographic order, generated by an elementary transvection and the coordinate cycle")


def sp6_2() -> GroupRecord:
    vecs = [v for v in product(range(2), repeat=6) if any(v)]
    idx = {v: i for i, v in enumerate(vecs)}

    def form(x, y):
        # standard symplectic form with pairs (0,3), (1,4), (2,5)
        return (x[0] * y[3] + x[3] * y[0] + x[1] * y[4] + x[4] * y[1] + x[2] * y[5] + x[5] * y[2]) % 2

    def transvection(v):
        return Permutation([idx[tuple((x[i] + form(x, v) * v[i]) % 2 for i in range(6))] for x in vecs])

    ts = [transvection(v) for v in vecs]
    gens = []
    order = 1
    for t in ts:
        cand = PermGroup(gens + [t], 63)
        if cand.order() > order:
            gens.append(t)
            order = cand.order()
        if order == 1451520:
            break
    assert order == 1451520
    return GroupRecord("Sp6_2", 63, [format_cycles(x) for x in gens], 1451520,
                       "Sp(6,2) on the 63 nonzero vectors of F_2^6 (lexicographic order), generated by symplectic "
                       "transvections for the form pairing coordinates (1,4),(2,5),(3,6), chosen greedily")


def main(argv: list[str]) -> int:
    out = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "src" / "cgtkit" / "data" / "atlas"
    out.mkdir(parents=True, exist_ok=True)
    records = []
    for name, (deg, order, gens) in MATHIEU.items():
        g = PermGroup([parse_cycles(x, deg) for x in gens], deg)
        assert g.order() == order, (name, g.order())
        records.append(GroupRecord(name, deg, gens, order, GAP_NOTE))
    records += [fano(), psl3_3(), sp6_2()]
    for rec in records:
        (out / f"{rec.name}.grp").write_text(format_record(rec), encoding="utf-8")
        print(f"wrote {rec.name}: degree {rec.degree}, order {rec.claimed_order}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
