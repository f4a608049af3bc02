"""Curated permutation-group records and constructed families.

Records live in ``*.grp`` files, one per group::

    # comment
    name M12
    degree 12
    order 95040
    provenance free text
    gen (1,2,3,4,5,6,7,8,9,10,11)
    gen (3,7,11,8)(4,10,5,6)

Every field except ``provenance`` is required and there must be at least
one ``gen`` line.  Loading always rebuilds the stabilizer chain and rejects a
record whose generators do not give the claimed order; nothing in the data
is trusted.  The directory is ``data/atlas`` inside the package unless the
``CGTKIT_ATLAS_DIR`` environment variable points elsewhere.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from random import Random
from typing import Optional, Union

from .errors import InvalidParams, OrderMismatch, ParseError, UnknownName
from .numtower import factorize, prime_power, simple_order
from .perm import format_cycles, parse_cycles
from .stabchain import PermGroup, alternating_group, coset_action, symmetric_group

__all__ = [
    "GroupRecord",
    "parse_record",
    "format_record",
    "load_group",
    "load_record",
    "builtin",
    "catalogue",
    "atlas_dir",
    "GF",
    "psl2",
]

ENV_VAR = "CGTKIT_ATLAS_DIR"
_KEYS = ("name", "degree", "order", "provenance", "gen")


@dataclass
class GroupRecord:
    name: str
    degree: int
    generators: list[str]
    claimed_order: int
    provenance: str = ""
    family: Optional[tuple] = None

    def to_group(self) -> PermGroup:
        gens = [parse_cycles(g, self.degree) for g in self.generators]
        return PermGroup(gens, self.degree, label=self.name)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree,
            "order": str(self.claimed_order),
            "generators": len(self.generators),
            "provenance": self.provenance,
        }


def atlas_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "atlas"


def parse_record(text: str) -> GroupRecord:
    """Parse the line-oriented record format (no verification)."""
    fields: dict[str, str] = {}
    gens: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"(\S+)\s*(.*)$", line)
        key, value = m.group(1), m.group(2).strip()
        col = raw.index(key) + 1
        if key not in _KEYS:
            raise ParseError(f"unknown field {key!r}", lineno, col)
        if not value and key != "provenance":
            raise ParseError(f"field {key!r} needs a value", lineno, col + len(key))
        if key == "gen":
            gens.append((value, lineno, raw.index(value) + 1 if value else col))
            continue
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", lineno, col)
        if key in ("degree", "order") and not value.isdigit():
            raise ParseError(f"{key} must be a positive integer", lineno, raw.index(value) + 1)
        fields[key] = value
    for key in ("name", "degree", "order"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", 0, 0)
    if not gens:
        raise ParseError("at least one gen line is required", 0, 0)
    degree = int(fields["degree"])
    if degree < 1:
        raise ParseError("degree must be positive", 0, 0)
    out = []
    for value, lineno, col in gens:
        try:
            parse_cycles(value, degree)
        except Exception as exc:
            raise ParseError(f"bad generator: {exc}", lineno, col) from None
        out.append(value)
    return GroupRecord(fields["name"], degree, out, int(fields["order"]), fields.get("provenance", ""))


def format_record(rec: GroupRecord) -> str:
    lines = [f"name {rec.name}", f"degree {rec.degree}", f"order {rec.claimed_order}"]
    if rec.provenance:
        lines.append(f"provenance {rec.provenance}")
    lines.extend(f"gen {g}" for g in rec.generators)
    return "\n".join(lines) + "\n"


def record_of(group: PermGroup, name: str, provenance: str = "") -> GroupRecord:
    return GroupRecord(
        name, group.degree, [format_cycles(g) for g in group.generators], group.order(), provenance
    )


def _verified(rec: GroupRecord) -> PermGroup:
    g = rec.to_group()
    got = g.order()
    if got != rec.claimed_order:
        raise OrderMismatch(rec.claimed_order, got)
    return g


def load_record(path: Union[str, Path]) -> tuple[GroupRecord, PermGroup]:
    rec = parse_record(Path(path).read_text(encoding="utf-8"))
    return rec, _verified(rec)


def load_group(path: Union[str, Path]) -> PermGroup:
    """Parse a record file and verify its order; the verified group."""
    return load_record(path)[1]


# ---------------------------------------------------------------------------
# finite fields (small, for the projective line)


class GF:
    """GF(p^f) with elements encoded as integers 0..q-1 (base-p digits)."""

    def __init__(self, q: int):
        pp = prime_power(q)
        self.p, self.f, self.q = pp.p, pp.f, q
        self.modulus = self._irreducible() if self.f > 1 else None
        self._mul = {}
        self.primitive = self._find_primitive()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return out

    def _num(self, digs: list[int]) -> int:
        v = 0
        for d in reversed(digs):
            v = v * self.p + d
        return v

    def _polymulmod(self, a: list[int], b: list[int], mod: list[int]) -> list[int]:
        p, f = self.p, len(mod) - 1
        prod = [0] * (2 * f)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f + 1):
                    prod[k - f + i] = (prod[k - f + i] - c * mod[i]) % p
        return prod[:f]

    def _irreducible(self) -> list[int]:
        p, f = self.p, self.f
        for tail in range(p**f):
            mod = [(tail // p**i) % p for i in range(f)] + [1]
            if mod[0] != 0 and self._is_irreducible(mod):
                return mod
        raise InvalidParams(f"no irreducible polynomial of degree {f} over F_{p}")

    def _is_irreducible(self, mod: list[int]) -> bool:
        p, f = self.p, len(mod) - 1
        # a degree-f polynomial is reducible iff it has a factor of degree <= f/2;
        # test by trial division with all monic polynomials of that degree
        for deg in range(1, f // 2 + 1):
            for tail in range(p**deg):
                div = [(tail // p**i) % p for i in range(deg)] + [1]
                if _polymod(mod, div, p) == [0] * deg:
                    return False
        return True

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        return self._num([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        return self._num([(-x) % self.p for x in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return a * b % self.p
        key = (a, b)
        v = self._mul.get(key)
        if v is None:
            v = self._num(self._polymulmod(self._digits(a), self._digits(b), self.modulus))
            self._mul[key] = v
        return v

    def pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def _find_primitive(self) -> int:
        n = self.q - 1
        primes = list(factorize(n)) if n > 1 else []
        for a in range(1, self.q):
            if all(self.pow(a, n // r) != 1 for r in primes):
                return a
        raise InvalidParams("no primitive element")


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
    return a[:dm]


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q + 1 points of the projective line.

    Point 0 is infinity and point i + 1 is the field element encoded i.
    Generators: z -> z + 1, z -> mu z with mu = lambda^2 for odd q (lambda
    itself for even q) where lambda generates the multiplicative group, and
    z -> -1/z.
    """
    F = GF(q)
    n = q + 1
    lam = F.primitive
    mu = lam if q % 2 == 0 else F.mul(lam, lam)

    def perm(fn):
        return tuple(0 if fn(z) is None else fn(z) + 1 for z in [None] + list(range(q)))

    def translate(z):
        return None if z is None else F.add(z, 1)

    def scale(z):
        return None if z is None else F.mul(mu, z)

    def flip(z):
        if z is None:
            return 0
        if z == 0:
            return None
        return F.neg(F.inv(z))

    gens = [perm(translate), perm(scale), perm(flip)]
    expected = q * (q * q - 1) // math.gcd(2, q - 1)
    g = PermGroup(gens, n, label=f"PSL2({q})")
    if g.order() != expected:
        raise OrderMismatch(expected, g.order())
    return g


# ---------------------------------------------------------------------------

_RECORD_FAMILY = {
    "M11": ("sporadic", "M11"),
    "M12": ("sporadic", "M12"),
    "M22": ("sporadic", "M22"),
    "M23": ("sporadic", "M23"),
    "M24": ("sporadic", "M24"),
    "PSL3_2": ("PSL", 3, 2),
    "PSL3_3": ("PSL", 3, 3),
    "Sp6_2": ("PSp", 6, 2),
}


def _record_group(name: str) -> tuple[GroupRecord, PermGroup]:
    return _record_in(str(atlas_dir()), name)


@lru_cache(maxsize=None)
def _record_in(directory: str, name: str) -> tuple[GroupRecord, PermGroup]:
    path = Path(directory) / f"{name}.grp"
    if not path.exists():
        raise UnknownName(name)
    rec, g = load_record(path)
    rec.family = _RECORD_FAMILY.get(name)
    return rec, g


def _stored_names() -> list[str]:
    d = atlas_dir()
    if not d.is_dir():
        return []
    return sorted(p.stem for p in d.glob("*.grp"))


def find_a5_in_psl2_11(seed: int = 0) -> PermGroup:
    """A subgroup A5 of PSL(2,11) (degree 12), from random (2,3,5)-generation."""
    g = psl2(11)
    rng = Random(seed)
    while True:
        a = g.random_element(rng)
        b = g.random_element(rng)
        if a.order() == 2 and b.order() == 3 and (a * b).order() == 5:
            h = PermGroup([a, b], g.degree)
            if h.order() == 60:
                return h


def builtin(name: str, **params) -> PermGroup:
    """A named group: constructed families or a verified stored record.

    Constructed: ``Alt``/``Sym`` (``n=``), ``PSL2`` (``q=``), ``A<n>`` and
    ``S<n>`` shorthands, ``PSL3_2_deg24`` (PSL(3,2) on the cosets of a
    subgroup of order 7) and ``PSL2_11_deg11`` (PSL(2,11) on the cosets of
    an A5).  Anything else is looked up in the atlas directory.
    """
    m = re.fullmatch(r"([AS])(\d+)", name)
    if m:
        name, params = ("Alt" if m.group(1) == "A" else "Sym"), {"n": int(m.group(2))}
    if name in ("Alt", "Sym"):
        n = params.get("n")
        if not isinstance(n, int) or n < 1:
            raise InvalidParams(f"{name} needs a positive integer n")
        g = alternating_group(n) if name == "Alt" else symmetric_group(n)
        return g
    if name == "PSL2":
        q = params.get("q")
        if not isinstance(q, int) or q < 2:
            raise InvalidParams("PSL2 needs a prime power q >= 2")
        try:
            prime_power(q)
        except InvalidParams:
            raise InvalidParams(f"q = {q} is not a prime power") from None
        return psl2(q)
    if name == "PSL3_2_deg24":
        base = builtin("PSL3_2")
        seven = next(t for t in base.elements() if t.order() == 7)
        act = coset_action(base, PermGroup([seven], base.degree))
        g = act.group
        g.label = "PSL3_2_deg24"
        return g
    if name == "PSL2_11_deg11":
        g = psl2(11)
        act = coset_action(g, find_a5_in_psl2_11(params.get("seed", 0)))
        out = act.group
        out.label = "PSL2_11_deg11"
        return out
    if params:
        raise InvalidParams(f"{name} takes no parameters")
    return _record_group(name)[1]


def catalogue(check_simple: bool = False) -> list[dict]:
    """Summaries of stored records plus representative constructed groups.

    Every stored record is verified on the way; a record that fails to load
    raises rather than being listed.  ``check_simple`` adds the certified
    simplicity verdict of each group.
    """
    from .stabchain import is_simple_monte_carlo

    out = []
    for name in _stored_names():
        rec, g = _record_group(name)
        entry = rec.summary()
        entry["kind"] = "record"
        entry["transitive"] = g.is_transitive()
        if rec.family is not None:
            fam, *ps = rec.family
            entry["family_order"] = str(simple_order(fam, *ps))
        out.append(entry)
    for name, g in (("A5", builtin("A5")), ("A9", builtin("A9")), ("PSL2_11", builtin("PSL2", q=11)),
                    ("PSL3_2_deg24", builtin("PSL3_2_deg24"))):
        out.append({"name": name, "degree": g.degree, "order": str(g.order()), "generators": len(g.gens),
                    "provenance": "constructed", "kind": "constructed", "transitive": g.is_transitive()})
    if check_simple:
        for entry in out:
            g = builtin(entry["name"]) if entry["name"] != "PSL2_11" else builtin("PSL2", q=11)
            v = is_simple_monte_carlo(g, trials=3)
            entry["simple"] = v.verdict
            entry["certified"] = v.certified
    return out
