"""Permutations of a finite domain {0, ..., n-1}.

Convention: permutations act on the right.  ``a * b`` means "apply ``a``
first, then ``b``", so ``(a * b)[i] == b[a[i]]``.  This matches the exponent
notation ``alpha^(ab) = (alpha^a)^b``.  Points are 0-based internally; the
textual cycle notation is 1-based, e.g. ``"(1,2,3)(4,5)"``.

The heavy lifting elsewhere in the package works on raw image tuples; the
helpers :func:`mul`, :func:`inv` and :func:`identity_tuple` are the tuple
kernels, and :class:`Permutation` is the public immutable wrapper.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from operator import itemgetter

from .errors import DegreeMismatch, MalformedCycle, PointOutOfRange

__all__ = [
    "Permutation",
    "parse_cycles",
    "format_cycles",
    "compose",
    "inverse",
    "order",
    "parity",
    "mul",
    "inv",
    "identity_tuple",
]


# --- tuple kernels --------------------------------------------------------

def mul(a: tuple, b: tuple) -> tuple:
    """Images of ``a`` followed by ``b``."""
    if len(a) < 2:
        return tuple(b[i] for i in a)
    return itemgetter(*a)(b)


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def identity_tuple(n: int) -> tuple:
    return tuple(range(n))


def power(a: tuple, k: int) -> tuple:
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = identity_tuple(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycles_of(a: tuple) -> list[list[int]]:
    """Nontrivial cycles, each starting at its smallest point, sorted."""
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(cyc)
    return out


def cycle_type_of(a: tuple) -> tuple:
    """Sorted tuple of all cycle lengths, fixed points included."""
    seen = [False] * len(a)
    lens = []
    for i in range(len(a)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            k += 1
        lens.append(k)
    return tuple(sorted(lens))


def order_of(a: tuple) -> int:
    return reduce(math.lcm, cycle_type_of(a), 1)


def is_even(a: tuple) -> bool:
    ct = cycle_type_of(a)
    return sum(k - 1 for k in ct) % 2 == 0


# --- public type ------------------------------------------------------------

class Permutation:
    """An immutable bijection of {0, ..., degree-1}.

    >>> p = Permutation.parse("(1,2,3)", 4)
    >>> p.images
    (1, 2, 0, 3)
    >>> str(p * p)
    '(1,3,2)'
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images, *, check: bool = True):
        img = tuple(images)
        if check:
            if len(img) == 0:
                raise ValueError("degree must be positive")
            if sorted(img) != list(range(len(img))):
                raise MalformedCycle(f"not a bijection on 0..{len(img) - 1}: {img}")
        self._img = img
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        """Build from 0-based cycles."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise PointOutOfRange(f"point {pt + 1} exceeds degree {degree}")
                if pt in seen:
                    raise MalformedCycle(f"point {pt + 1} repeated")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return self._img

    def __getitem__(self, point: int) -> int:
        return self._img[point]

    def __len__(self):
        return len(self._img)

    # algebra
    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        return Permutation(mul(self._img, other._img), check=False)

    def __invert__(self) -> "Permutation":
        return Permutation(inv(self._img), check=False)

    def inverse(self) -> "Permutation":
        return ~self

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(power(self._img, k), check=False)

    def conjugate(self, x: "Permutation") -> "Permutation":
        """``x^-1 * self * x``, i.e. self^x."""
        return ~x * self * x

    def order(self) -> int:
        return order_of(self._img)

    def parity(self) -> str:
        return "even" if is_even(self._img) else "odd"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def cycles(self) -> list[list[int]]:
        return cycles_of(self._img)

    def cycle_type(self) -> tuple:
        return cycle_type_of(self._img)

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self._img) if i != j]

    # comparison / hashing
    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: "Permutation"):
        return self._img < other._img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Permutation.parse({format_cycles(self)!r}, {self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2,3)(4,5)"``.

    Commas or blanks separate points inside a cycle.  ``""`` and ``"()"``
    give the identity.  Points not mentioned are fixed.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    s = text.strip()
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise MalformedCycle(f"cannot parse {text!r} at position {pos + 1}")
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        try:
            pts = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
        except ValueError:
            raise MalformedCycle(f"non-integer point in {text!r}") from None
        for p in pts:
            if p < 1 or p > degree:
                raise PointOutOfRange(f"point {p} outside 1..{degree}")
        cycles.append([p - 1 for p in pts])
    return Permutation.from_cycles(cycles, degree)


def format_cycles(p: Permutation) -> str:
    """1-based cycle notation, cycles sorted by smallest moved point."""
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    return a * b


def inverse(a: Permutation) -> Permutation:
    return ~a


def order(a: Permutation) -> int:
    return a.order()


def parity(a: Permutation) -> str:
    return a.parity()
