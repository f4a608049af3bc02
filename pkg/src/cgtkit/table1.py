"""Enumeration of the exceptional Cayley-graph triples (L, T, r).

Each line of the table is data: parameter domains and side conditions,
like the valency formula, are short expression strings in a tiny language (integer
arithmetic, comparisons, ``and``/``or``/``not`` and a fixed set of helper
functions).  Expressions are parsed with :mod:`ast`, checked against a
whitelist, then compiled once, so the table stays auditable without an
interpreter on the hot path.

Every emitted instance has a prime ``r >= 7`` and carries its parameter
bindings and the conditions it satisfied, plus the cross-checks that were run:
for ``r = (p^a - 1)/(p^b - 1)`` or ``r = 2^k + 1``, ``r`` must be a
primitive prime divisor of ``p^a - 1`` (resp. ``2^(2k) - 1``).
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import InternalContradiction, InvalidParams, ParseError
from .numtower import is_prime, multiplicative_order, primes_up_to, simple_groups_up_to

__all__ = [
    "Table1Bounds",
    "Table1Instance",
    "GroupDescriptor",
    "LineSpec",
    "TABLE1",
    "compile_condition",
    "enumerate_table1",
]

# isomorphic duplicates among the family names produced by numtower
_ALIASES = {"PSL(2,4)", "PSL(2,5)", "PSL(3,2)", "PSL(2,9)", "PSL(4,2)", "PSp(4,3)"}


def _is_power_of(x: int, d: int) -> bool:
    if x < 1 or d < 2:
        return False
    while x % d == 0:
        x //= d
    return x == 1


def _log(x: int, d: int) -> int:
    e = 0
    while x % d == 0 and x > 1:
        x //= d
        e += 1
    if x != 1:
        raise InvalidParams(f"not a power of {d}")
    return e


def _primes(lo: int, hi: int) -> list[int]:
    return [p for p in primes_up_to(hi) if p >= lo]


@lru_cache(maxsize=8)
def _simple_groups(limit: int) -> tuple[tuple[str, int], ...]:
    return tuple((n, o) for n, o in simple_groups_up_to(limit) if n not in _ALIASES)


_ORDERS: dict[str, int] = {}


def _simple_names(limit: int) -> list[str]:
    groups = _simple_groups(limit)
    _ORDERS.update(groups)
    return [n for n, _ in groups]


_FUNCS = {
    "is_prime": is_prime,
    "divides": lambda a, b: b % a == 0,
    "is_power_of": _is_power_of,
    "log": _log,
    "primes": _primes,
    "range": range,
    "simple_groups": _simple_names,
    "order_of": lambda name: _ORDERS[name],
}

_ALLOWED = (
    ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not, ast.USub,
    ast.BinOp, ast.Add, ast.Sub, ast.Mult, ast.FloorDiv, ast.Mod, ast.Pow,
    ast.Compare, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE,
    ast.Name, ast.Load, ast.Constant, ast.Call,
)


@lru_cache(maxsize=None)
def compile_condition(text: str):
    """Validate and compile one expression of the condition language."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad expression {text!r}: {exc.msg}", 1, exc.offset or 0) from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ParseError(f"construct {type(node).__name__} not allowed in {text!r}", 1, getattr(node, "col_offset", 0))
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ParseError(f"only integer constants allowed in {text!r}", 1, node.col_offset)
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS or node.keywords:
                raise ParseError(f"unknown function in {text!r}", 1, node.col_offset)
    return compile(tree, f"<table1:{text}>", "eval")


def _eval(text: str, env: dict):
    return eval(compile_condition(text), {"__builtins__": {}, **_FUNCS}, env)


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    params: tuple[int, ...]

    @property
    def name(self) -> str:
        if self.family == "named":
            return str(self.params[0])
        if self.family == "Alt":
            return f"A_{self.params[0]}"
        if self.family == "G2":
            return f"G_2({self.params[0]})"
        n, q = self.params
        return f"{self.family}_{n}({q})"

    def to_dict(self) -> dict:
        return {"family": self.family, "params": [str(p) for p in self.params], "name": self.name}


@dataclass(frozen=True)
class LineSpec:
    line: int
    row: str
    L: tuple[str, ...]
    T: tuple[str, ...]
    r: str
    domains: tuple[tuple[str, str], ...]
    conditions: tuple[str, ...]
    condition_tex: str
    ppd: Optional[tuple[str, str]] = None
    r_tex: str = ""
    notes: tuple[str, ...] = ()


@dataclass
class Table1Instance:
    line: int
    row: str
    L: GroupDescriptor
    T: GroupDescriptor
    r: int
    params: dict[str, int]
    witness: list[str]
    condition_tex: str
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "row": self.row,
            "L": self.L.to_dict(),
            "T": self.T.to_dict(),
            "r": str(self.r),
            "params": {k: str(v) for k, v in self.params.items()},
            "witness": list(self.witness),
            "condition_tex": self.condition_tex,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Table1Bounds:
    """Parameter caps: ``n_max`` for alternating degrees, ``exp_max`` for
    exponent products such as m*f, ``p_max`` for the characteristic and
    ``order_max`` for the simple groups scanned on line 2."""

    n_max: int = 30
    exp_max: int = 8
    p_max: int = 7
    order_max: int = 10**6

    @classmethod
    def single(cls, bound: int) -> "Table1Bounds":
        return cls(n_max=bound, exp_max=bound)

    def env(self) -> dict:
        return {"N": self.n_max, "E": self.exp_max, "P": self.p_max, "O": self.order_max}


_PPD_NOTE_4_9 = "lines 4 and 9 share this r-formula; only the group family separates them"
_STAR = "m | n and f = (n-1)^e with n-1 an odd prime"

TABLE1: tuple[LineSpec, ...] = (
    LineSpec(
        1, "1", ("Alt", "n"), ("Alt", "n - 1"), "r",
        (("n", "range(5, N + 1)"), ("r", "primes(7, n)")),
        ("divides(r, n)", "not divides(r * r, n)", "not is_prime(n)"),
        r"r\div n, r^2\nmid n, n\mbox{ not  prime}",
        r_tex=r"\ge 7",
    ),
    LineSpec(
        2, "2", ("Alt", "order_of(t)"), ("named", "t"), "order_of(t) - 1",
        (("t", "simple_groups(O)"),),
        ("is_prime(order_of(t) - 1)",),
        r"\Ga=\K_{r+1}",
        r_tex=r"\ge 7",
        notes=("the graph is the complete graph on r+1 vertices",),
    ),
    LineSpec(
        3, "3", ("PSU", "2 * m", "2 ** f"), ("PSU", "2 * m - 1", "2 ** f"), "2 ** (m * f) + 1",
        (("m", "range(2, E + 1)"), ("f", "range(1, E // m + 1)")),
        ("m >= 2", "is_power_of(m * f, 2)", "m * f > 2"),
        r"m\ge 2, mf=2^e>2",
        ppd=("2", "2 * m * f"), r_tex=r"2^{mf}+1",
    ),
    LineSpec(
        4, "4", ("Omega", "2 * m + 1", "p ** f"), ("POmega^-", "2 * m", "p ** f"),
        "(p ** (m * f) - 1) // (p ** (m * f // d) - 1)",
        (("p", "primes(3, P)"), ("m", "range(3, E + 1)"), ("f", "range(1, E // m + 1)"), ("d", "primes(3, m * f)")),
        ("m >= 3", "is_power_of(m * f, d)"),
        r"m\ge 3, mf=d^e, \mbox{odd primes } p,d",
        ppd=("p", "m * f"), r_tex=r"{p^{mf}-1\over p^{{m\over d}f}-1}",
        notes=(_PPD_NOTE_4_9,),
    ),
    LineSpec(
        5, "5", ("POmega^-", "10", "2 ** f"), ("PSU", "5", "2 ** f"), "2 ** (4 * f) + 1",
        (("f", "range(1, E // 4 + 1)"),),
        ("is_power_of(f, 2)", "f > 1"),
        r"f=2^e>1",
        ppd=("2", "8 * f"), r_tex=r"2^{4f}+1",
    ),
    LineSpec(
        6, "6", ("Omega^+", "2 * m", "2 ** f"), ("Sp", "2 * m - 2", "2 ** f"),
        "(2 ** (m * f) - 1) // (2 ** (m * f // d) - 1)",
        (("m", "range(4, E + 1)"), ("f", "range(1, E // m + 1)"), ("d", "primes(2, m * f)")),
        ("m >= 4", "is_power_of(m * f, d)"),
        r"m\ge 4,  mf=d^e, \mbox{prime } d",
        ppd=("2", "m * f"), r_tex=r"{2^{mf}-1\over 2^{mf\over d}-1}",
    ),
    LineSpec(
        7, "7", ("Omega^+", "2 * m", "2 ** f"), ("Omega^-", "2 * m - 2", "2 ** f"),
        "(2 ** (m * f) - 1) // (2 ** (m * f // d) - 1)",
        (("m", "range(5, E + 1)"), ("f", "range(1, E // m + 1)"), ("d", "primes(3, m * f)")),
        ("m >= 5", "is_power_of(m * f, d)"),
        r"m\ge 5,  mf=d^e, \mbox{odd prime }d",
        ppd=("2", "m * f"), r_tex=r"{2^{mf}-1\over 2^{{m\over d}f}-1}",
    ),
    LineSpec(
        8, "8", ("Omega^+", "2 * m", "p ** f"), ("POmega^-", "2 * m - 2", "p ** f"),
        "(p ** (m * f) - 1) // (p ** f - 1)",
        (("p", "primes(2, P)"), ("m", "primes(5, E)"), ("f", "range(1, E // m + 1)")),
        ("m >= 5", "is_power_of(f, m)"),
        r"\mbox{odd prime }m\ge 5,   f=m^e,",
        ppd=("p", "m * f"), r_tex=r"{p^{mf}-1\over p^{f}-1}",
    ),
    LineSpec(
        9, "9", ("POmega^+", "2 * m", "p ** f"), ("Omega", "2 * m - 1", "p ** f"),
        "(p ** (m * f) - 1) // (p ** (m * f // d) - 1)",
        (("p", "primes(3, P)"), ("m", "range(5, E + 1)"), ("f", "range(1, E // m + 1)"), ("d", "primes(3, m * f)")),
        ("m >= 5", "is_power_of(m * f, d)"),
        r"m\ge 5,  mf=d^e, \mbox{odd primes } p,d",
        ppd=("p", "m * f"), r_tex=r"{p^{mf}-1\over p^{{m\over d}f}-1}",
        notes=(_PPD_NOTE_4_9,),
    ),
    LineSpec(
        10, "10", ("Sp", "4", "2 ** f"), ("SL", "2", "2 ** (2 * f)"), "2 ** f + 1",
        (("f", "range(1, E + 1)"),),
        ("is_power_of(f, 2)", "f > 2"),
        r"f=2^e>2",
        ppd=("2", "2 * f"), r_tex=r"2^f+1",
    ),
    LineSpec(
        11, "11a", ("Sp", "6", "2 ** f"), ("G2", "2 ** (2 * f)"), "2 ** (2 * f) + 1",
        (("f", "range(1, E + 1)"),),
        ("is_power_of(f, 2)", "f >= 2"),
        r"f=2^e\ge2",
        ppd=("2", "4 * f"), r_tex=r"2^{2f}+1",
    ),
    LineSpec(
        11, "11b", ("Sp", "6", "2 ** f"), ("SL", "2", "2 ** (3 * f)"), "2 ** (2 * f) + 1",
        (("f", "range(1, E + 1)"),),
        ("is_power_of(f, 2)", "f >= 2"),
        r"f=2^e\ge2",
        ppd=("2", "4 * f"), r_tex=r"2^{2f}+1",
    ),
    LineSpec(
        12, "12", ("Sp", "2 * m", "2 ** f"), ("Omega^-", "2 * m", "2 ** f"),
        "(2 ** (m * f) - 1) // (2 ** (m * f // d) - 1)",
        (("m", "range(4, E + 1)"), ("f", "range(1, E // m + 1)"), ("d", "primes(2, m * f)")),
        ("m >= 4", "is_power_of(m * f, d)"),
        r"m\ge 4,  mf=d^e, \mbox{prime } d",
        ppd=("2", "m * f"), r_tex=r"{2^{mf}-1\over 2^{{m\over d}f}-1}",
    ),
    LineSpec(
        13, "13", ("PSL", "n", "p ** f"), ("PSL", "n - 1", "p ** f"),
        "(p ** (n * f) - 1) // (p ** (n * f // d) - 1)",
        (("p", "primes(2, P)"), ("n", "range(2, E + 1)"), ("f", "range(1, E // n + 1)"), ("d", "primes(3, n * f)")),
        ("n > d", "is_power_of(n * f, d)"),
        r"n> d,  nf=d^e,   \mbox{odd prime } d",
        ppd=("p", "n * f"), r_tex=r"{p^{nf}-1\over p^{{n\over d}f}-1}",
    ),
    LineSpec(
        14, "14a", ("PSL", "n", "p ** f"), ("PSL", "m", "p ** (n // m * f)"),
        "(p ** ((n - 1) * f) - 1) // (p ** f - 1)",
        (("p", "primes(2, P)"), ("n", "range(4, E + 2)"), ("f", "range(1, E // (n - 1) + 1)"), ("m", "range(2, n)")),
        ("is_prime(n - 1)", "(n - 1) % 2 == 1", "divides(m, n)", "is_power_of(f, n - 1)", "1 < m and m < n"),
        r"1<m<n, \mbox{ and } (*):\, m\div n, f=(n-1)^e,  \mbox{odd prime }n-1",
        ppd=("p", "(n - 1) * f"), r_tex=r"{p^{(n-1)f}-1\over p^{f}-1}",
    ),
    LineSpec(
        14, "14b", ("PSL", "n", "p ** f"), ("PSp", "m", "p ** (n // m * f)"),
        "(p ** ((n - 1) * f) - 1) // (p ** f - 1)",
        (("p", "primes(2, P)"), ("n", "range(4, E + 2)"), ("f", "range(1, E // (n - 1) + 1)"), ("m", "range(4, n + 1)")),
        ("is_prime(n - 1)", "(n - 1) % 2 == 1", "divides(m, n)", "is_power_of(f, n - 1)",
         "m % 2 == 0", "m >= 4", "m < n or p == 2"),
        r"(*), \mbox{even }m\ge 4,  p=2 \mbox{ if }m=n",
        ppd=("p", "(n - 1) * f"), r_tex=r"{p^{(n-1)f}-1\over p^{f}-1}",
        notes=(_STAR,),
    ),
    LineSpec(
        14, "14c", ("PSL", "n", "p ** f"), ("POmega^-", "m", "p ** (n // m * f)"),
        "(p ** ((n - 1) * f) - 1) // (p ** f - 1)",
        (("p", "primes(2, P)"), ("n", "range(4, E + 2)"), ("f", "range(1, E // (n - 1) + 1)"), ("m", "range(8, n + 1)")),
        ("is_prime(n - 1)", "(n - 1) % 2 == 1", "divides(m, n)", "is_power_of(f, n - 1)",
         "m % 2 == 0", "(m // 2) % 2 == 0", "m // 2 >= 4", "m < n or p == 2"),
        r"(*), \mbox{even }{m\over 2}\ge 4,   p=2 \mbox{ if }m=n",
        ppd=("p", "(n - 1) * f"), r_tex=r"{p^{(n-1)f}-1\over p^{f}-1}",
        notes=(_STAR,),
    ),
    LineSpec(
        14, "14d", ("PSL", "n", "p ** f"), ("G2", "p ** (n // m * f)"),
        "(p ** ((n - 1) * f) - 1) // (p ** f - 1)",
        (("p", "primes(2, P)"), ("n", "range(4, E + 2)"), ("f", "range(1, E // (n - 1) + 1)"), ("m", "range(6, 7)")),
        ("is_prime(n - 1)", "(n - 1) % 2 == 1", "divides(m, n)", "is_power_of(f, n - 1)", "m == 6", "p == 2"),
        r"(*), m=6, p=2",
        ppd=("p", "(n - 1) * f"), r_tex=r"{p^{(n-1)f}-1\over p^{f}-1}",
        notes=(_STAR,),
    ),
    LineSpec(15, "15", ("PSU", "6", "2"), ("PSU", "5", "2"), "7", (), (), "", r_tex="7"),
    LineSpec(16, "16", ("Omega^+", "12", "2"), ("Sp", "10", "2"), "7", (), (), "", r_tex="7"),
    LineSpec(17, "17", ("Sp", "12", "2"), ("Omega^-", "12", "2"), "7", (), (), "", r_tex="7"),
)


def _describe(spec: tuple[str, ...], env: dict) -> GroupDescriptor:
    family, *exprs = spec
    return GroupDescriptor(family, tuple(_eval(e, env) for e in exprs))


def _bindings(spec: LineSpec, base: dict) -> Iterator[dict]:
    """Depth-first product over the line's parameter domains."""

    def rec(i: int, env: dict):
        if i == len(spec.domains):
            yield env
            return
        var, dom = spec.domains[i]
        for v in _eval(dom, env):
            yield from rec(i + 1, {**env, var: v})

    yield from rec(0, dict(base))


def _witness(spec: LineSpec, env: dict, params: dict) -> list[str]:
    vals = ", ".join(f"{k}={v}" for k, v in params.items())
    out = [f"{c}  [{vals}]" for c in spec.conditions]
    return out


def _line_instances(spec: LineSpec, bounds: Table1Bounds) -> Iterator[Table1Instance]:
    base = bounds.env()
    for env in _bindings(spec, base):
        if not all(_eval(c, env) for c in spec.conditions):
            continue
        r = _eval(spec.r, env)
        if r < 7 or not is_prime(r):
            continue
        params = {k: v for k, v in env.items() if k not in base}
        checks = {"r_prime": True, "r_at_least_7": True}
        if spec.ppd is not None:
            b = _eval(spec.ppd[0], env)
            a = _eval(spec.ppd[1], env)
            checks["r_primitive_divisor"] = multiplicative_order(b % r, r) == a
            if not checks["r_primitive_divisor"]:
                raise InternalContradiction(f"line {spec.row}: r={r} is not a primitive divisor of {b}^{a}-1")
        if spec.line == 13:
            p, n, f, d = env["p"], env["n"], env["f"], env["d"]
            checks["line13_formula"] = r * (p ** (n * f // d) - 1) == p ** (n * f) - 1
            if not checks["line13_formula"]:
                raise InternalContradiction(f"line 13 formula mismatch at {params}")
        if "t" in params:
            params = {"T": params["t"], "order_T": _ORDERS[params["t"]]}
        yield Table1Instance(
            line=spec.line,
            row=spec.row,
            L=_describe(spec.L, env),
            T=_describe(spec.T, env),
            r=r,
            params=params,
            witness=_witness(spec, env, params),
            condition_tex=spec.condition_tex,
            checks=checks,
            notes=list(spec.notes),
        )


def enumerate_table1(line="all", bounds: Optional[Table1Bounds] = None) -> list[Table1Instance]:
    """All instances of one line (1..17, or a row tag like "14b") or of all lines."""
    bounds = bounds or Table1Bounds()
    if line == "all":
        specs: Sequence[LineSpec] = TABLE1
    else:
        key = str(line)
        specs = [s for s in TABLE1 if str(s.line) == key or s.row == key]
        if not specs:
            raise InvalidParams(f"no table line {line!r}")
    out = []
    for spec in specs:
        out.extend(_line_instances(spec, bounds))
    return out
