"""Exact number theory for the arithmetic side of prime-valency graphs.

Cyclotomic values, primitive prime-divisor parts, Zsigmondy exceptions, the
prime-index consequences for ``(q^d - 1)/(q - 1)``, p-parts, orders of
finite simple groups, and the enumeration of the exceptional triples
``(L, T, r)`` (see :mod:`cgtkit.table1`).

Everything is pure integer arithmetic on Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from random import Random
from typing import Optional

import gmpy2

from .errors import FactorizationTimeout, InternalContradiction, InvalidParams

__all__ = [
    "is_prime",
    "factorize",
    "PrimePower",
    "prime_power",
    "cyclotomic_value",
    "CyclotomicReport",
    "primitive_part",
    "zsigmondy_exception",
    "LemmaRVerdict",
    "lemma_r_check",
    "p_part",
    "simple_order",
    "simple_groups_of_order",
    "simple_groups_up_to",
    "SPORADIC_ORDERS",
    "multiplicative_order",
    "enumerate_table1",
]

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
# Miller-Rabin with the 13 bases above is deterministic below this bound
_MR_BOUND = 3317044064679887385961981


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Baillie-PSW above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n >= _MR_BOUND:
        return bool(gmpy2.is_bpsw_prp(n))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_mr_round(n, a, d, s) for a in _SMALL_PRIMES)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


_TRIAL_PRIMES = primes_up_to(10_000)


def _brent(n: int, rng: Random, budget: int) -> tuple[Optional[int], int]:
    """One Pollard-Brent attempt; returns (factor or None, steps used)."""
    if n % 2 == 0:
        return 2, 1
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            steps += m
            if steps > budget:
                return None, steps
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), steps


def factorize(n: int, budget: int = 2_000_000, seed: int = 0) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as {prime: exponent}.

    Trial division to 10^4, then Pollard-Brent.  ``budget`` caps the total
    number of Brent iterations; when exceeded, :class:`FactorizationTimeout`
    carries the primes found so far and the unfactored cofactor.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = Random(seed)
    stack = [n]
    left = budget
    pending = []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        f = None
        while f is None:
            if left <= 0:
                pending.append(m)
                break
            f, used = _brent(m, rng, left)
            left -= used
        if f is None:
            continue
        stack.extend([f, m // f])
    if pending:
        cof = math.prod(pending)
        raise FactorizationTimeout(
            f"factorization budget exhausted; cofactor {cof} unfactored", dict(sorted(out.items())), cof
        )
    return dict(sorted(out.items()))


def multiplicative_order(a: int, n: int) -> int:
    """Least k >= 1 with a^k = 1 mod n (requires gcd(a, n) = 1)."""
    if math.gcd(a, n) != 1:
        raise ValueError("a must be a unit mod n")
    if n == 1:
        return 1
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    k = phi
    for p in factorize(phi):
        while k % p == 0 and pow(a, k // p, n) == 1:
            k //= p
    return k


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimePower:
    p: int
    f: int

    def __post_init__(self):
        if not is_prime(self.p) or self.f < 1:
            raise InvalidParams(f"{self.p}^{self.f} is not a prime power")

    @property
    def value(self) -> int:
        return self.p**self.f

    def to_dict(self) -> dict:
        return {"p": self.p, "f": self.f, "value": str(self.value)}


def prime_power(q) -> PrimePower:
    """Decompose an integer prime power ``q = p^f``."""
    if isinstance(q, PrimePower):
        return q
    q = int(q)
    if q < 2:
        raise InvalidParams(f"{q} is not a prime power")
    for f in range(q.bit_length(), 0, -1):
        p = gmpy2.iroot(q, f)
        if p[1] and is_prime(int(p[0])):
            return PrimePower(int(p[0]), f)
    raise InvalidParams(f"{q} is not a prime power")


def prime_powers_up_to(n: int) -> list[int]:
    out = set()
    for p in primes_up_to(n):
        v = p
        while v <= n:
            out.add(v)
            v *= p
    return sorted(out)


def _mobius(n: int) -> int:
    res = 1
    for p, e in factorize(n).items():
        if e > 1:
            return 0
        res = -res
    return res


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def cyclotomic_value(m: int, q: int) -> int:
    """Exact Phi_m(q) = prod_{d | m} (q^d - 1)^mu(m/d)."""
    if m < 1 or q < 2:
        raise InvalidParams("need m >= 1 and q >= 2")
    num, den = 1, 1
    for d in _divisors(m):
        mu = _mobius(m // d)
        if mu == 1:
            num *= q**d - 1
        elif mu == -1:
            den *= q**d - 1
    val, rem = divmod(num, den)
    if rem:
        raise InternalContradiction(f"Phi_{m}({q}) not integral")
    return val


@dataclass
class CyclotomicReport:
    m: int
    q: PrimePower
    phi_value: int
    primitive_part: int
    primitive_primes: list[tuple[int, int]]
    is_zsigmondy_exception: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "q": self.q.to_dict(),
            "phi_value": str(self.phi_value),
            "primitive_part": str(self.primitive_part),
            "primitive_primes": [[str(p), e] for p, e in self.primitive_primes],
            "is_zsigmondy_exception": self.is_zsigmondy_exception,
        }


def primitive_part(m: int, q, budget: int = 2_000_000) -> CyclotomicReport:
    """Phi*_m(q): the part of q^m - 1 made of primitive prime divisors.

    A prime dividing Phi_m(q) is either primitive or divides m, and a
    primitive prime r has m | r - 1, so r cannot divide m.  Hence
    Phi*_m(q) is Phi_m(q) with the primes of m stripped; only the listing
    of the primitive primes needs factorization.
    """
    if m < 1:
        raise InvalidParams("m must be positive")
    qq = prime_power(q)
    qv = qq.value
    phi = cyclotomic_value(m, qv)
    star = phi
    for p in factorize(m):
        while star % p == 0:
            star //= p
    primes = sorted(factorize(star, budget=budget).items()) if star > 1 else []
    return CyclotomicReport(m, qq, phi, star, primes, star == 1)


def zsigmondy_exception(m: int, q) -> bool:
    """Closed form: (m, q) = (6, 2), or m = 2 with q prime and q + 1 a 2-power."""
    if m < 2:
        raise InvalidParams("the exception statement covers m >= 2 only")
    qq = prime_power(q)
    if (m, qq.value) == (6, 2):
        return True
    if m == 2 and qq.f == 1:
        v = qq.value + 1
        return v & (v - 1) == 0
    return False


@dataclass
class LemmaRVerdict:
    q: PrimePower
    d: int
    r: int
    r_is_prime: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "prime" if self.r_is_prime else "not_prime"

    def to_dict(self) -> dict:
        return {
            "q": self.q.to_dict(),
            "d": self.d,
            "r": str(self.r),
            "verdict": self.verdict,
            "checks": dict(self.checks),
        }


def _is_power_of(x: int, d: int) -> bool:
    """True iff x = d^e for some e >= 0."""
    if x < 1:
        return False
    while x % d == 0:
        x //= d
    return x == 1


def lemma_r_check(q, d: int) -> LemmaRVerdict:
    """If (q^d - 1)/(q - 1) is prime, confirm its four consequences.

    With q = p^f the consequences are: d is prime, gcd(d, q - 1) = 1, f is a
    power of d, and d is odd or d = p = 2.  A failure raises
    :class:`InternalContradiction`.
    """
    if d < 2:
        raise InvalidParams("d must be at least 2")
    qq = prime_power(q)
    qv = qq.value
    r = (qv**d - 1) // (qv - 1)
    v = LemmaRVerdict(qq, d, r, is_prime(r))
    if not v.r_is_prime:
        return v
    v.checks = {
        "d_prime": is_prime(d),
        "gcd_d_q_minus_1": math.gcd(d, qv - 1) == 1,
        "f_power_of_d": _is_power_of(qq.f, d),
        "d_odd_or_d_eq_p_eq_2": d % 2 == 1 or (d == 2 and qq.p == 2),
    }
    bad = [k for k, ok in v.checks.items() if not ok]
    if bad:
        raise InternalContradiction(f"q={qv}, d={d}, r={r} prime but {bad} fail")
    return v


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    if n < 1:
        raise InvalidParams("n must be positive")
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


# ---------------------------------------------------------------------------
# simple group orders

SPORADIC_ORDERS: dict[str, int] = {
    "M11": 7920,
    "M12": 95040,
    "J1": 175560,
    "M22": 443520,
    "J2": 604800,
    "M23": 10200960,
    "HS": 44352000,
    "J3": 50232960,
    "M24": 244823040,
    "McL": 898128000,
    "He": 4030387200,
    "Ru": 145926144000,
    "Suz": 448345497600,
    "ON": 460815505920,
    "Co3": 495766656000,
    "Co2": 42305421312000,
    "Fi22": 64561751654400,
    "HN": 273030912000000,
    "Ly": 51765179004000000,
    "Th": 90745943887872000,
    "Fi23": 4089470473293004800,
    "Co1": 4157776806543360000,
    "J4": 86775571046077562880,
    "Fi24'": 1255205709190661721292800,
    "B": 4154781481226426191177580544000000,
    "M": 808017424794512875886459904961710757005754368000000000,
}


def _prod(it) -> int:
    return math.prod(it)


# Each classical family: (minimal rank, unreduced order(n, q), gcd(n, q), validity(n, q), name)
def _psl_raw(n, q):
    return q ** (n * (n - 1) // 2) * _prod(q**i - 1 for i in range(2, n + 1))


def _psu_raw(n, q):
    return q ** (n * (n - 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, n + 1))


def _psp_raw(n, q):
    m = n // 2
    return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def _oplus_raw(n, q):
    m = n // 2
    return q ** (m * (m - 1)) * (q**m - 1) * _prod(q ** (2 * i) - 1 for i in range(1, m))


def _ominus_raw(n, q):
    m = n // 2
    return q ** (m * (m - 1)) * (q**m + 1) * _prod(q ** (2 * i) - 1 for i in range(1, m))


_FAMILIES = {
    # family: (first rank, rank step, unreduced order, d(n, q), possible d, validity, name)
    "PSL": (2, 1, _psl_raw, lambda n, q: math.gcd(n, q - 1), lambda n: _divisors(n),
            lambda n, q: (n, q) not in ((2, 2), (2, 3)), "PSL({n},{q})"),
    "PSU": (3, 1, _psu_raw, lambda n, q: math.gcd(n, q + 1), lambda n: _divisors(n),
            lambda n, q: (n, q) != (3, 2), "PSU({n},{q})"),
    "PSp": (4, 2, _psp_raw, lambda n, q: math.gcd(2, q - 1), lambda n: [1, 2],
            lambda n, q: (n, q) != (4, 2), "PSp({n},{q})"),
    "Omega_odd": (7, 2, lambda n, q: _psp_raw(n - 1, q), lambda n, q: 2, lambda n: [2],
                  lambda n, q: q % 2 == 1, "Omega({n},{q})"),
    "POmega_plus": (8, 2, _oplus_raw, lambda n, q: math.gcd(4, q ** (n // 2) - 1), lambda n: [1, 2, 4],
                    lambda n, q: True, "POmega+({n},{q})"),
    "POmega_minus": (8, 2, _ominus_raw, lambda n, q: math.gcd(4, q ** (n // 2) + 1), lambda n: [1, 2, 4],
                     lambda n, q: True, "POmega-({n},{q})"),
}


def _family_valid(fam: str, n: int, q: int) -> bool:
    start, step = _FAMILIES[fam][0], _FAMILIES[fam][1]
    return n >= start and (n - start) % step == 0 and _FAMILIES[fam][5](n, q)


def _is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
        return True
    except InvalidParams:
        return False


def simple_order(family: str, *params) -> int:
    """Order of a finite simple group.

    ``Alt n``, ``PSL n q``, ``PSU n q``, ``PSp n q`` (n = 2m), ``Omega_odd n q``
    (n = 2m + 1, q odd), ``POmega_plus n q`` and ``POmega_minus n q``
    (n = 2m >= 8), ``Sz q``, ``G2 q``, or ``sporadic name``.
    """
    fam = family
    try:
        if fam == "Alt":
            (n,) = params
            if n < 5:
                raise InvalidParams(f"Alt({n}) is not nonabelian simple")
            return math.factorial(n) // 2
        if fam == "sporadic":
            (name,) = params
            return SPORADIC_ORDERS[name]
        if fam in SPORADIC_ORDERS and not params:
            return SPORADIC_ORDERS[fam]
        if fam == "Sz":
            (q,) = params
            if q < 8 or not _is_power_of(q, 2) or (q.bit_length() - 1) % 2 == 0:
                raise InvalidParams(f"Sz({q}) needs q = 2^(2k+1) >= 8")
            return q * q * (q * q + 1) * (q - 1)
        if fam == "G2":
            (q,) = params
            if q < 3 or not _is_prime_power(q):
                raise InvalidParams(f"G2({q}) needs a prime power q >= 3")
            return q**6 * (q**6 - 1) * (q * q - 1)
        if fam in _FAMILIES:
            n, q = params
            raw, dfun = _FAMILIES[fam][2], _FAMILIES[fam][3]
            if not _is_prime_power(q) or not _family_valid(fam, n, q):
                raise InvalidParams(f"{fam}({n},{q}) is not a simple group of that family")
            return raw(n, q) // dfun(n, q)
    except (ValueError, TypeError, KeyError):
        raise InvalidParams(f"bad parameters {params!r} for family {family!r}") from None
    raise InvalidParams(f"unknown family {family!r}")


def _search_q(target: int, fn, lo: int = 2) -> Optional[int]:
    """Integer q >= lo with fn(q) == target for increasing fn, or None."""
    hi = lo
    while fn(hi) < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if fn(mid) < target:
            lo = mid + 1
        else:
            hi = mid
    return lo if fn(lo) == target else None


@lru_cache(maxsize=4096)
def simple_groups_of_order(order: int) -> list[str]:
    """Names of the nonabelian simple groups (by family) of this order.

    Covers alternating, sporadic, PSL, PSU, PSp, odd orthogonal, both even
    orthogonal types, Suzuki and G2.  Isomorphic coincidences appear under
    each of their names, e.g. order 60 gives Alt(5), PSL(2,4), PSL(2,5).
    """
    out = []
    if order < 60:
        return out
    n = 5
    while math.factorial(n) // 2 < order:
        n += 1
    if math.factorial(n) // 2 == order:
        out.append(f"Alt({n})")
    out.extend(k for k, v in SPORADIC_ORDERS.items() if v == order)
    for fam, (start, step, raw, dfun, dcands, _, fmt) in _FAMILIES.items():
        n = start
        while raw(n, 2) // max(dcands(n)) <= order:
            for d in dcands(n):
                q = _search_q(order * d, lambda x: raw(n, x))
                if q is not None and _is_prime_power(q) and _family_valid(fam, n, q) and dfun(n, q) == d:
                    out.append(fmt.format(n=n, q=q))
            n += step
    q = _search_q(order, lambda x: x * x * (x * x + 1) * (x - 1), 8)
    if q is not None:
        try:
            simple_order("Sz", q)
            out.append(f"Sz({q})")
        except InvalidParams:
            pass
    q = _search_q(order, lambda x: x**6 * (x**6 - 1) * (x * x - 1), 3)
    if q is not None and _is_prime_power(q):
        out.append(f"G2({q})")
    return sorted(set(out))


def simple_groups_up_to(limit: int) -> list[tuple[str, int]]:
    """All (name, order) for simple groups of order <= limit in the covered families."""
    found: dict[str, int] = {}
    n = 5
    while math.factorial(n) // 2 <= limit:
        found[f"Alt({n})"] = math.factorial(n) // 2
        n += 1
    for k, v in SPORADIC_ORDERS.items():
        if v <= limit:
            found[k] = v
    for fam, (start, step, raw, dfun, dcands, _, fmt) in _FAMILIES.items():
        n = start
        while raw(n, 2) // max(dcands(n)) <= limit:
            q = 2
            while raw(n, q) // max(dcands(n)) <= limit:
                if _is_prime_power(q) and _family_valid(fam, n, q):
                    o = raw(n, q) // dfun(n, q)
                    if o <= limit:
                        found[fmt.format(n=n, q=q)] = o
                q += 1
            n += step
    q = 8
    while q * q * (q * q + 1) * (q - 1) <= limit:
        found[f"Sz({q})"] = q * q * (q * q + 1) * (q - 1)
        q *= 4
    q = 3
    while q**6 * (q**6 - 1) * (q * q - 1) <= limit:
        if _is_prime_power(q):
            found[f"G2({q})"] = q**6 * (q**6 - 1) * (q * q - 1)
        q += 1
    return sorted(found.items(), key=lambda kv: (kv[1], kv[0]))


def enumerate_table1(line="all", bounds=None):
    """Instances of the exceptional-triple table; see :mod:`cgtkit.table1`."""
    from .table1 import enumerate_table1 as _enum

    return _enum(line, bounds)
