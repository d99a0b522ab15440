"""Integral Weierstrass models over Q and their local data."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional

import numpy as np

from .errors import BadPrime, ConductorSupport, SingularModel


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(n: int) -> list:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, isqrt(n) + 1):
        if sieve[d]:
            sieve[d * d::d] = False
    return [int(x) for x in np.nonzero(sieve)[0]]


def prime_factors(n: int) -> list:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    out = n
    for q in prime_factors(n):
        out = out // q * (q - 1)
    return out


def psl2_index(N: int) -> int:
    """Index of Gamma_0(N) in SL2(Z)."""
    out = N
    for q in prime_factors(N):
        out = out // q * (q + 1)
    return out


def factorization(n: int) -> dict:
    n = abs(n)
    out = {}
    for q in prime_factors(n):
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        out[q] = e
    return out


@dataclass(frozen=True)
class CurveData:
    """A validated minimal model y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    discriminant: int
    label: str = ""
    ap_cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False,
                                  repr=False, hash=False)

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self) -> tuple:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def bad_primes(self) -> list:
        return prime_factors(self.conductor)

    def spec_string(self) -> str:
        return ",".join(str(a) for a in self.ainvs) + f":{self.conductor}"

    def ap(self, ell: int) -> int:
        """a_ell for any prime ell, good or bad, memoised."""
        cached = self.ap_cache.get(ell)
        if cached is not None:
            return cached
        if self.conductor % ell == 0:
            value = a_ell_bad(self, ell)
        else:
            value = a_ell(self, ell)
        with self._lock:
            self.ap_cache.setdefault(ell, value)
        return self.ap_cache[ell]

    def __str__(self):
        name = self.label or "E"
        return f"{name} {list(self.ainvs)} N={self.conductor}"


def discriminant(ainvs) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def validate_curve(a1, a2, a3, a4, a6, conductor, label="") -> CurveData:
    ainvs = tuple(int(a) for a in (a1, a2, a3, a4, a6))
    conductor = int(conductor)
    if conductor < 1:
        raise ValueError("conductor must be positive")
    delta = discriminant(ainvs)
    if delta == 0:
        raise SingularModel(f"model {list(ainvs)} is singular")
    for q in prime_factors(conductor):
        if delta % q:
            raise ConductorSupport(f"{q} divides the conductor {conductor} but not the discriminant {delta}")
    return CurveData(*ainvs, conductor=conductor, discriminant=delta, label=label)


def parse_curve(text: str, label: str = "") -> CurveData:
    """Parse ``a1,a2,a3,a4,a6:N``."""
    try:
        coeffs, cond = text.strip().split(":")
        parts = [int(x) for x in coeffs.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad curve spec {text!r}; expected a1,a2,a3,a4,a6:N") from exc
    if len(parts) != 5:
        raise ValueError(f"bad curve spec {text!r}; expected five coefficients")
    return validate_curve(*parts, int(cond), label=label)


def _count_affine_mod2(ainvs) -> int:
    a1, a2, a3, a4, a6 = (a % 2 for a in ainvs)
    n = 0
    for x in range(2):
        for y in range(2):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                n += 1
    return n


def _legendre_table(ell: int) -> np.ndarray:
    table = -np.ones(ell, dtype=np.int64)
    xs = np.arange(1, ell, dtype=np.int64)
    table[(xs * xs) % ell] = 1
    table[0] = 0
    return table


def _trace_odd(ainvs, ell: int) -> int:
    # after completing the square: (2y + a1x + a3)^2 = 4x^3 + b2x^2 + 2b4x + b6
    a1, a2, a3, a4, a6 = ainvs
    b2 = (a1 * a1 + 4 * a2) % ell
    b4 = (2 * a4 + a1 * a3) % ell
    b6 = (a3 * a3 + 4 * a6) % ell
    x = np.arange(ell, dtype=np.int64)
    g = (((4 * x + b2) % ell * x + 2 * b4) % ell * x + b6) % ell
    return -int(_legendre_table(ell)[g].sum())


def a_ell(E: CurveData, ell: int) -> int:
    """a_ell = ell + 1 - #E(F_ell) at a prime of good reduction."""
    if E.conductor % ell == 0:
        raise BadPrime(f"{ell} divides the conductor {E.conductor}")
    if ell == 2:
        return 2 + 1 - (_count_affine_mod2(E.ainvs) + 1)
    return _trace_odd(E.ainvs, ell)


def _singular_point(E: CurveData, ell: int):
    a1, a2, a3, a4, a6 = (a % ell for a in E.ainvs)
    for x in range(ell):
        for y in range(ell):
            f = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % ell
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % ell
            fy = (2 * y + a1 * x + a3) % ell
            if f == 0 and fx == 0 and fy == 0:
                return x, y
    raise BadPrime(f"no singular point mod {ell}: reduction is good")


def a_ell_bad(E: CurveData, ell: int) -> int:
    """a_ell in {1, -1, 0} at a prime of bad reduction.

    Translates the singular point to the origin; the tangent cone there is
    Y^2 + a1 XY - (3x0 + a2) X^2.  Two rational tangents: split
    multiplicative; conjugate tangents: non-split; a double line: additive.
    """
    x0, _ = _singular_point(E, ell)
    a1 = E.a1 % ell
    c = (3 * x0 + E.a2) % ell
    if ell == 2:
        if a1 == 0:
            return 0
        return 1 if c == 0 else -1
    disc = (a1 * a1 + 4 * c) % ell
    if disc == 0:
        return 0
    return 1 if pow(disc, (ell - 1) // 2, ell) == 1 else -1


def good_ordinary(E: CurveData, p: int) -> bool:
    if E.conductor % p == 0:
        return False
    return E.ap(p) % p != 0


def an_list(E: CurveData, n_max: int) -> list:
    """Dirichlet coefficients a_1..a_{n_max} (index 0 unused)."""
    an = [0] * (n_max + 1)
    if n_max >= 1:
        an[1] = 1
    primes = primes_up_to(n_max)
    # prime powers first, then multiplicativity via smallest prime factor
    ppow = {}
    for ell in primes:
        a = E.ap(ell)
        bad = E.conductor % ell == 0
        prev, cur = 1, a
        q = ell
        ppow[q] = cur
        while q * ell <= n_max:
            q *= ell
            nxt = a * cur if bad else a * cur - ell * prev
            prev, cur = cur, nxt
            ppow[q] = cur
    spf = list(range(n_max + 1))
    for ell in primes:
        if ell * ell > n_max:
            break
        for k in range(ell * ell, n_max + 1, ell):
            if spf[k] == k:
                spf[k] = ell
    for n in range(2, n_max + 1):
        ell = spf[n]
        q = ell
        m = n // ell
        while m % ell == 0:
            m //= ell
            q *= ell
        an[n] = ppow[q] if m == 1 else ppow[q] * an[m]
    return an


def hasse_bound_ok(ell: int, a: int) -> bool:
    return a * a <= 4 * ell


def load_corpus(path=None) -> list:
    """Read the bundled curve table: ``a1 a2 a3 a4 a6 N label`` per line."""
    from importlib import resources

    if path is None:
        text = resources.files("muforge.data").joinpath("curves.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    curves = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        *coeffs, cond, label = fields
        curves.append(validate_curve(*map(int, coeffs), int(cond), label=label))
    return curves


def corpus_curve(label: str, path=None) -> Optional[CurveData]:
    for E in load_corpus(path):
        if E.label == label:
            return E
    return None
