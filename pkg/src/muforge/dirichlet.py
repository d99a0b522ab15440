"""Dirichlet characters with exact cyclotomic values and their p-adic images.

A character is stored as a table a -> exponent e(a) in Q/Z, meaning
chi(a) = exp(2 pi i e(a)); units only, non-units map to None.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from .arith import PadicInt, teichmuller, vp
from .curves import factorization, prime_factors
from .errors import EmbeddingUnsupported


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def primitive_root(q: int) -> int:
    """Smallest positive primitive root modulo an odd prime q (or 1 for q = 2)."""
    if q == 2:
        return 1
    fs = prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in fs):
            return g
    raise ValueError(f"no primitive root mod {q}")


def unit_generators(m: int):
    """Generators of (Z/m)^x via CRT, with their orders.

    Odd prime powers contribute the lift of the smallest primitive root that
    generates mod q^2; powers of 2 contribute -1 and 5 as needed.
    """
    gens = []
    for q, e in sorted(factorization(m).items()):
        qe = q ** e
        rest = m // qe
        comps = []
        if q == 2:
            if e >= 2:
                comps.append((qe - 1, 2))
            if e >= 3:
                comps.append((5, 2 ** (e - 2)))
        else:
            g = primitive_root(q)
            if e >= 2 and pow(g, q - 1, q * q) == 1:
                g += q
            comps.append((g, (q - 1) * q ** (e - 1)))
        for g, order in comps:
            # element that is g mod q^e and 1 mod the rest
            x = g if rest == 1 else (g * rest * pow(rest, -1, qe) + qe * pow(qe, -1, rest)) % m
            gens.append((x % m if m > 1 else 0, order))
    return gens


@lru_cache(maxsize=None)
def _dlog_table(m: int):
    """a -> exponent vector on unit_generators(m)."""
    gens = unit_generators(m)
    table = {1 % m: tuple(0 for _ in gens)}
    for i, (g, order) in enumerate(gens):
        new = {}
        for a, vec in table.items():
            x = a
            for k in range(order):
                v = list(vec)
                v[i] = k
                new[x] = tuple(v)
                x = x * g % m
        table = new
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    table: tuple  # index a in [0, m): Fraction in [0,1) or None

    @classmethod
    def from_generators(cls, m: int, exponents) -> "DirichletCharacter":
        gens = unit_generators(m)
        exps = [Fraction(x) for x in exponents]
        if len(exps) != len(gens):
            raise ValueError(f"modulus {m} has {len(gens)} unit generators, got {len(exps)} exponents")
        for (g, order), x in zip(gens, exps):
            if (x * order).denominator != 1:
                raise ValueError(f"exponent {x} incompatible with generator {g} of order {order}")
        dl = _dlog_table(m)
        tab = [None] * max(m, 1)
        for a, vec in dl.items():
            tab[a] = sum((k * x for k, x in zip(vec, exps)), Fraction(0)) % 1
        return cls(m, tuple(tab))

    @classmethod
    def trivial(cls, m: int = 1) -> "DirichletCharacter":
        return cls.from_generators(m, [0] * len(unit_generators(m)))

    @classmethod
    def kronecker(cls, D: int) -> "DirichletCharacter":
        """The quadratic character of a fundamental discriminant D."""
        if not is_fundamental_discriminant(D):
            raise ValueError(f"{D} is not a fundamental discriminant")
        m = abs(D)
        tab = [None] * m
        for a in range(m):
            if gcd(a, m) == 1:
                tab[a] = Fraction(0) if kronecker_symbol(D, a) == 1 else Fraction(1, 2)
        return cls(m, tuple(tab))

    def __call__(self, a: int) -> Optional[Fraction]:
        if self.modulus == 1:
            return Fraction(0)
        return self.table[a % self.modulus]

    @property
    def order(self) -> int:
        d = 1
        for x in self.table:
            if x is not None:
                d = _lcm(d, x.denominator)
        return d

    @property
    def parity(self) -> int:
        return 1 if self(-1) == 0 else -1

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def conductor(self) -> int:
        m = self.modulus
        for f in sorted(d for d in range(1, m + 1) if m % d == 0):
            if all(self.table[a] == 0 for a in range(m) if self.table[a] is not None and (a - 1) % f == 0):
                return f
        return m

    def primitive(self) -> "DirichletCharacter":
        f = self.conductor
        if f == self.modulus:
            return self
        m = self.modulus
        tab = [None] * f
        for a in range(f):
            if gcd(a, f) != 1:
                continue
            b = a
            while gcd(b, m) != 1:
                b += f
            tab[a] = self.table[b % m]
        return DirichletCharacter(f, tuple(tab) if f > 1 else (Fraction(0),))

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(None if x is None else (-x) % 1 for x in self.table))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        m = _lcm(self.modulus, other.modulus)
        tab = []
        for a in range(m):
            x, y = self(a), other(a)
            tab.append(None if x is None or y is None or gcd(a, m) != 1 else (x + y) % 1)
        return DirichletCharacter(m, tuple(tab) if m > 1 else (Fraction(0),))

    def cyclo(self, a: int, k: Optional[int] = None) -> "CycloElement":
        """chi(a) in Z[zeta_k] (k defaults to the order); 0 for non-units."""
        k = k or self.order
        if k % self.order:
            raise ValueError("k must be a multiple of the order")
        x = self(a)
        if x is None:
            return CycloElement.zero(k)
        return CycloElement.zeta_power(k, int(x * k))

    def complex(self, a: int) -> complex:
        x = self(a)
        return 0j if x is None else cmath.exp(2j * cmath.pi * float(x))

    def padic(self, a: int, p: int, N: int) -> PadicInt:
        """chi(a) in Z/p^N under the fixed Teichmuller embedding."""
        x = self(a)
        if x is None:
            return PadicInt(0, p, N)
        return embed_root_of_unity(x, p, N)

    def describe(self) -> dict:
        gens = unit_generators(self.modulus)
        return {"modulus": self.modulus, "conductor": self.conductor, "order": self.order,
                "parity": self.parity,
                "generators": [g for g, _ in gens],
                "exponents": [str(self(g)) for g, _ in gens]}

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, order {self.order}, conductor {self.conductor})"


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return D == 1
    if D % 4 == 1:
        return all(e == 1 for e in factorization(D).values())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for q, e in factorization(m).items())
    return False


def kronecker_symbol(D: int, a: int) -> int:
    if a == 0:
        return 1 if abs(D) == 1 else 0
    out = 1
    if a < 0:
        a = -a
        if D < 0:
            out = -out
    for q, e in factorization(a).items():
        if q == 2:
            if D % 2 == 0:
                return 0
            s = 1 if D % 8 in (1, 7) else -1
        else:
            r = D % q
            if r == 0:
                return 0
            s = 1 if pow(r, (q - 1) // 2, q) == 1 else -1
        out *= s ** e
    return out


def enumerate_characters(m: int, order_divides: Optional[int] = None, primitive_only=False):
    """Characters mod m of order dividing the bound, each primitively reduced."""
    gens = unit_generators(m)
    combos = [[]]
    for _, order in gens:
        step = Fraction(1, order)
        choices = [k * step for k in range(order)]
        if order_divides:
            choices = [x for x in choices if (x * order_divides).denominator == 1]
        combos = [c + [x] for c in combos for x in choices]
    out = []
    for c in combos:
        chi = DirichletCharacter.from_generators(m, c)
        if primitive_only and not chi.is_primitive:
            continue
        out.append(chi.primitive())
    return out


# cyclotomic integers -------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> tuple:
    """Coefficients (low degree first) of the k-th cyclotomic polynomial."""
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    return out


def _reduce(coeffs, phi, mod=None):
    c = list(coeffs)
    n = len(phi) - 1
    for i in range(len(c) - 1, n - 1, -1):
        t = c[i]
        if t:
            for j in range(n + 1):
                c[i - n + j] -= t * phi[j]
    c = c[:n] + [0] * max(0, n - len(c))
    if mod is not None:
        c = [x % mod for x in c]
    return tuple(c)


@dataclass(frozen=True)
class CycloElement:
    """Element of R[x]/Phi_k(x) with R = Z, Q, or Z/mod (x plays zeta_k)."""

    k: int
    coeffs: tuple
    mod: Optional[int] = None

    @classmethod
    def zero(cls, k: int, mod=None):
        return cls(k, tuple([0] * (len(cyclotomic_poly(k)) - 1)), mod)

    @classmethod
    def zeta_power(cls, k: int, e: int, mod=None):
        c = [0] * k
        c[e % k] = 1
        return cls(k, _reduce(c, cyclotomic_poly(k), mod), mod)

    @classmethod
    def from_int(cls, k: int, a, mod=None):
        c = [0] * (len(cyclotomic_poly(k)) - 1)
        c[0] = a
        return cls(k, _reduce(c, cyclotomic_poly(k), mod), mod)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def _like(self, coeffs):
        return CycloElement(self.k, _reduce(coeffs, cyclotomic_poly(self.k), self.mod), self.mod)

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.k != self.k:
                raise ValueError("mismatched cyclotomic orders")
            return other
        return CycloElement.from_int(self.k, other, self.mod)

    def __add__(self, other):
        o = self._coerce(other)
        return self._like([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloElement):
            return self._like([a * other for a in self.coeffs])
        o = self._coerce(other)
        out = [0] * (len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CycloElement.from_int(self.k, 1, self.mod)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        """Image under zeta -> zeta^{-1}."""
        out = [0] * self.k
        for i, a in enumerate(self.coeffs):
            out[(-i) % self.k] += a
        return self._like(out)

    def lift(self, k: int):
        """Same element viewed in Z[zeta_k] for a multiple k."""
        if k % self.k:
            raise ValueError("can only lift to a multiple of the order")
        r = k // self.k
        out = [0] * k
        for i, a in enumerate(self.coeffs):
            out[i * r] += a
        return CycloElement(k, _reduce(out, cyclotomic_poly(k), self.mod), self.mod)

    def is_integer(self):
        return all(x == 0 for x in self.coeffs[1:])

    def __eq__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.from_int(self.k, other, self.mod)
        if other.k != self.k:
            L = _lcm(self.k, other.k)
            return self.lift(L).coeffs == other.lift(L).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.k, self.coeffs, self.mod))

    def complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.k)
        return sum((complex(float(a)) * z ** i for i, a in enumerate(self.coeffs)), 0j)


def gauss_sum(chi: DirichletCharacter) -> CycloElement:
    """tau(chi) = sum_{a mod f} chi(a) zeta_f^a in Z[zeta_lcm(f, order)]."""
    if not chi.is_primitive:
        raise ValueError("Gauss sums are taken for primitive characters")
    f = chi.modulus
    if f == 1:
        return CycloElement.from_int(1, 1)
    L = _lcm(f, chi.order)
    out = [0] * L
    for a in range(f):
        x = chi(a)
        if x is None:
            continue
        out[(int(x * L) + a * (L // f)) % L] += 1
    return CycloElement(L, _reduce(out, cyclotomic_poly(L)))


# p-adic embeddings --------------------------------------------------------

def embed_root_of_unity(x: Fraction, p: int, N: int) -> PadicInt:
    """exp(2 pi i x) in Z/p^N; needs the order of x to divide p - 1.

    zeta_{p-1} is sent to the Teichmuller lift of the smallest primitive root.
    """
    x = Fraction(x) % 1
    d = x.denominator
    if (p - 1) % d:
        raise EmbeddingUnsupported(f"root of unity of order {d} does not lie in Z_{p}")
    w = teichmuller(primitive_root(p), p, N)
    return w ** (int(x * (p - 1)))


@lru_cache(maxsize=None)
def ramified_modulus(p: int, k: int) -> tuple:
    """Phi_{p^k}(1 + x) as integer coefficients, low degree first."""
    phi = cyclotomic_poly(p ** k)
    out = [0] * len(phi)
    # substitute x -> 1 + x via binomial expansion
    from math import comb
    for i, c in enumerate(phi):
        if c:
            for j in range(i + 1):
                out[j] += c * comb(i, j)
    return tuple(out)


@dataclass(frozen=True)
class RamifiedElement:
    """Element of Z/p^N[x]/Phi_{p^k}(1+x); x is the uniformiser zeta - 1."""

    p: int
    k: int
    N: int
    coeffs: tuple

    @property
    def e(self) -> int:
        return (self.p - 1) * self.p ** (self.k - 1) if self.k else 1

    @classmethod
    def from_int(cls, a, p, k, N):
        e = (p - 1) * p ** (k - 1) if k else 1
        c = [0] * e
        c[0] = int(a) % p ** N
        return cls(p, k, N, tuple(c))

    @classmethod
    def zeta_power(cls, s: int, p, k, N):
        """(1 + x)^s, i.e. the image of zeta_{p^k}^s."""
        if k == 0:
            return cls.from_int(1, p, 0, N)
        e = (p - 1) * p ** (k - 1)
        base = cls(p, k, N, tuple([1, 1] + [0] * (e - 2)))
        return base ** (s % p ** k)

    def _like(self, coeffs):
        mod = ramified_modulus(self.p, self.k) if self.k else (0, 1)
        if self.k == 0:
            # Phi_1(1+x) = x, the ring is Z/p^N itself
            return RamifiedElement(self.p, 0, self.N, (sum(c for c in coeffs[:1]) % self.p ** self.N,))
        return RamifiedElement(self.p, self.k, self.N, _reduce(coeffs, mod, self.p ** self.N))

    def _coerce(self, other):
        if isinstance(other, RamifiedElement):
            return other
        if isinstance(other, PadicInt):
            other = other.residue
        return RamifiedElement.from_int(other, self.p, self.k, self.N)

    def __add__(self, other):
        o = self._coerce(other)
        return self._like([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        out = [0] * (len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, s: int):
        out = RamifiedElement.from_int(1, self.p, self.k, self.N)
        base = self
        while s:
            if s & 1:
                out = out * base
            base = base * base
            s >>= 1
        return out

    def valuation(self) -> Fraction:
        """min_i v(r_i) + i/e, capped at N (the ambiguity of every residue)."""
        best = Fraction(self.N)
        for i, r in enumerate(self.coeffs):
            r %= self.p ** self.N
            if r:
                best = min(best, vp(r, self.p) + Fraction(i, self.e))
        return best

    def is_zero(self) -> bool:
        return all(c % self.p ** self.N == 0 for c in self.coeffs)


def padic_embed(x: CycloElement, p: int, N: int):
    """Image of a cyclotomic integer in Z/p^N (order | p-1) or in the ramified ring.

    An order k = k0 * p^j with k0 | p - 1 maps zeta_k to the product of the
    Teichmuller image of zeta_{k0} and 1 + x for zeta_{p^j}.
    """
    k = x.k
    j = 0
    k0 = k
    while k0 % p == 0:
        k0 //= p
        j += 1
    if (p - 1) % k0:
        raise EmbeddingUnsupported(f"zeta_{k} has no image in the supported rings")
    if j == 0:
        z = embed_root_of_unity(Fraction(1, k0), p, N) if k0 > 1 else PadicInt(1, p, N)
        acc = PadicInt(0, p, N)
        zi = PadicInt(1, p, N)
        for c in x.coeffs:
            acc = acc + zi * PadicInt.from_rational(c, p, N)
            zi = zi * z
        return acc
    # zeta_k = zeta_{k0}^a zeta_{p^j}^b with a p^j + b k0 = 1
    pj = p ** j
    a = pow(pj, -1, k0) if k0 > 1 else 0
    b = pow(k0, -1, pj)
    z0 = embed_root_of_unity(Fraction(a, k0), p, N) if k0 > 1 else PadicInt(1, p, N)
    z1 = RamifiedElement.zeta_power(b, p, j, N)
    z = z1 * z0.residue
    acc = RamifiedElement.from_int(0, p, j, N)
    zi = RamifiedElement.from_int(1, p, j, N)
    for c in x.coeffs:
        acc = acc + zi * int(PadicInt.from_rational(c, p, N))
        zi = zi * z
    return acc
