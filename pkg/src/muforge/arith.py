"""Fixed-precision p-adic integers, truncated power series over Z_p, and
the invariant extraction (mu, lambda) used throughout the package.

Residues are plain Python ints.  Every series coefficient carries its own
certified precision: a coefficient with certified precision ``c`` is known
modulo ``p**c`` and nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import NotAUnit, OrdinarityViolation, PrecisionExhausted

INDETERMINATE = "indeterminate"


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(j: int, p: int) -> int:
    """v_p(j!) by Legendre's formula."""
    v, q = 0, p
    while q <= j:
        v += j // q
        q *= p
    return v


def _val_capped(x: int, p: int, cap: int) -> int:
    if cap <= 0:
        return 0
    x %= p ** cap
    if x == 0:
        return cap
    return vp(x, p)


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^N, read as a p-adic integer known to precision N."""

    residue: int
    p: int
    N: int

    def __post_init__(self):
        if self.p < 3:
            raise ValueError("only odd primes are supported")
        if self.N < 0:
            raise ValueError("precision must be nonnegative")
        object.__setattr__(self, "residue", self.residue % self.p ** self.N)

    @classmethod
    def from_rational(cls, x, p: int, N: int) -> "PadicInt":
        x = Fraction(x)
        den = x.denominator
        if den % p == 0:
            raise NotAUnit(f"{x} is not p-integral at p={p}")
        mod = p ** N
        return cls(x.numerator * pow(den, -1, mod) if N else 0, p, N)

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def valuation(self) -> int:
        return _val_capped(self.residue, self.p, self.N)

    def is_unit(self) -> bool:
        return self.N > 0 and self.residue % self.p != 0

    def signed(self) -> int:
        """Representative in the symmetric range (-p^N/2, p^N/2]."""
        m = self.modulus
        r = self.residue
        return r - m if 2 * r > m else r

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicInt.from_rational(other, self.p, self.N)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.residue + o.residue, self.p, min(self.N, o.N))

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(-self.residue, self.p, self.N)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.residue - o.residue, self.p, min(self.N, o.N))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicInt(self.residue * o.residue, self.p, min(self.N, o.N))

    __rmul__ = __mul__

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self.residue} is not a unit mod {self.p}")
        return PadicInt(pow(self.residue, -1, self.modulus), self.p, self.N)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(pow(self.residue, e, self.modulus), self.p, self.N)

    def lift(self, N: int) -> "PadicInt":
        """Reduce (N <= self.N) to a coarser precision."""
        if N > self.N:
            raise PrecisionExhausted(f"cannot raise precision {self.N} to {N}")
        return PadicInt(self.residue, self.p, N)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.p}^{self.N})"


def unit_root(a_p: int, p: int, N: int) -> PadicInt:
    """The unit root of X^2 - a_p X + p in Z/p^N.

    Iterates the contraction alpha <- a_p - p/alpha from alpha = a_p; each
    step gains one p-adic digit.
    """
    if a_p % p == 0:
        raise OrdinarityViolation(f"p={p} divides a_p={a_p}")
    mod = p ** N
    alpha = a_p % mod
    for _ in range(N):
        alpha = (a_p - p * pow(alpha, -1, mod)) % mod
    return PadicInt(alpha, p, N)


def teichmuller(a: int, p: int, N: int) -> PadicInt:
    """Teichmuller lift omega(a): the (p-1)-st root of unity congruent to a."""
    if a % p == 0:
        raise NotAUnit(f"p={p} divides {a}")
    mod = p ** N
    x = a % mod
    for _ in range(N):
        x = pow(x, p, mod)
    return PadicInt(x, p, N)


def one_unit_part(a: int, p: int, N: int) -> PadicInt:
    """<a> = a * omega(a)^(-1), the projection of a to 1 + pZ_p."""
    return PadicInt(a, p, N) * teichmuller(a, p, N).inverse()


def padic_log(x: int, p: int, N: int) -> PadicInt:
    """Iwasawa logarithm of a one-unit x (x = 1 mod p), modulo p^N."""
    if x % p != 1 % p:
        raise ValueError("padic_log expects a one-unit")
    mod = p ** N
    u = (x - 1) % mod
    if u == 0:
        return PadicInt(0, p, N)
    total = 0
    power = 1
    # a term u^k/k with k - v_p(k) >= N vanishes mod p^N; this covers all others
    for k in range(1, 2 * N + 6):
        power *= u
        vk = vp(k, p)
        if k - vk >= N:
            continue
        term = (power // p ** vk) * pow(k // p ** vk, -1, mod)
        total += term if k % 2 else -term
    return PadicInt(total, p, N)


def frobenius_exponent(ell: int, p: int, N: int) -> PadicInt:
    """f_ell in Z/p^N with (1+p)^(-f_ell) = <ell>.

    The generator of 1 + pZ_p is fixed as 1 + p.
    """
    if ell % p == 0:
        raise ValueError("ell must be prime to p")
    work = N + 1
    ell_one = one_unit_part(ell, p, work).residue
    log_ell = padic_log(ell_one, p, work).residue
    log_gen = padic_log(1 + p, p, work).residue
    mod = p ** N
    # both logs are divisible by p; v_p(log(1+p)) = 1 exactly for odd p
    f = -(log_ell // p) * pow(log_gen // p, -1, mod)
    return PadicInt(f, p, N)


@dataclass(frozen=True)
class PadicSeries:
    """Element of (Z/p^N)[[T]]/(T^M) with per-coefficient certified precision.

    ``residues[j]`` is reduced modulo ``p**cert[j]``.
    """

    residues: tuple
    p: int
    N: int
    cert: tuple

    def __post_init__(self):
        if len(self.residues) != len(self.cert):
            raise ValueError("residues and cert must have equal length")
        cert = tuple(max(0, min(int(c), self.N)) for c in self.cert)
        res = tuple(int(r) % self.p ** c for r, c in zip(self.residues, cert))
        object.__setattr__(self, "cert", cert)
        object.__setattr__(self, "residues", res)

    @classmethod
    def from_ints(cls, values: Sequence[int], p: int, N: int, cert=None):
        values = tuple(values)
        if cert is None:
            cert = (N,) * len(values)
        return cls(values, p, N, tuple(cert))

    @classmethod
    def from_rationals(cls, values, p: int, N: int):
        return cls.from_ints([PadicInt.from_rational(v, p, N).residue for v in values], p, N)

    @classmethod
    def one(cls, M: int, p: int, N: int):
        return cls.from_ints([1] + [0] * (M - 1), p, N)

    @property
    def M(self) -> int:
        return len(self.residues)

    def __len__(self):
        return len(self.residues)

    @property
    def coeffs(self) -> tuple:
        return tuple(PadicInt(r, self.p, c) for r, c in zip(self.residues, self.cert))

    def __getitem__(self, j: int) -> PadicInt:
        return PadicInt(self.residues[j], self.p, self.cert[j])

    def valuations(self) -> list:
        """Observed valuation of each coefficient, capped at its certified precision."""
        return [_val_capped(r, self.p, c) for r, c in zip(self.residues, self.cert)]

    def truncate(self, M: int) -> "PadicSeries":
        return PadicSeries(self.residues[:M], self.p, self.N, self.cert[:M])

    def _check(self, other: "PadicSeries"):
        if other.p != self.p:
            raise ValueError("mixed primes")

    def __add__(self, other: "PadicSeries") -> "PadicSeries":
        self._check(other)
        M = min(self.M, other.M)
        N = min(self.N, other.N)
        return PadicSeries(
            tuple(self.residues[j] + other.residues[j] for j in range(M)),
            self.p, N,
            tuple(min(self.cert[j], other.cert[j]) for j in range(M)),
        )

    def __neg__(self):
        return PadicSeries(tuple(-r for r in self.residues), self.p, self.N, self.cert)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicInt)):
            return self.scale(other)
        self._check(other)
        p = self.p
        M = min(self.M, other.M)
        N = min(self.N, other.N)
        va, vb = self.valuations(), other.valuations()
        res, cert = [], []
        for k in range(M):
            s = 0
            c = N
            for i in range(k + 1):
                j = k - i
                s += self.residues[i] * other.residues[j]
                ca, cb = self.cert[i], other.cert[j]
                # (a + da)(b + db) - ab has valuation >= min of these
                c = min(c, va[i] + cb, vb[j] + ca, ca + cb)
            res.append(s)
            cert.append(c)
        return PadicSeries(tuple(res), p, N, tuple(cert))

    __rmul__ = __mul__

    def scale(self, c) -> "PadicSeries":
        if not isinstance(c, PadicInt):
            c = PadicInt.from_rational(c, self.p, self.N)
        vc = c.valuation
        cert = tuple(min(cj + vc, c.N + v) for cj, v in zip(self.cert, self.valuations()))
        return PadicSeries(tuple(r * c.residue for r in self.residues), self.p, self.N, cert)

    def agreement(self, other: "PadicSeries") -> list:
        """Per-coefficient exponent e such that the two agree mod p^e."""
        self._check(other)
        out = []
        for j in range(min(self.M, other.M)):
            c = min(self.cert[j], other.cert[j])
            out.append(_val_capped(self.residues[j] - other.residues[j], self.p, c))
        return out

    def signed_coeffs(self) -> list:
        return [PadicInt(r, self.p, c).signed() for r, c in zip(self.residues, self.cert)]

    def __repr__(self):
        terms = ", ".join(f"{r}/{self.p}^{c}" for r, c in zip(self.residues, self.cert))
        return f"PadicSeries([{terms}])"


def binom_power(f: PadicInt, M: int, N: Optional[int] = None) -> PadicSeries:
    """(1+T)^f truncated at T^M, with f a p-adic integer.

    Coefficient j is C(F, j) for an integer representative F of f; it is
    certified modulo p^(N - v_p(j!)).
    """
    p = f.p
    if N is None:
        N = f.N
    N = min(N, f.N)
    F = f.residue
    res, cert = [], []
    for j in range(M):
        c = N - vp_factorial(j, p)
        if c <= 0:
            raise PrecisionExhausted(
                f"coefficient {j} of (1+T)^f has no certified digits at precision {N}")
        res.append(comb(F, j))
        cert.append(c)
    return PadicSeries(tuple(res), p, N, tuple(cert))


@dataclass(frozen=True)
class MuLambda:
    """Iwasawa invariants of a truncated series.

    ``mu`` and ``lam`` are ints or the string ``"indeterminate"``.
    ``mu_lower`` is always a valid lower bound for the truncated window.
    """

    mu: object
    lam: object
    mu_lower: int = field(default=0)

    @property
    def determinate(self) -> bool:
        return self.mu != INDETERMINATE

    def as_dict(self):
        return {"mu": self.mu, "lambda": self.lam, "mu_lower_bound": self.mu_lower}


def mu_lambda(F: PadicSeries) -> MuLambda:
    """mu = least coefficient valuation, lambda = first index attaining it.

    A coefficient that vanishes to its certified precision c only says its
    valuation is >= c; such a coefficient makes mu (or lambda) indeterminate
    when c is too small to rule it out.
    """
    vals = F.valuations()
    known = [j for j in range(F.M) if vals[j] < F.cert[j]]
    lower = min(F.cert, default=0)
    if not known:
        return MuLambda(INDETERMINATE, INDETERMINATE, lower)
    mu = min(vals[j] for j in known)
    lam = min(j for j in known if vals[j] == mu)
    unknown = [j for j in range(F.M) if vals[j] >= F.cert[j]]
    if any(F.cert[j] < mu for j in unknown):
        return MuLambda(INDETERMINATE, INDETERMINATE, min(mu, lower))
    if any(j < lam and F.cert[j] <= mu for j in unknown):
        return MuLambda(mu, INDETERMINATE, mu)
    return MuLambda(mu, lam, mu)
