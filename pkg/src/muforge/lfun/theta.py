"""Theta elements and the p-adic L-series they converge to.

For a primitive character chi of conductor m prime to p, the measure on
Z_p^x is built from twisted Riemann sums of the sign-symbol:

    S_n(a) = sum over c mod m p^n with c = a (mod p^n) of chi(c) lambda(c / (m p^n))
    mu(a + p^n Z_p) = alpha^-n S_n(a) - alpha^-(n+1) S_{n-1}(a)

The Hecke relation at p makes mu a distribution, and its total mass on the
units is (1 - chi(p)/alpha)(1 - conj(chi)(p)/alpha) S_0.  Writing a unit as
omega(a) (1+p)^s, the level-n theta element is

    theta_n(T) = sum_j c_{n,j} (1+T)^j,  c_{n,j} = sum_eta mu(eta (1+p)^j mod p^n),

with j running over [0, p^(n-1)).  Replacing (1+T)^s by its value at the
ball representative moves the coefficient of T^i by at most
p^(n-1-floor(log_p i)), which is the precision certificate recorded here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from ..arith import MuLambda, PadicInt, PadicSeries, mu_lambda, teichmuller, unit_root
from ..curves import CurveData
from ..dirichlet import DirichletCharacter
from ..errors import NotOrdinary, ParityMismatch, StabilizationFailed
from ..msym import EigenSymbol, curve_symbol, eval_symbol

DEFAULT_MAX_LEVEL = 8


def _log_floor(j: int, p: int) -> int:
    k = 0
    while j >= p:
        j //= p
        k += 1
    return k


def apriori_cert(i: int, n: int, p: int, N: int) -> int:
    """Certified precision of the T^i coefficient of theta_n against the limit."""
    if i == 0:
        return N
    return max(0, min(N, n - 1 - _log_floor(i, p)))


def _check(sym: EigenSymbol, chi: DirichletCharacter, p: int):
    E = sym.curve
    if E.conductor % p == 0 or E.ap(p) % p == 0:
        raise NotOrdinary(f"{E} is not good ordinary at {p}")
    if chi.parity != sym.sign:
        raise ParityMismatch(f"character parity {chi.parity} does not match symbol sign {sym.sign}")
    if chi.modulus % p == 0:
        raise ValueError("the tame character must have conductor prime to p")
    if (p - 1) % chi.order:
        raise ValueError(f"character order {chi.order} does not divide p - 1")


def _symbol_residues(sym: EigenSymbol, D: int, p: int, N: int) -> list:
    """lambda(c/D) mod p^N for c in [0, D), memoised on the symbol."""
    memo = sym.__dict__.setdefault("_residue_memo", {})
    key = (D, p, N)
    if key not in memo:
        q = p ** N
        out = []
        for c in range(D):
            x = eval_symbol(sym, Fraction(c, D))
            out.append(x.numerator * pow(x.denominator, -1, q) % q)
        memo[key] = out
    return memo[key]


def riemann_sums(sym: EigenSymbol, chi: DirichletCharacter, n: int, N: int) -> list:
    """S_n(a) mod p^N for a in [0, p^n)."""
    p = sym.p
    m = chi.modulus
    pn = p ** n
    D = m * pn
    q = p ** N
    lam = _symbol_residues(sym, D, p, N)
    chars = [int(chi.padic(c, p, N)) for c in range(m)]
    S = [0] * pn
    for c in range(D):
        x = chars[c % m]
        if x:
            v = lam[c]
            if v:
                S[c % pn] = (S[c % pn] + x * v) % q
    return S


def exact_riemann_sum(sym: EigenSymbol, chi: DirichletCharacter, n: int, a: int) -> Fraction:
    """S_n(a) as an exact rational, for characters with values +-1."""
    if chi.order > 2:
        raise ValueError("exact sums are only rational for characters of order at most 2")
    p = sym.p
    m = chi.modulus
    pn = p ** n
    total = Fraction(0)
    for c in range(a % pn, m * pn, pn):
        x = chi(c)
        if x is not None:
            total += (1 if x == 0 else -1) * eval_symbol(sym, Fraction(c, m * pn))
    return total


@dataclass(frozen=True)
class ThetaLevel:
    n: int
    p: int
    N: int
    chi: DirichletCharacter
    sign: int
    coefficients: tuple  # c_{n,j} as PadicInt, j in [0, p^(n-1))

    def series(self, M: int) -> PadicSeries:
        """theta_n(T) mod T^M with a-priori certificates against the limit."""
        p, N = self.p, self.N
        q = p ** N
        vals = [int(c) for c in self.coefficients]
        res = []
        for i in range(M):
            s = 0
            for j, c in enumerate(vals):
                if c and j >= i:
                    s += c * comb(j, i)
            res.append(s % q)
        cert = [apriori_cert(i, self.n, p, N) for i in range(M)]
        return PadicSeries.from_ints(res, p, N, cert)

    def total(self) -> PadicInt:
        acc = PadicInt(0, self.p, self.N)
        for c in self.coefficients:
            acc = acc + c
        return acc


def _one_unit_table(p: int, n: int):
    """exponent j -> (1+p)^j mod p^n for j < p^(n-1)."""
    pn = p ** n
    out = []
    x = 1
    for _ in range(p ** (n - 1)):
        out.append(x)
        x = x * (1 + p) % pn
    return out


def measure(sym: EigenSymbol, chi: DirichletCharacter, n: int, N: int) -> dict:
    """a -> mu(a + p^n Z_p) mod p^N for units a mod p^n."""
    p = sym.p
    alpha = unit_root(sym.curve.ap(p), p, N)
    ainv = alpha.inverse()
    q = p ** N
    Sn = riemann_sums(sym, chi, n, N)
    Sm = riemann_sums(sym, chi, n - 1, N)
    c1 = int(ainv ** n)
    c2 = int(ainv ** (n + 1))
    pm = p ** (n - 1)
    return {a: (c1 * Sn[a] - c2 * Sm[a % pm]) % q for a in range(p ** n) if a % p}


def theta_level(sym: EigenSymbol, chi: DirichletCharacter, n: int, N: Optional[int] = None) -> ThetaLevel:
    if n < 1:
        raise ValueError("theta levels start at n = 1")
    p = sym.p
    N = N or n
    _check(sym, chi, p)
    mu = measure(sym, chi, n, N)
    pn = p ** n
    etas = [int(teichmuller(b, p, n)) for b in range(1, p)]
    q = p ** N
    coeffs = []
    for g in _one_unit_table(p, n):
        s = 0
        for eta in etas:
            s += mu[eta * g % pn]
        coeffs.append(PadicInt(s % q, p, N))
    return ThetaLevel(n, p, N, chi, sym.sign, tuple(coeffs))


@dataclass(frozen=True)
class LpSeries:
    series: PadicSeries
    curve: CurveData
    character: DirichletCharacter
    stabilization_level: int
    agreement: tuple = ()
    symbol: Optional[EigenSymbol] = field(default=None, compare=False, repr=False)

    @property
    def p(self) -> int:
        return self.series.p

    @property
    def cert(self) -> tuple:
        return self.series.cert

    def invariants(self) -> MuLambda:
        return mu_lambda(self.series)


def level_for(M: int, N: int, p: int) -> int:
    """Smallest level whose a-priori certificates reach N on T^0..T^(M-1)."""
    top = _log_floor(M - 1, p) if M > 1 else 0
    return max(2, N + 1 + top)


def lp_series(sym: EigenSymbol, chi: DirichletCharacter, M: int, N: int,
              n_max: int = DEFAULT_MAX_LEVEL) -> LpSeries:
    """L_p(E, chi, T) mod (p^N, T^M) with certified precision.

    The level is raised until every coefficient certificate reaches N and
    the series is compared with the previous level; the observed agreement
    is recorded alongside the certificates.
    """
    p = sym.p
    _check(sym, chi, p)
    chi = chi.primitive()
    target = level_for(M, N, p)
    if target > n_max:
        prev = theta_level(sym, chi, n_max - 1, N).series(M)
        cur = theta_level(sym, chi, n_max, N).series(M)
        raise StabilizationFailed(n_max, f"precision p^{N} on T^0..T^{M - 1} needs level {target} > {n_max}; "
                                         f"observed agreement {cur.agreement(prev)}")
    prev = theta_level(sym, chi, target - 1, N).series(M)
    cur = theta_level(sym, chi, target, N).series(M)
    agree = tuple(cur.agreement(prev))
    return LpSeries(cur, sym.curve, chi, target, agree, sym)


def lp_for_curve(E: CurveData, p: int, chi: Optional[DirichletCharacter] = None, M: int = 5, N: int = 3,
                 n_max: int = DEFAULT_MAX_LEVEL) -> LpSeries:
    chi = (chi or DirichletCharacter.trivial()).primitive()
    sym = curve_symbol(E, chi.parity, p)
    return lp_series(sym, chi, M, N, n_max)
