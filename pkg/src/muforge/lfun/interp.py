"""The multiplier e_p and the interpolation identity at T = zeta - 1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..arith import PadicInt, teichmuller, unit_root
from ..curves import CurveData
from ..dirichlet import DirichletCharacter, RamifiedElement
from ..errors import NotOrdinary
from ..msym import EigenSymbol, eval_symbol
from .theta import LpSeries


def ep_multiplier(E: CurveData, chi: DirichletCharacter, p: int, N: int, k: int = 0):
    """e_p(psi) for psi = chi * rho, rho of conductor p^k.

    With k >= 1 the character psi is ramified at p and e_p = alpha^-k; with
    k = 0 it is (1 - conj(psi)(p)/alpha)(1 - psi(p)/alpha).
    """
    if E.conductor % p == 0 or E.ap(p) % p == 0:
        raise NotOrdinary(f"{E} is not good ordinary at {p}")
    alpha = unit_root(E.ap(p), p, N)
    ainv = alpha.inverse()
    if k >= 1:
        return ainv ** k
    chi = chi.primitive()
    x = chi.padic(p, p, N)
    xb = chi.conj().padic(p, p, N)
    return (1 - xb * ainv) * (1 - x * ainv)


def log_index(c: int, p: int, n: int) -> int:
    """s with c / omega(c) = (1+p)^s mod p^n, for a unit c and s mod p^(n-1)."""
    pn = p ** n
    u = c * teichmuller(c % p, p, n).inverse().residue % pn
    x = 1
    for s in range(p ** (n - 1)):
        if x == u:
            return s
        x = x * (1 + p) % pn
    raise ValueError(f"{c} is not a unit mod {p}")


def _eval_series(L: LpSeries, k: int):
    """L(zeta - 1) with zeta of order p^k, and its certified precision."""
    S = L.series
    p, N = S.p, S.N
    if k == 0:
        return RamifiedElement.from_int(S.residues[0], p, 0, N), Fraction(S.cert[0])
    e = (p - 1) * p ** (k - 1)
    x = RamifiedElement(p, k, N, tuple([0, 1] + [0] * (e - 2)))
    acc = RamifiedElement.from_int(0, p, k, N)
    xi = RamifiedElement.from_int(1, p, k, N)
    prec = Fraction(S.M, e)
    for i, (r, c) in enumerate(zip(S.residues, S.cert)):
        acc = acc + xi * r
        prec = min(prec, c + Fraction(i, e))
        xi = xi * x
    return acc, prec


def algebraic_value(sym: EigenSymbol, chi: DirichletCharacter, p: int, N: int, k: int):
    """e_p(chi rho) * sum_{c mod f} (chi rho)(c) lambda(c / f) in the ramified ring.

    rho sends the one-unit part (1+p)^s of c to zeta^s, zeta of order p^k;
    its conductor is p^(k+1) when k >= 1.
    """
    E = sym.curve
    m = chi.modulus
    if k == 0:
        total = PadicInt(0, p, N)
        for c in range(m):
            x = chi.padic(c, p, N)
            if x.residue:
                total = total + x * PadicInt.from_rational(eval_symbol(sym, Fraction(c, m)), p, N)
        return RamifiedElement.from_int((ep_multiplier(E, chi, p, N) * total).residue, p, 0, N)
    pk1 = p ** (k + 1)
    f = m * pk1
    zpows = [RamifiedElement.zeta_power(s, p, k, N) for s in range(p ** k)]
    buckets = [0] * (p ** k)
    q = p ** N
    for c in range(f):
        if c % p == 0:
            continue
        x = chi.padic(c, p, N).residue
        if not x:
            continue
        lam = eval_symbol(sym, Fraction(c, f))
        if lam:
            s = log_index(c % pk1, p, k + 1)
            buckets[s] = (buckets[s] + x * PadicInt.from_rational(lam, p, N).residue) % q
    acc = RamifiedElement.from_int(0, p, k, N)
    for s, b in enumerate(buckets):
        if b:
            acc = acc + zpows[s] * b
    return acc * ep_multiplier(E, chi, p, N, k + 1).residue


@dataclass(frozen=True)
class InterpolationReport:
    k: int
    conductor_rho: int
    difference_valuation: Fraction
    certified_precision: Fraction
    passed: bool

    def as_dict(self):
        return {"zeta_order": f"p^{self.k}", "rho_conductor": self.conductor_rho,
                "difference_valuation": str(self.difference_valuation),
                "certified_precision": str(self.certified_precision), "pass": self.passed}


def interpolation_check(L: LpSeries, k: int, sym: Optional[EigenSymbol] = None) -> InterpolationReport:
    """Compare L(zeta_{p^k} - 1) with the exact twisted modular-symbol sum."""
    sym = sym or L.symbol
    p, N = L.p, L.series.N
    lhs, prec = _eval_series(L, k)
    rhs = algebraic_value(sym, L.character, p, N, k)
    diff = lhs - rhs
    v = diff.valuation()
    return InterpolationReport(k, p ** (k + 1) if k else 1, v, prec, v >= prec)
