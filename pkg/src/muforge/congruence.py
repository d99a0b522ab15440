"""Congruences between curves and the mu-comparison verdicts built on them.

Evidence for an isomorphism E1[p^i] = E2[p^i] is agreement of a_l mod p^i
up to a Sturm-type bound; it is reported as evidence, never as a proof.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .arith import (MuLambda, PadicInt, PadicSeries, _val_capped, binom_power,
                    frobenius_exponent, mu_lambda, vp_factorial)
from .curves import CurveData, good_ordinary, load_corpus, prime_factors, primes_up_to
from .dirichlet import DirichletCharacter
from .errors import EllEqualsP, NotOrdinary, PrecisionInsufficient
from .lfun.theta import LpSeries, lp_for_curve
from .msym import curve_symbol, eval_symbol, sturm_bound

PASS, FAIL, NA = "pass", "fail", "not-applicable"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# irreducibility -----------------------------------------------------------

def certify_irreducible(E: CurveData, p: int, prime_bound: int = 100) -> Optional[int]:
    """A prime l whose Frobenius polynomial has no root mod p, or None.

    Such an l shows rho-bar(Frob_l) has no F_p-eigenvector, so E[p] is
    irreducible.  None means "not certified", not "reducible".
    """
    for ell in primes_up_to(prime_bound):
        if ell == p or E.conductor % ell == 0:
            continue
        a = E.ap(ell)
        disc = (a * a - 4 * ell) % p
        if disc and pow(disc, (p - 1) // 2, p) == p - 1:
            return ell
    return None


# congruence evidence ------------------------------------------------------

@dataclass(frozen=True)
class Evidence:
    p: int
    i: int
    bound: int
    rows: tuple  # (l, a_l, b_l, agrees)
    passed: bool
    witness: Optional[int]

    def as_dict(self):
        return {"p": self.p, "i": self.i, "bound": self.bound, "passed": self.passed,
                "witness": self.witness,
                "ap_checks": [{"ell": l, "a": a, "b": b, "agrees": ok} for l, a, b, ok in self.rows]}


def evidence_bound(N1: int, N2: int, p: int, extra_margin: float = 1.0) -> int:
    return int(sturm_bound(_lcm(N1, N2) * p * p) * extra_margin)


def congruence_evidence(E1: CurveData, E2: CurveData, p: int, i: int,
                        extra_margin: float = 1.0) -> Evidence:
    """a_l(E1) = a_l(E2) mod p^i for l up to the bound with l prime to N1 N2 p, and at l = p."""
    bound = evidence_bound(E1.conductor, E2.conductor, p, extra_margin)
    q = p ** i
    bad = E1.conductor * E2.conductor * p
    rows = []
    witness = None
    for ell in primes_up_to(max(bound, p)):
        if ell != p and (bad % ell == 0 or ell > bound):
            continue
        a, b = E1.ap(ell), E2.ap(ell)
        ok = (a - b) % q == 0
        rows.append((ell, a, b, ok))
        if not ok and witness is None:
            witness = ell
    return Evidence(p, i, bound, tuple(rows), witness is None, witness)


# Euler polynomials and Sigma-incomplete series -----------------------------

@dataclass(frozen=True)
class EulerPoly:
    ell: int
    series: PadicSeries
    flavor: str  # "good", "bad" or "dropped"

    def has_unit_coefficient(self) -> bool:
        return any(v == 0 and c > 0 for v, c in zip(self.series.valuations(), self.series.cert))

    def invariants(self) -> MuLambda:
        return mu_lambda(self.series)


def euler_poly(E: CurveData, ell: int, chi: DirichletCharacter, p: int, M: int, N: int) -> EulerPoly:
    """1 - a_l chibar(l) l^-1 X + [good l] chibar(l)^2 l^-1 X^2 with X = (1+T)^(f_l)."""
    if ell == p:
        raise EllEqualsP(f"the Euler factor at p = {p} is never removed")
    chi = chi.primitive()
    if chi.modulus % ell == 0:
        return EulerPoly(ell, PadicSeries.one(M, p, N), "dropped")
    extra = vp_factorial(max(M - 1, 0), p)
    Nf = N + extra
    f = frobenius_exponent(ell, p, Nf)
    X = binom_power(f, M, Nf)
    cb = chi.conj().padic(ell, p, Nf)
    linv = PadicInt(ell % p ** Nf, p, Nf).inverse()
    c1 = -(cb * linv * E.ap(ell))
    out = PadicSeries.one(M, p, Nf) + X.scale(c1)
    flavor = "bad"
    if E.conductor % ell:
        X2 = binom_power(f * 2, M, Nf)
        out = out + X2.scale(cb * cb * linv)
        flavor = "good"
    return EulerPoly(ell, PadicSeries(out.residues, p, N, out.cert), flavor)


def sigma_incomplete(L: LpSeries, sigma: Iterable[int], chi: Optional[DirichletCharacter] = None) -> LpSeries:
    """L times the Euler polynomials of the primes in sigma."""
    chi = chi or L.character
    F = L.series
    for ell in sorted(set(sigma)):
        if ell == L.p:
            raise EllEqualsP(f"sigma may not contain p = {ell}")
        F = F * euler_poly(L.curve, ell, chi, L.p, F.M, F.N).series
    return LpSeries(F, L.curve, L.character, L.stabilization_level, L.agreement, L.symbol)


def depleted_twisted_sum(E: CurveData, chi: DirichletCharacter, p: int, sigma: Iterable[int]) -> Fraction:
    """sum_b chi(b) lambda(b / f) times prod over sigma of the Euler factors at s = 1.

    For quadratic chi this is the exact algebraic shadow of the Sigma-incomplete
    twisted L-value; congruent pairs agree on it modulo p up to a unit.
    """
    chi = chi.primitive()
    if chi.order > 2:
        raise ValueError("exact sums are only rational for characters of order at most 2")
    sym = curve_symbol(E, chi.parity, p)
    f = chi.modulus

    def val(c):
        x = chi(c)
        return 0 if x is None else (1 if x == 0 else -1)

    total = sum((val(b) * eval_symbol(sym, Fraction(b, f)) for b in range(f)), Fraction(0))
    for ell in sorted(set(sigma)):
        x = val(ell)
        factor = 1 - Fraction(E.ap(ell) * x, ell)
        if E.conductor % ell:
            factor += Fraction(x * x, ell)
        total *= factor
    return total


# unit matching ------------------------------------------------------------

def unit_match(F: PadicSeries, G: PadicSeries, i: int) -> Optional[PadicInt]:
    """A unit u with F = u G mod p^i coefficientwise, or None."""
    p = F.p
    M = min(F.M, G.M)
    if i <= 0:
        return PadicInt(1, p, 1)
    if min(F.cert[:M] + G.cert[:M]) < i:
        raise PrecisionInsufficient(f"series are not certified to p^{i}")
    q = p ** i
    f = [r % q for r in F.residues[:M]]
    g = [r % q for r in G.residues[:M]]
    vf = [_val_capped(x, p, i) for x in f]
    vg = [_val_capped(x, p, i) for x in g]
    v = min(min(vf), min(vg))
    if v >= i:
        return PadicInt(1, p, i)
    if min(vf) != min(vg):
        return None
    for j in range(M):
        if vf[j] == v and vg[j] == v:
            k = i - v
            mod = p ** k
            u = (f[j] // p ** v) * pow(g[j] // p ** v, -1, mod) % mod
            if all((a - u * b) % q == 0 for a, b in zip(f, g)):
                return PadicInt(u, p, k)
            return None
    return None


# verdicts -----------------------------------------------------------------

@dataclass
class CongruenceReport:
    curves: tuple
    p: int
    character: DirichletCharacter
    sigma: tuple
    i_tested: tuple
    evidence: dict
    irreducibility: tuple
    units: dict
    mu1: MuLambda
    mu2: MuLambda
    sigma_mu: tuple
    verdicts: dict
    notes: list = field(default_factory=list)
    series: tuple = ()

    @property
    def all_pass(self) -> bool:
        return all(v == PASS for v in self.verdicts.values())

    @property
    def hypotheses_met(self) -> bool:
        return all(v != NA for v in self.verdicts.values())

    def as_dict(self):
        def unit(u):
            return None if u is None else {"value": u.residue, "p": u.p, "precision": u.N}

        return {
            "curves": [E.spec_string() for E in self.curves],
            "labels": [E.label for E in self.curves],
            "p": self.p,
            "character": self.character.describe(),
            "sigma": list(self.sigma),
            "i_tested": list(self.i_tested),
            "evidence": {str(i): e.as_dict() for i, e in sorted(self.evidence.items())},
            "irreducibility": [None if c is None else {"certifying_prime": c} for c in self.irreducibility],
            "units": {str(i): unit(u) for i, u in sorted(self.units.items())},
            "mu_lambda": [self.mu1.as_dict(), self.mu2.as_dict()],
            "sigma_mu_lambda": [m.as_dict() for m in self.sigma_mu],
            "verdicts": dict(self.verdicts),
            "notes": list(self.notes),
        }


def _mu_at_least(m: MuLambda, bound: int) -> Optional[bool]:
    if m.determinate:
        return m.mu >= bound
    return True if m.mu_lower >= bound else None


def verify_theorems(E1: CurveData, E2: CurveData, p: int, chi: Optional[DirichletCharacter] = None,
                    M: int = 8, N: int = 3, extra_margin: float = 1.0, sigma=None,
                    n_max: int = 8, irreducibility_bound: int = 100) -> CongruenceReport:
    """Run the mu-comparison pipeline for a pair of curves.

    mu_inequality: mu1 <= mu2 given evidence at i = mu1 (trivial when mu1 = 0);
    mu_equality: mu1 = mu2 given evidence at i = mu1 + 1;
    sigma_congruence: the Sigma-incomplete series agree mod p^i up to a unit
    at every evidenced i.  All three need certified irreducibility.
    """
    chi = (chi or DirichletCharacter.trivial()).primitive()
    for E in (E1, E2):
        if not good_ordinary(E, p):
            raise NotOrdinary(f"{E} is not good ordinary at {p}")
    if sigma is None:
        sigma = prime_factors(E1.conductor * E2.conductor)
    sigma = tuple(sorted(set(sigma)))
    if p in sigma:
        raise EllEqualsP(f"sigma may not contain p = {p}")
    certs = (certify_irreducible(E1, p, irreducibility_bound), certify_irreducible(E2, p, irreducibility_bound))
    L1 = lp_for_curve(E1, p, chi, M, N, n_max)
    L2 = lp_for_curve(E2, p, chi, M, N, n_max)
    mu1, mu2 = L1.invariants(), L2.invariants()
    S1, S2 = sigma_incomplete(L1, sigma, chi), sigma_incomplete(L2, sigma, chi)
    smu = (S1.invariants(), S2.invariants())
    notes = []
    verdicts = {"sigma_congruence": NA, "mu_inequality": NA, "mu_equality": NA}
    report = CongruenceReport((E1, E2), p, chi, sigma, (), {}, certs, {}, mu1, mu2, smu, verdicts, notes,
                              (L1, L2, S1, S2))
    if None in certs:
        notes.append("irreducibility of E[p] not certified for both curves; no theorem applies")
        return report
    if not mu1.determinate:
        notes.append("mu of the first curve is indeterminate at this precision; raise N or M")
        return report
    m1 = mu1.mu
    tested = sorted({i for i in (m1, m1 + 1) if i >= 1})
    report.i_tested = tuple(tested)
    for i in tested:
        report.evidence[i] = congruence_evidence(E1, E2, p, i, extra_margin)
    evidenced = [i for i in tested if report.evidence[i].passed]
    if not evidenced:
        w = report.evidence[tested[0]].witness
        notes.append(f"no congruence evidence mod p^{tested[0]} (witness l = {w}); no theorem applies")
        return report
    # sigma congruence at each evidenced i
    ok = True
    for i in evidenced:
        if i > N:
            notes.append(f"precision p^{N} is below the evidenced exponent {i}; congruence mod p^{i} skipped")
            continue
        try:
            u = unit_match(S1.series, S2.series, i)
        except PrecisionInsufficient as exc:
            notes.append(str(exc))
            continue
        report.units[i] = u
        ok &= u is not None
    if report.units:
        verdicts["sigma_congruence"] = PASS if ok else FAIL
    # mu1 <= mu2
    if m1 == 0:
        verdicts["mu_inequality"] = PASS
        notes.append("mu1 = 0, so mu1 <= mu2 holds trivially")
    elif m1 in evidenced:
        ge = _mu_at_least(mu2, m1)
        verdicts["mu_inequality"] = NA if ge is None else (PASS if ge else FAIL)
    # mu1 = mu2
    if (m1 + 1) in evidenced:
        if mu2.determinate:
            verdicts["mu_equality"] = PASS if mu2.mu == m1 else FAIL
        else:
            notes.append("mu of the second curve is indeterminate; equality not decided")
    elif (m1 + 1) in report.evidence:
        notes.append(f"no congruence evidence mod p^{m1 + 1} (witness l = {report.evidence[m1 + 1].witness})")
    return report


# scanning -----------------------------------------------------------------

def _fingerprint(E: CurveData, p: int, primes) -> tuple:
    return tuple(None if E.conductor % ell == 0 else E.ap(ell) % p for ell in primes)


def _compatible(f1, f2) -> bool:
    return all(a is None or b is None or a == b for a, b in zip(f1, f2))


def _isogenous(E1: CurveData, E2: CurveData, bound: int) -> bool:
    if E1.conductor != E2.conductor:
        return False
    return all(E1.ap(ell) == E2.ap(ell) for ell in primes_up_to(bound) if E1.conductor % ell)


def scan_pairs(conductor_bound: int, p: int, corpus=None, extra_margin: float = 1.0,
               workers: int = 1, irreducibility_bound: int = 100):
    """Non-isogenous corpus pairs that look congruent mod p.

    Returns a list of (E1, E2, Evidence) with E1 listed before E2 in the corpus.
    """
    curves = corpus if corpus is not None else load_corpus()
    curves = [E for E in curves if E.conductor <= conductor_bound]

    def admissible(E):
        return good_ordinary(E, p) and certify_irreducible(E, p, irreducibility_bound) is not None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            flags = list(ex.map(admissible, curves))
    else:
        flags = [admissible(E) for E in curves]
    pool = [E for E, ok in zip(curves, flags) if ok]
    small = [q for q in primes_up_to(60) if q != p]
    prints = [_fingerprint(E, p, small) for E in pool]
    out = []
    for a in range(len(pool)):
        for b in range(a + 1, len(pool)):
            if not _compatible(prints[a], prints[b]):
                continue
            E1, E2 = pool[a], pool[b]
            ev = congruence_evidence(E1, E2, p, 1, extra_margin)
            if not ev.passed:
                continue
            if _isogenous(E1, E2, ev.bound):
                continue
            out.append((E1, E2, ev))
    return out
