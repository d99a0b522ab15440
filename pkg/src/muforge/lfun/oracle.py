"""Floating-point oracles: Neron periods and central L-values.

These never feed the p-adic pipeline; they cross-check its normalization.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import mpmath

from ..curves import CurveData, an_list, primes_up_to
from ..dirichlet import DirichletCharacter, gauss_sum


@dataclass(frozen=True)
class ComplexLValue:
    value: complex
    error_bound: float

    def as_dict(self):
        return {"real": self.value.real, "imag": self.value.imag, "error_bound": self.error_bound}


def neron_periods(E: CurveData, dps: int = 30):
    """(Omega_plus, Omega_minus, omega1, omega2) of the given model.

    omega1, omega2 form a basis of the period lattice of dx/(2y + a1 x + a3)
    with omega1 real and Im(omega2/omega1) > 0.  Omega_plus is the integral
    over the whole real locus (2 omega1 when there are two components) and
    Omega_minus generates the purely imaginary periods.
    """
    b2, b4, b6, _ = E.b_invariants
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([4, b2, 2 * b4, b6], maxsteps=200, extraprec=60)
        if E.discriminant > 0:
            e3, e2, e1 = sorted(mpmath.re(r) for r in roots)
            w1 = mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2))
            w2 = 1j * mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e2 - e3))
            om_plus, om_minus = 2 * w1, w2
        else:
            e1 = next(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2))
            a = 3 * e1 + mpmath.mpf(b2) / 4
            b = mpmath.sqrt(3 * e1 ** 2 + mpmath.mpf(b2) / 2 * e1 + mpmath.mpf(b4) / 2)
            w1 = 2 * mpmath.pi / mpmath.agm(2 * mpmath.sqrt(b), mpmath.sqrt(2 * b + a))
            w2 = -w1 / 2 + 1j * mpmath.pi / mpmath.agm(2 * mpmath.sqrt(b), mpmath.sqrt(2 * b - a))
            om_plus, om_minus = w1, 2 * w2 + w1
        return (float(om_plus), complex(om_minus), complex(w1), complex(w2))


def lattice_discriminant(w1: complex, w2: complex, terms: int = 60) -> complex:
    """(2 pi / w1)^12 q prod (1 - q^n)^24 with q = exp(2 pi i w2 / w1)."""
    tau = w2 / w1
    if tau.imag < 0:
        tau = -tau
    q = cmath.exp(2j * math.pi * tau)
    prod = 1 + 0j
    for n in range(1, terms):
        prod *= (1 - q ** n) ** 24
    return (2 * math.pi / w1) ** 12 * q * prod


def _terms_needed(c: float, tol: float) -> int:
    # tail of 4 sum_{n > n0} exp(-c n) is 4 exp(-c(n0+1)) / (1 - exp(-c))
    n0 = 1
    while 4 * math.exp(-c * (n0 + 1)) / (1 - math.exp(-c)) > tol:
        n0 = int(n0 * 1.5) + 1
    return n0


def _tail(c: float, n0: int) -> float:
    return 4 * math.exp(-c * (n0 + 1)) / (1 - math.exp(-c))


def _sums(an, chi_vals, m: int, N: int, A: float, n0: int):
    sN = math.sqrt(N)
    s1 = 0j
    s2 = 0j
    for n in range(1, n0 + 1):
        if not an[n]:
            continue
        x = chi_vals[n % m]
        if not x:
            continue
        s1 += an[n] * x / n * math.exp(-2 * math.pi * n * A / (m * sN))
        s2 += an[n] * x.conjugate() / n * math.exp(-2 * math.pi * n / (A * m * sN))
    return s1, s2


def root_number(E: CurveData, tol: float = 1e-10) -> int:
    """Sign of the functional equation, read off from A-independence."""
    N = E.conductor
    c = 2 * math.pi / math.sqrt(N) / 1.3
    n0 = _terms_needed(c, tol)
    an = an_list(E, n0)
    vals = [1 + 0j]
    best = None
    for w in (1, -1):
        f = []
        for A in (1.0, 1.3):
            s1, s2 = _sums(an, vals, 1, N, A, n0)
            f.append(s1 + w * s2)
        err = abs(f[0] - f[1])
        if best is None or err < best[0]:
            best = (err, w)
    return best[1]


def twist_root_number(E: CurveData, chi: DirichletCharacter, w: Optional[int] = None) -> complex:
    """w(E) chi(N) tau(chi)^2 / m for chi primitive of conductor m prime to N."""
    chi = chi.primitive()
    m = chi.modulus
    if math.gcd(m, E.conductor) != 1:
        raise ValueError("twist conductor must be prime to the level")
    w = root_number(E) if w is None else w
    tau = gauss_sum(chi).complex()
    return w * chi.complex(E.conductor) * tau * tau / m


def euler_factor_at_one(E: CurveData, chi: DirichletCharacter, ell: int) -> complex:
    """L_ell(E, chi, 1)^(-1) = 1 - a_ell chi(ell)/ell + [good] chi(ell)^2/ell."""
    x = chi.complex(ell)
    a = E.ap(ell)
    out = 1 - a * x / ell
    if E.conductor % ell:
        out += x * x / ell
    return out


def complex_L_value(E: CurveData, chi: Optional[DirichletCharacter] = None,
                    sigma: Iterable[int] = (), tol: float = 1e-12, A: float = 1.0) -> ComplexLValue:
    """L(E, chi, 1), or its Sigma-incomplete version, with a tail bound."""
    chi = (chi or DirichletCharacter.trivial()).primitive()
    N = E.conductor
    m = chi.modulus
    wchi = twist_root_number(E, chi)
    c = 2 * math.pi / (m * math.sqrt(N)) * min(A, 1 / A)
    n0 = _terms_needed(c, tol)
    an = an_list(E, n0)
    vals = [chi.complex(a) for a in range(m)]
    s1, s2 = _sums(an, vals, m, N, A, n0)
    value = s1 + wchi * s2
    err = _tail(c, n0)
    for ell in sigma:
        f = euler_factor_at_one(E, chi, ell)
        value *= f
        err *= abs(f)
    return ComplexLValue(complex(value), err)


def twisted_period_ratio(E: CurveData, sym, chi: DirichletCharacter, omega: float) -> complex:
    """sum_a conj(chi)(a) lambda(a/m) divided by tau(conj chi) L(E, chi, 1)/omega.

    For characters of one parity the ratio is a single rational constant
    when the symbol and the period are normalized compatibly.
    """
    from fractions import Fraction

    chi = chi.primitive()
    m = chi.modulus
    cb = chi.conj()
    alg = sum((cb.complex(a) * float(sym(Fraction(a, m))) for a in range(m)), 0j)
    L = complex_L_value(E, chi).value
    tau = gauss_sum(cb).complex()
    return alg / (tau * L / omega)
