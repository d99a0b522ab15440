"""Eigen-functionals attached to elliptic curves and their evaluation."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import ceil, gcd
from typing import Optional

from ..arith import vp
from ..curves import CurveData, primes_up_to, psl2_index
from ..errors import EigenlineNotFound, EigenlineNotUnique
from . import linalg
from .space import ManinBasis, lift_to_sl2

# extra primes tried when the Sturm range leaves more than a line
EXTRA_PRIME_CAP = 60


@dataclass(frozen=True)
class EigenSymbol:
    """The sign-eigen functional of a curve's newform on modular symbols.

    ``functional`` is a column vector on the free generators of ``basis``;
    ``values`` caches its value on every Manin symbol.
    """

    curve: CurveData
    sign: int
    functional: tuple
    basis: ManinBasis
    normalization_scale: Fraction = Fraction(1)
    p: Optional[int] = None

    @property
    def values(self) -> tuple:
        v = self.__dict__.get("_values")
        if v is None:
            v = tuple(sum((x * y for x, y in zip(c, self.functional) if x and y), Fraction(0))
                      for c in self.basis.coords)
            object.__setattr__(self, "_values", v)
        return v

    def scaled(self, c) -> "EigenSymbol":
        c = Fraction(c)
        return replace(self, functional=tuple(c * x for x in self.functional),
                       normalization_scale=self.normalization_scale * c)

    def __call__(self, r) -> Fraction:
        return eval_symbol(self, r)

    def denominator(self) -> int:
        return linalg.lcm_denominator(self.values)


def sturm_bound(M: int) -> int:
    return ceil(Fraction(psl2_index(M), 6))


def _kernel_restrict(V, A):
    """Columns c with A (V c) = 0, returned as new column basis V c."""
    # V is a list of column vectors; build A V
    AV = [[sum((a * v for a, v in zip(row, col) if a and v), Fraction(0)) for col in V]
          for row in A]
    ker = linalg.kernel(AV, len(V))
    return [[sum((k * col[i] for k, col in zip(kv, V) if k), Fraction(0))
             for i in range(len(V[0]))] for kv in ker]


def eigen_functional(basis: ManinBasis, E: CurveData, sign: int, primes=None) -> EigenSymbol:
    """Functional phi with phi(T_ell x) = a_ell phi(x) and phi(x*) = sign phi(x)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    N = basis.level
    if E.conductor != N:
        raise EigenlineNotFound(f"curve conductor {E.conductor} differs from level {N}")
    n = basis.dimension
    if n == 0:
        raise EigenlineNotFound(f"no modular symbols at level {N}")
    S = basis.star_matrix()
    V = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    # phi as a column: phi(x) = coords(x) . phi, so phi(Tx) = coords(x) T phi
    V = _kernel_restrict(V, linalg.sub_scalar(S, sign))
    if primes is None:
        bound = sturm_bound(N)
        primes = [q for q in primes_up_to(max(bound, EXTRA_PRIME_CAP)) if N % q]
        core = [q for q in primes if q <= bound]
    else:
        core = list(primes)
    used = []
    for q in primes:
        if not V:
            break
        if q not in core and len(V) <= 1:
            break
        T = basis.hecke_matrix(q)
        V = _kernel_restrict(V, linalg.sub_scalar(T, E.ap(q)))
        used.append(q)
    if not V:
        raise EigenlineNotFound(f"no eigenline for {E} with sign {sign} (primes {used})")
    if len(V) > 1:
        raise EigenlineNotUnique(f"eigenspace of dimension {len(V)} for {E} (primes {used})")
    phi = V[0]
    return EigenSymbol(E, sign, tuple(phi), basis)


def _integral_generator(sym: EigenSymbol) -> Fraction:
    """Positive generator of phi(L), L = integral sign-invariant cuspidal symbols.

    L is the set of integer combinations n of Manin symbols with zero
    boundary and n* = sign n.  Each Manin symbol contributes one row:
    [boundary | coords(x*) - sign coords(x) | phi(x)], scaled to integers.
    An integer echelon form of the rows exposes phi(L) as the entry of the
    single row whose pivot sits in the last column.
    """
    B = sym.basis
    P = B.p1
    N = B.level
    from .space import CuspList

    cusps = CuspList(N)
    rows_b, rows_s, rows_v = [], [], []
    for i, (c, d) in enumerate(P):
        a, b, cc, dd = lift_to_sl2(c, d, N)
        rows_b.append((cusps.index(a, cc), cusps.index(b, dd)))
        star = B.coord_of(-c, d)
        rows_s.append([x - sym.sign * y for x, y in zip(star, B.coords[i])])
        rows_v.append(sym.values[i])
    nc = len(cusps.reps)
    dim = B.dimension
    ds = linalg.lcm_denominator(x for r in rows_s for x in r)
    dv = linalg.lcm_denominator(rows_v)
    rows = []
    for (i1, i2), s, v in zip(rows_b, rows_s, rows_v):
        row = [0] * (nc + dim + 1)
        row[i1] += 1
        row[i2] -= 1
        for k, x in enumerate(s):
            row[nc + k] = int(x * ds)
        row[-1] = int(v * dv)
        rows.append(row)
    ech = linalg.integer_echelon(rows)
    for r in ech:
        if all(x == 0 for x in r[:-1]) and r[-1]:
            return Fraction(abs(r[-1]), dv)
    raise EigenlineNotFound("functional vanishes on integral cuspidal symbols")


def normalize(sym: EigenSymbol, p: int) -> EigenSymbol:
    """Canonical integral scaling of the functional, then p-adic content one.

    First phi is scaled so that it maps the integral sign-invariant cuspidal
    lattice onto Z; then the first nonzero Manin-symbol value is made
    positive; finally a power of p is applied so that every Manin-symbol
    value is p-integral and at least one is a p-adic unit.
    """
    g = _integral_generator(sym)
    out = sym.scaled(1 / g)
    first = next(x for x in out.values if x)
    if first < 0:
        out = out.scaled(-1)
    m = min(vp(x.numerator, p) - vp(x.denominator, p) for x in out.values if x)
    if m:
        out = out.scaled(Fraction(p) ** (-m))
    return replace(out, p=p)


def convergent_denominators(r: Fraction):
    """Denominators q_{-1}=0, q_0, ..., q_n of the continued fraction of r."""
    r = Fraction(r)
    num, den = r.numerator, r.denominator
    qs = [0, 1]
    first = True
    while den:
        a, rem = divmod(num, den)
        if not first:
            qs.append(a * qs[-1] + qs[-2])
        first = False
        num, den = den, rem
    return qs


def manin_path(r: Fraction):
    """Manin symbols (c, d) with {inf, r} equal to their sum."""
    qs = convergent_denominators(r)
    out = []
    for k in range(len(qs) - 1):
        qk, qkm1 = qs[k + 1], qs[k]
        s = 1 if k % 2 else -1  # (-1)^(k-1)
        out.append((qk, s * qkm1))
    return out


def eval_symbol(sym: EigenSymbol, r) -> Fraction:
    """lambda(r) = phi({r, inf}); the cusp at infinity gives 0."""
    if r is None:
        return Fraction(0)
    vals = sym.values
    P = sym.basis.p1
    total = Fraction(0)
    for c, d in manin_path(Fraction(r)):
        total += vals[P.index(c, d)]
    return -total


_SPACES = {}
_SYMBOLS = {}
_CACHE = {"dir": None}


def configure_cache(directory=None):
    """Route curve_symbol through an on-disk cache (None disables it)."""
    _CACHE["dir"] = directory


def space_for(N: int) -> ManinBasis:
    B = _SPACES.get(N)
    if B is None:
        from .space import build_space

        B = _SPACES.setdefault(N, build_space(N))
    return B


def _build_symbol(E: CurveData, sign: int, p: int) -> EigenSymbol:
    return normalize(eigen_functional(space_for(E.conductor), E, sign), p)


def curve_symbol(E: CurveData, sign: int, p: int) -> EigenSymbol:
    """Normalized sign-symbol of E at p, memoised in-process."""
    key = (E.ainvs, E.conductor, sign, p)
    sym = _SYMBOLS.get(key)
    if sym is None:
        if _CACHE["dir"] is not None:
            from .cache import load_or_build

            sym = load_or_build(E, sign, p, _CACHE["dir"], _build_symbol)
        else:
            sym = _build_symbol(E, sign, p)
        _SYMBOLS[key] = sym
    return sym


def p_shift(sym: EigenSymbol) -> int:
    """Power of p applied after the integral-lattice scaling in normalize."""
    g = _integral_generator(replace(sym, normalization_scale=Fraction(1)))
    # sym = lattice-normalized * ± p^k, and its lattice generator is p^k
    x = g
    return vp(x.numerator, sym.p) - vp(x.denominator, sym.p)
