"""Weight-2 modular symbols for Gamma_0(N) presented by Manin symbols."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .p1 import P1List


def xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lift_to_sl2(c: int, d: int, N: int):
    """A matrix (a, b, c', d') in SL2(Z) whose bottom row reduces to (c, d) mod N."""
    c %= N
    d %= N
    if c == 0:
        c = N
    t = d
    while gcd(c, t) != 1:
        t += N
    g, x, y = xgcd(c, t)
    # y*t + x*c = 1, so a = y, b = -x gives a*t - b*c = 1
    return y, -x, c, t


def _cusp(u: int, v: int):
    if v == 0:
        return (1, 0)
    if v < 0:
        u, v = -u, -v
    g = gcd(u, v)
    return (u // g, v // g)


def cusps_equivalent(c1, c2, N: int) -> bool:
    (u1, v1), (u2, v2) = c1, c2
    s1 = pow(u1, -1, v1) if v1 > 1 else (1 if v1 == 0 else 0)
    s2 = pow(u2, -1, v2) if v2 > 1 else (1 if v2 == 0 else 0)
    m = gcd(v1 * v2, N)
    return (s1 * v2 - s2 * v1) % m == 0


class CuspList:
    def __init__(self, N: int):
        self.N = N
        self.reps = []
        self._memo = {}

    def index(self, u: int, v: int) -> int:
        key = _cusp(u, v)
        if key in self._memo:
            return self._memo[key]
        for i, r in enumerate(self.reps):
            if cusps_equivalent(key, r, self.N):
                self._memo[key] = i
                return i
        self.reps.append(key)
        self._memo[key] = len(self.reps) - 1
        return self._memo[key]


def heilbronn_merel(ell: int):
    """Matrices [a b; c d] with ad - bc = ell, a > b >= 0, d > c >= 0."""
    out = []
    for a in range(1, ell + 1):
        for d in range(1, ell + 1):
            for b in range(a):
                r = a * d - ell
                if r < 0 or (b == 0 and r != 0):
                    continue
                if b == 0:
                    if a * d == ell:
                        for c in range(d):
                            out.append((a, 0, c, d))
                    continue
                if r % b == 0:
                    c = r // b
                    if c < d:
                        out.append((a, b, c, d))
    return out


@dataclass(frozen=True)
class ManinBasis:
    """Presentation of the full space M_2(Gamma_0(N)) of modular symbols.

    ``coords[i]`` expresses the i-th Manin symbol in the basis of free
    generators ``quotient_basis`` (indices into ``p1_elements``).
    ``boundary`` has one row per free generator, one column per cusp class.
    """

    level: int
    p1: P1List
    quotient_basis: tuple
    coords: tuple
    boundary: tuple
    ncusps: int
    relation_matrix: tuple

    @property
    def p1_elements(self):
        return self.p1.elements

    @property
    def dimension(self) -> int:
        return len(self.quotient_basis)

    def coord_of(self, c: int, d: int):
        i = self.p1.index(c, d)
        if i < 0:
            return None
        return self.coords[i]

    def cuspidal_basis(self):
        return linalg.left_kernel([list(r) for r in self.boundary], self.ncusps)

    @property
    def cuspidal_dimension(self) -> int:
        return len(self.cuspidal_basis())

    def star_matrix(self):
        rows = []
        for g in self.quotient_basis:
            c, d = self.p1[g]
            rows.append(list(self.coord_of(-c, d)))
        return rows

    def hecke_matrix(self, ell: int):
        """Matrix of T_ell on the full space; row i is the image of generator i."""
        if self.level % ell == 0:
            raise ValueError(f"{ell} divides the level {self.level}")
        hs = heilbronn_merel(ell)
        n = self.dimension
        rows = []
        for g in self.quotient_basis:
            u, v = self.p1[g]
            acc = [Fraction(0)] * n
            for a, b, c, d in hs:
                vec = self.coord_of(u * a + v * c, u * b + v * d)
                if vec is None:
                    continue
                for k, x in enumerate(vec):
                    if x:
                        acc[k] += x
            rows.append(acc)
        return rows

    def cuspidal_hecke(self, ell: int):
        """T_ell on the cuspidal subspace, in the RREF basis of cuspidal_basis()."""
        K = self.cuspidal_basis()
        T = self.hecke_matrix(ell)
        pivots = [next(j for j, x in enumerate(r) if x) for r in K]
        KT = linalg.matmul(K, T)
        return [[row[j] for j in pivots] for row in KT]

    def boundary_hecke(self, ell: int):
        """T_ell on the quotient by the cuspidal subspace (the Eisenstein part)."""
        K = self.cuspidal_basis()
        pivots = [next(j for j, x in enumerate(r) if x) for r in K]
        free = [j for j in range(self.dimension) if j not in pivots]
        T = self.hecke_matrix(ell)
        out = []
        for j in free:
            v = list(T[j])
            for r, pc in zip(K, pivots):
                if v[pc]:
                    c = v[pc]
                    v = [a - c * b for a, b in zip(v, r)]
            out.append([v[k] for k in free])
        return out


def build_space(N: int) -> ManinBasis:
    if N < 1:
        raise ValueError("level must be positive")
    P = P1List(N)
    n = len(P)
    # two-term relations x + x sigma = 0 with sigma: (c:d) -> (d:-c)
    rep = [None] * n
    sign = [0] * n
    relations = []
    for i, (c, d) in enumerate(P):
        j = P.index(d, -c)
        relations.append({i: 1} if i == j else {i: 1, j: 1})
        if rep[i] is not None:
            continue
        if i == j:
            rep[i], sign[i] = i, 0
        else:
            rep[i], sign[i] = i, 1
            rep[j], sign[j] = i, -1
    reps = sorted({rep[i] for i in range(n) if sign[i]})
    solver = linalg.SparseSolver()
    # three-term relations x + x tau + x tau^2 = 0, tau: (c:d) -> (d:-c-d)
    seen = set()
    for i, (c, d) in enumerate(P):
        j = P.index(d, -c - d)
        k = P.index(-c - d, c)
        key = tuple(sorted((i, j, k)))
        if key in seen:
            continue
        seen.add(key)
        relations.append({t: key.count(t) for t in set(key)})
        row = {}
        for t in (i, j, k):
            if sign[t]:
                row[rep[t]] = row.get(rep[t], 0) + sign[t]
        solver.add(row)
    free, expr = solver.solution(reps)
    pos = {v: a for a, v in enumerate(free)}
    dim = len(free)
    coords = []
    for i in range(n):
        vec = [Fraction(0)] * dim
        if sign[i]:
            for v, x in expr[rep[i]].items():
                vec[pos[v]] += sign[i] * x
        coords.append(tuple(vec))
    cusps = CuspList(N)
    bvecs = []
    for g in free:
        c, d = P[g]
        a, b, cc, dd = lift_to_sl2(c, d, N)
        bvecs.append((cusps.index(a, cc), cusps.index(b, dd)))
    nc = len(cusps.reps)
    boundary = []
    for i1, i2 in bvecs:
        row = [Fraction(0)] * nc
        row[i1] += 1
        row[i2] -= 1
        boundary.append(tuple(row))
    return ManinBasis(N, P, tuple(free), tuple(coords), tuple(boundary), nc,
                      tuple(tuple(sorted(r.items())) for r in relations))




def genus_x0(N: int) -> int:
    """Genus of X_0(N) from the classical index/elliptic-point/cusp formula."""
    from fractions import Fraction as F
    from ..curves import prime_factors

    mu = N
    for q in prime_factors(N):
        mu = mu // q * (q + 1)
    nu2 = 0 if N % 4 == 0 else _prod_legendre(N, -4)
    nu3 = 0 if N % 9 == 0 else _prod_legendre(N, -3)
    c = number_of_cusps(N)
    g = 1 + F(mu, 12) - F(nu2, 4) - F(nu3, 3) - F(c, 2)
    return int(g)


def _prod_legendre(N: int, D: int) -> int:
    from ..curves import prime_factors

    out = 1
    for q in prime_factors(N):
        # 1 + (D/q) as a Kronecker symbol
        if D == -4:
            k = 0 if q == 2 else (1 if q % 4 == 1 else -1)
        else:
            k = 0 if q == 3 else (1 if q % 3 == 1 else -1)
        out *= 1 + k
    return out


def number_of_cusps(N: int) -> int:
    from ..curves import euler_phi

    return sum(euler_phi(gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
