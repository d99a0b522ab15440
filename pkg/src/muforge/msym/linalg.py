"""Exact linear algebra over Q with Fraction entries.

Sparse rows are dicts column -> Fraction; dense matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseSolver:
    """Incremental fully-reduced row echelon form of a homogeneous system."""

    def __init__(self):
        self.pivots = {}  # pivot column -> row with coefficient 1 there

    def _reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        changed = True
        while changed:
            changed = False
            for k in [k for k in row if k in self.pivots]:
                c = row.pop(k, 0)
                if not c:
                    continue
                for kk, vv in self.pivots[k].items():
                    if kk == k:
                        continue
                    nv = row.get(kk, 0) - c * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
                changed = True
        return row

    def add(self, row: dict) -> bool:
        row = self._reduce(row)
        if not row:
            return False
        piv = min(row)
        c = row[piv]
        row = {k: Fraction(v) / c for k, v in row.items()}
        for other in self.pivots.values():
            f = other.get(piv)
            if f:
                for kk, vv in row.items():
                    nv = other.get(kk, 0) - f * vv
                    if nv:
                        other[kk] = nv
                    else:
                        other.pop(kk, None)
        self.pivots[piv] = row
        return True

    def solution(self, variables):
        """Express each variable through the free ones.

        Returns (free, expr) where expr[v] is a dict free-variable -> coefficient.
        """
        free = [v for v in variables if v not in self.pivots]
        expr = {}
        for v in variables:
            if v in self.pivots:
                expr[v] = {k: -c for k, c in self.pivots[v].items() if k != v}
            else:
                expr[v] = {v: Fraction(1)}
        return free, expr


def rref(rows, ncols: int):
    """Reduced row echelon form of a dense matrix; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(rows, ncols: int):
    """Basis of {x : A x = 0} as a list of column vectors."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        basis.append(v)
    return basis


def left_kernel(rows, ncols: int):
    """Basis of {v : v A = 0} in reduced echelon form."""
    if not rows:
        return []
    t = transpose(rows, ncols)
    ker = kernel(t, len(rows))
    red, _ = rref(ker, len(rows))
    return red


def transpose(rows, ncols: int):
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def matmul(a, b):
    if not a:
        return []
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt]
            for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def vecmat(v, a):
    ncols = len(a[0]) if a else 0
    out = [Fraction(0)] * ncols
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def sub_scalar(a, c):
    return [[x - (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a)]


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def lcm_denominator(values) -> int:
    d = 1
    for x in values:
        q = Fraction(x).denominator
        d = d * q // gcd(d, q)
    return d


def integer_echelon(rows):
    """Row echelon form over Z by unimodular row operations (Euclid on columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        live = [i for i in range(r, len(m)) if m[i][col]]
        if not live:
            continue
        while True:
            live = [i for i in range(r, len(m)) if m[i][col]]
            if len(live) == 1:
                break
            k = min(live, key=lambda i: abs(m[i][col]))
            for i in live:
                if i != k:
                    q = m[i][col] // m[k][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[k])]
        k = live[0]
        m[r], m[k] = m[k], m[r]
        if m[r][col] < 0:
            m[r] = [-a for a in m[r]]
        r += 1
        if r == len(m):
            break
    return m[:r] if r else []
