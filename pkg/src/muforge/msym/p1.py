"""The projective line over Z/N, indexing Manin symbols."""
from __future__ import annotations

from math import gcd


def p1_size(N: int) -> int:
    from ..curves import prime_factors

    n = N
    for q in prime_factors(N):
        n = n // q * (q + 1)
    return n


class P1List:
    """Classes (c:d) of pairs with gcd(c, d, N) = 1 up to unit scaling.

    Each class is represented by the lexicographically smallest pair among
    its unit multiples; ``index`` accepts any pair of integers.
    """

    def __init__(self, N: int):
        self.N = N
        units = [u for u in range(N) if gcd(u, N) == 1] if N > 1 else [0]
        reps = {}
        self._lookup = {}
        for c in range(N):
            for d in range(N):
                if gcd(gcd(c, d), N) != 1:
                    continue
                if (c, d) in self._lookup:
                    continue
                orbit = {((u * c) % N, (u * d) % N) for u in units}
                rep = min(orbit)
                reps[rep] = None
                for pair in orbit:
                    self._lookup[pair] = rep
        self.elements = sorted(reps)
        self._pos = {e: i for i, e in enumerate(self.elements)}
        self._index = {pair: self._pos[rep] for pair, rep in self._lookup.items()}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, c: int, d: int) -> int:
        """Position of (c:d), or -1 when gcd(c, d, N) > 1."""
        N = self.N
        return self._index.get((c % N, d % N), -1)

    def normalize(self, c: int, d: int):
        i = self.index(c, d)
        return None if i < 0 else self.elements[i]
