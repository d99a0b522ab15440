import cmath
from fractions import Fraction
from math import gcd

import pytest

from muforge.dirichlet import (CycloElement, DirichletCharacter, RamifiedElement, cyclotomic_poly,
                               embed_root_of_unity, enumerate_characters, gauss_sum, is_fundamental_discriminant,
                               kronecker_symbol, padic_embed)
from muforge.errors import EmbeddingUnsupported


def test_enumerate_examples():
    assert len(enumerate_characters(5, 4)) == 4
    quad = [c for c in enumerate_characters(3, 2) if not c.is_trivial]
    assert len(quad) == 1
    chi = quad[0]
    assert chi(2) == Fraction(1, 2) and chi.parity == -1
    only = enumerate_characters(1)
    assert len(only) == 1 and only[0].is_trivial and only[0].parity == 1


def test_character_counts_and_vanishing():
    for m in range(1, 25):
        units = sum(1 for a in range(m) if gcd(a, m) == 1) if m > 1 else 1
        assert len(enumerate_characters(m)) == units
        for chi in enumerate_characters(m):
            for a in range(chi.modulus):
                assert (chi(a) is None) == (gcd(a, chi.modulus) != 1 and chi.modulus > 1)


def test_characters_are_multiplicative():
    for m in (7, 8, 12, 15, 16):
        for chi in enumerate_characters(m):
            f = chi.modulus
            for a in range(1, 3 * f):
                for b in range(1, 12):
                    x, y, z = chi(a), chi(b), chi(a * b)
                    if x is None or y is None:
                        assert z is None
                    else:
                        assert z == (x + y) % 1


def test_primitive_reduction_and_conductor():
    chi = DirichletCharacter.from_generators(12, [Fraction(1, 2), 0])
    assert chi.conductor == 4
    prim = chi.primitive()
    assert prim.modulus == 4 and prim.is_primitive
    for a in range(1, 12):
        if gcd(a, 12) == 1:
            assert prim(a) == chi(a)


def test_kronecker_characters():
    assert is_fundamental_discriminant(-4) and is_fundamental_discriminant(12)
    assert not is_fundamental_discriminant(-8 * 9) and not is_fundamental_discriminant(9)
    for D in (-3, -4, 5, -7, 8, -8, 12, -11, 13):
        chi = DirichletCharacter.kronecker(D)
        assert chi.conductor == abs(D)
        assert chi.parity == (1 if D > 0 else -1)
        for a in range(1, 3 * abs(D)):
            k = kronecker_symbol(D, a)
            x = chi(a)
            assert (x is None) == (k == 0)
            if k:
                assert (x == 0) == (k == 1)


def test_gauss_sum_examples():
    assert gauss_sum(DirichletCharacter.trivial()) == CycloElement.from_int(1, 1)
    tau = gauss_sum(DirichletCharacter.kronecker(-3))
    assert tau * tau == CycloElement.from_int(tau.k, -3)


def test_gauss_sum_norm_identity():
    for m in range(1, 13):
        for chi in enumerate_characters(m, primitive_only=True):
            f = chi.modulus
            prod = gauss_sum(chi) * gauss_sum(chi.conj())
            assert prod == CycloElement.from_int(prod.k, chi.parity * f)
            t = gauss_sum(chi).complex()
            ref = sum(chi.complex(a) * cmath.exp(2j * cmath.pi * a / f) for a in range(f))
            assert abs(t - ref) < 1e-9


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    z = CycloElement.zeta_power(5, 1)
    assert z ** 5 == CycloElement.from_int(5, 1)
    assert z ** 3 * z ** 2 == CycloElement.from_int(5, 1)


def test_padic_embedding_examples():
    assert embed_root_of_unity(Fraction(1, 2), 7, 3).residue == 7 ** 3 - 1
    i = embed_root_of_unity(Fraction(1, 4), 5, 2).residue
    assert i in (7, 18) and i * i % 25 == 24
    z5 = padic_embed(CycloElement.zeta_power(5, 1), 5, 3)
    assert isinstance(z5, RamifiedElement)
    assert z5.coeffs[:2] == (1, 1)
    with pytest.raises(EmbeddingUnsupported):
        padic_embed(CycloElement.zeta_power(3, 1), 5, 2)


def test_padic_embedding_is_a_ring_map():
    p, N = 13, 3
    for k in (3, 4, 6, 12):
        x = CycloElement.zeta_power(k, 1) + CycloElement.from_int(k, 2)
        y = CycloElement.zeta_power(k, k - 1) * 3
        lhs = padic_embed(x * y, p, N)
        rhs = padic_embed(x, p, N) * padic_embed(y, p, N)
        assert lhs == rhs


def test_quadratic_values_embed_as_signs():
    chi = DirichletCharacter.kronecker(-4)
    for a in range(1, 8, 2):
        v = chi.padic(a, 5, 3).signed()
        assert v == (1 if a % 4 == 1 else -1)


def test_ramified_ring_zeta_has_unit_order():
    p, k, N = 5, 1, 3
    z = RamifiedElement.zeta_power(1, p, k, N)
    assert (z ** 5) == RamifiedElement.from_int(1, p, k, N)
    x = z - 1
    assert x.valuation() == Fraction(1, 4)
    assert (x ** 4).valuation() == 1
