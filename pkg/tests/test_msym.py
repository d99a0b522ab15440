import random
from dataclasses import replace
from fractions import Fraction

import pytest

from muforge.arith import vp
from muforge.curves import corpus_curve, load_corpus
from muforge.errors import EigenlineNotFound
from muforge.msym import (P1List, build_space, curve_symbol, eigen_functional, eval_symbol, genus_x0, manin_path,
                          normalize, number_of_cusps, p1_size, space_for, sturm_bound)
from muforge.msym import linalg
from muforge.msym.cache import dumps, load_or_build, loads

from oracles import cusp_count, genus, random_rationals


def test_p1_sizes():
    assert p1_size(11) == len(P1List(11)) == 12
    for N in range(1, 40):
        P = P1List(N)
        assert len(P) == p1_size(N)
        assert len(set(P.elements)) == len(P)
        for c, d in P:
            assert P.index(c, d) == P.elements.index((c, d))


def test_p1_normalizes_unit_multiples():
    P = P1List(12)
    for c, d in P:
        for u in (5, 7, 11):
            assert P.index(u * c, u * d) == P.index(c, d)
    assert P.index(2, 4) == -1


@pytest.mark.parametrize("N,full,cusp", [(11, 3, 2), (15, 5, 2)])
def test_space_dimension_examples(N, full, cusp):
    B = build_space(N)
    assert (B.dimension, B.cuspidal_dimension) == (full, cusp)


def test_dimensions_against_genus_oracle():
    for N in range(1, 31):
        g, c = genus(N), cusp_count(N)
        assert genus_x0(N) == g and number_of_cusps(N) == c
        B = space_for(N)
        assert B.cuspidal_dimension == 2 * g
        assert B.dimension == 2 * g + c - 1


def test_hecke_at_level_11():
    B = space_for(11)
    assert linalg.trace(B.cuspidal_hecke(2)) == -4
    assert B.boundary_hecke(2) == [[3]]


def test_hecke_commutes():
    for N in range(11, 31):
        B = space_for(N)
        if B.cuspidal_dimension == 0:
            continue
        qs = [q for q in (2, 3, 5) if N % q][:2]
        if len(qs) < 2:
            continue
        A, C = B.hecke_matrix(qs[0]), B.hecke_matrix(qs[1])
        assert linalg.matmul(A, C) == linalg.matmul(C, A)


def test_hecke_refuses_bad_prime():
    with pytest.raises(ValueError):
        space_for(11).hecke_matrix(11)


def test_eigen_functional_is_a_line_and_sees_t13():
    E = corpus_curve("11a1")
    B = space_for(11)
    sym = eigen_functional(B, E, 1)
    phi = list(sym.functional)
    T13 = B.hecke_matrix(13)
    assert linalg.matvec(T13, phi) == [E.ap(13) * x for x in phi]
    S = B.star_matrix()
    assert linalg.matvec(S, phi) == phi


def test_perturbed_eigenvalues_have_no_eigenline():
    E = corpus_curve("11a1")
    fake = replace(E, ap_cache={2: 1})
    with pytest.raises(EigenlineNotFound):
        eigen_functional(space_for(11), fake, 1)


def test_wrong_level_has_no_eigenline():
    with pytest.raises(EigenlineNotFound):
        eigen_functional(space_for(14), corpus_curve("11a1"), 1)


def test_normalization_examples():
    E = corpus_curve("11a1")
    sym = curve_symbol(E, 1, 7)
    assert sym(Fraction(0)) == Fraction(1, 5)
    raw = eigen_functional(space_for(11), E, 1)
    again = normalize(raw.scaled(3), 7)
    assert again.values == sym.values
    assert normalize(raw.scaled(Fraction(-2, 7)), 7).values == sym.values
    vals = [x for x in sym.values if x]
    assert min(vp(x.numerator, 7) - vp(x.denominator, 7) for x in vals) == 0


def test_minus_symbol_vanishes_at_zero():
    for label in ("11a1", "37a1", "43a1", "26b1"):
        E = corpus_curve(label)
        assert curve_symbol(E, -1, 7)(Fraction(0)) == 0


def test_manin_path_telescopes():
    r = Fraction(17, 29)
    path = manin_path(r)
    assert path[-1][0] == 29
    assert manin_path(Fraction(3)) == [(1, 0)]


@pytest.mark.parametrize("label", ["11a1", "37a1", "14a1", "26b1", "57b1"])
def test_symbol_identities(label):
    E = corpus_curve(label)
    rng = random.Random(label)
    for sign in (1, -1):
        sym = curve_symbol(E, sign, 7 if E.conductor % 7 else 5)
        for r in random_rationals(rng, 15):
            assert sym(r + 1) == sym(r)
            assert sym(-r) == sign * sym(r)
            for ell in (2, 3, 5):
                if E.conductor % ell == 0:
                    continue
                rhs = sym(ell * r) + sum(sym((r + a) / ell) for a in range(ell))
                assert E.ap(ell) * sym(r) == rhs


def test_sturm_bound_examples():
    assert sturm_bound(11) == 2
    assert sturm_bound(121) == 22
    assert sturm_bound(1) == 1


def test_cache_roundtrip(tmp_path):
    E = corpus_curve("37a1")
    sym = curve_symbol(E, -1, 5)
    text = dumps(sym)
    assert text.startswith("muforge-eigensymbol 1\n")
    back = loads(text, E)
    assert back.values == sym.values and back.sign == -1 and back.p == 5
    calls = []

    def builder(*args):
        calls.append(args)
        return sym

    a = load_or_build(E, -1, 5, tmp_path, builder)
    b = load_or_build(E, -1, 5, tmp_path, builder)
    assert len(calls) == 1 and a.values == b.values
    with pytest.raises(ValueError):
        loads(text.replace("functional", "bogus"), None)


def test_every_corpus_curve_has_both_eigenlines():
    for E in load_corpus()[::5]:
        for sign in (1, -1):
            sym = eigen_functional(space_for(E.conductor), E, sign)
            assert any(sym.functional)
