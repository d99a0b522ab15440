from fractions import Fraction

import pytest

from muforge.arith import PadicInt, PadicSeries, mu_lambda
from muforge.congruence import (FAIL, NA, PASS, certify_irreducible, congruence_evidence, depleted_twisted_sum,
                                euler_poly, scan_pairs, sigma_incomplete, unit_match, verify_theorems)
from muforge.curves import corpus_curve, load_corpus, prime_factors
from muforge.dirichlet import DirichletCharacter
from muforge.errors import EllEqualsP, NotOrdinary, PrecisionInsufficient
from muforge.lfun import lp_for_curve
from muforge.msym import sturm_bound

TRIV = DirichletCharacter.trivial()
E11 = corpus_curve("11a1")


def S(values, p, N):
    return PadicSeries.from_ints(values, p, N)


def test_sturm_bound_examples():
    assert (sturm_bound(11), sturm_bound(121), sturm_bound(1)) == (2, 22, 1)


def test_certify_irreducible_examples():
    assert certify_irreducible(E11, 7) == 2
    assert certify_irreducible(E11, 5) is None
    # 14a1 has a rational 3-torsion point
    assert certify_irreducible(corpus_curve("14a1"), 3) is None


def test_certificate_is_sound():
    for E in load_corpus()[::4]:
        for p in (3, 5, 7):
            ell = certify_irreducible(E, p)
            if ell is not None:
                a = E.ap(ell)
                assert all((x * x - a * x + ell) % p for x in range(p))


def test_evidence_examples():
    E = corpus_curve("37a1")
    for i in (1, 2, 3):
        assert congruence_evidence(E, E, 5, i).passed
    ev = congruence_evidence(E11, corpus_curve("19a1"), 7, 1)
    assert not ev.passed and ev.witness == 2


def test_euler_poly_examples():
    P = euler_poly(E11, 2, TRIV, 5, 4, 3)
    assert P.flavor == "good"
    assert P.series[0] == PadicInt.from_rational(Fraction(5, 2), 5, 3)
    assert P.series[0].valuation == 1
    chi = DirichletCharacter.kronecker(-4)
    D = euler_poly(E11, 2, chi, 5, 4, 3)
    assert D.flavor == "dropped" and D.series.residues == (1, 0, 0, 0)
    B = euler_poly(E11, 11, TRIV, 5, 4, 3)
    assert B.flavor == "bad"
    with pytest.raises(EllEqualsP):
        euler_poly(E11, 5, TRIV, 5, 4, 3)


def test_euler_poly_constant_is_the_euler_factor():
    E = corpus_curve("37a1")
    for ell in (2, 3, 7, 37):
        P = euler_poly(E, ell, TRIV, 5, 3, 3)
        expected = 1 - Fraction(E.ap(ell), ell) + (Fraction(1, ell) if E.conductor % ell else 0)
        assert P.series[0] == PadicInt.from_rational(expected, 5, 3)


def test_euler_poly_has_unit_coefficient():
    for E in load_corpus()[::3]:
        for p in (3, 5, 7):
            if E.conductor % p == 0:
                continue
            for ell in (2, 3, 7, 11, 13):
                if ell == p:
                    continue
                assert euler_poly(E, ell, TRIV, p, 2 * p + 2, 3).has_unit_coefficient()


def test_sigma_incomplete():
    L = lp_for_curve(E11, 7, M=6, N=3)
    assert sigma_incomplete(L, []).series == L.series
    with pytest.raises(EllEqualsP):
        sigma_incomplete(L, [7])
    S2 = sigma_incomplete(L, [2, 3])
    assert mu_lambda(S2.series).mu == mu_lambda(L.series).mu
    lam = mu_lambda(L.series).lam + sum(euler_poly(E11, q, TRIV, 7, 6, 3).invariants().lam for q in (2, 3))
    assert mu_lambda(S2.series).lam == lam


def test_unit_match_examples():
    F = S([3, 1, 4], 5, 2)
    assert unit_match(F, F, 2).residue == 1
    G = S([1, 7, 13], 5, 2)
    assert unit_match(S([2 * x for x in G.residues], 5, 2), G, 2).residue == 2
    u = unit_match(S([5], 5, 2), S([10], 5, 2), 2)
    assert u.residue == 3 and u.N == 1
    assert unit_match(S([1], 5, 1), S([5], 5, 1), 1) is None
    assert unit_match(S([0, 0], 5, 2), S([0, 0], 5, 2), 2).residue == 1
    with pytest.raises(PrecisionInsufficient):
        unit_match(S([1], 5, 1), S([1], 5, 1), 2)


def test_unit_match_scale_coherent():
    F, G = S([6, 2, 9], 7, 3), S([3, 1, 8], 7, 3)
    base = unit_match(F, G, 1)
    for c in (2, 3, 6):
        cF = F.scale(PadicInt(c, 7, 3))
        cG = G.scale(PadicInt(c, 7, 3))
        assert unit_match(cF, cG, 1) == base


def test_identical_pair_passes():
    E = corpus_curve("37a1")
    R = verify_theorems(E, E, 5)
    assert R.verdicts == {"sigma_congruence": PASS, "mu_inequality": PASS, "mu_equality": PASS}
    assert all(u.residue == 1 for u in R.units.values())


def test_reducible_pair_is_not_applicable():
    R = verify_theorems(E11, corpus_curve("11a2"), 5)
    assert set(R.verdicts.values()) == {NA}


def test_failed_evidence_is_not_applicable():
    R = verify_theorems(E11, corpus_curve("19a1"), 7)
    assert set(R.verdicts.values()) == {NA}
    assert R.evidence[1].witness == 2


def test_verify_requires_ordinary():
    with pytest.raises(NotOrdinary):
        verify_theorems(corpus_curve("37a1"), corpus_curve("37a1"), 3)


def test_scan_examples():
    assert scan_pairs(11, 7) == []
    pairs = scan_pairs(100, 5)
    assert pairs
    for a, b, _ in pairs:
        assert congruence_evidence(a, b, 5, 1).passed
        assert a.conductor != b.conductor or any(a.ap(q) != b.ap(q) for q in range(2, 200)
                                                 if all(q % d for d in range(2, q)) and a.conductor % q)
    assert scan_pairs(100, 5, workers=3) == pairs


@pytest.mark.parametrize("p", [3, 5])
def test_scanned_pairs_verify(p):
    for a, b, _ in scan_pairs(100, p):
        R = verify_theorems(a, b, p, M=6, N=2)
        assert R.verdicts["sigma_congruence"] == PASS
        assert FAIL not in R.verdicts.values()


def test_depleted_twisted_sums_congruent():
    a, b = corpus_curve("26a1"), corpus_curve("78a1")
    sigma = prime_factors(a.conductor * b.conductor)
    for D in (-3, 12, -4, -7, 8):
        chi = DirichletCharacter.kronecker(D)
        x = PadicInt.from_rational(depleted_twisted_sum(a, chi, 5, sigma), 5, 1)
        y = PadicInt.from_rational(depleted_twisted_sum(b, chi, 5, sigma), 5, 1)
        assert (x.residue == 0) == (y.residue == 0)
