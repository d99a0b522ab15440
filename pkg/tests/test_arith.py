from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muforge.arith import (INDETERMINATE, PadicInt, PadicSeries, binom_power, frobenius_exponent, mu_lambda,
                           one_unit_part, padic_log, teichmuller, unit_root, vp, vp_factorial)
from muforge.errors import NotAUnit, OrdinarityViolation

odd_primes = st.sampled_from([3, 5, 7, 11, 13])


@pytest.mark.parametrize("a_p,p,N,expected", [(2, 3, 1, 2), (1, 5, 3, 96), (-2, 5, 2, 13)])
def test_unit_root_examples(a_p, p, N, expected):
    assert unit_root(a_p, p, N).residue == expected


def test_unit_root_against_exhaustive_search():
    for a_p, p, N in [(1, 5, 3), (-2, 5, 2), (-1, 3, 4), (-2, 7, 3), (4, 13, 2)]:
        q = p ** N
        roots = [x for x in range(q) if (x * x - a_p * x + p) % q == 0 and x % p]
        assert roots == [unit_root(a_p, p, N).residue]


def test_unit_root_rejects_supersingular():
    with pytest.raises(OrdinarityViolation):
        unit_root(0, 3, 2)
    with pytest.raises(OrdinarityViolation):
        unit_root(5, 5, 2)


@pytest.mark.parametrize("a,p,N,expected", [(1, 7, 3, 1), (2, 5, 2, 7), (4, 5, 2, 24)])
def test_teichmuller_examples(a, p, N, expected):
    assert teichmuller(a, p, N).residue == expected


@pytest.mark.parametrize("ell,p,N,expected", [(11, 5, 1, 3), (2, 5, 1, 3), (7, 3, 1, 1)])
def test_frobenius_exponent_examples(ell, p, N, expected):
    assert frobenius_exponent(ell, p, N).residue == expected


@given(st.sampled_from([2, 7, 11, 13, 17, 19, 23]), st.sampled_from([3, 5]), st.integers(1, 4))
def test_frobenius_exponent_defining_identity(ell, p, N):
    if ell == p:
        return
    f = frobenius_exponent(ell, p, N).residue
    mod = p ** (N + 1)
    lhs = pow(pow(1 + p, f, mod), -1, mod)
    assert lhs % p ** N == one_unit_part(ell, p, N + 1).residue % p ** N


def test_binom_power_examples():
    one = binom_power(PadicInt(0, 5, 2), 3)
    assert one.residues == (1, 0, 0)
    lin = binom_power(PadicInt(1, 5, 2), 3)
    assert lin.residues == (1, 1, 0)
    geo = binom_power(PadicInt(-1, 5, 2), 3)
    assert geo.signed_coeffs() == [1, -1, 1]


def test_binom_power_certificates_lose_factorial_valuation():
    F = binom_power(PadicInt(7, 5, 3), 7)
    assert F.cert == (3, 3, 3, 3, 3, 2, 2)


@given(st.integers(0, 10 ** 6), odd_primes)
def test_binom_power_matches_integer_binomials(f, p):
    N = 4
    F = binom_power(PadicInt(f, p, N), 4)
    from math import comb

    for j in range(4):
        assert F.residues[j] == comb(f % p ** N, j) % p ** F.cert[j]


def test_mu_lambda_examples():
    assert mu_lambda(PadicSeries.from_ints([5, 25, 1], 5, 3)).as_dict()["mu"] == 0
    assert mu_lambda(PadicSeries.from_ints([5, 25, 1], 5, 3)).lam == 2
    m = mu_lambda(PadicSeries.from_ints([5, 5], 5, 2))
    assert (m.mu, m.lam) == (1, 0)
    z = mu_lambda(PadicSeries.from_ints([0, 0, 0], 5, 3))
    assert z.mu == INDETERMINATE and not z.determinate
    assert z.mu_lower == 3


def test_mu_lambda_respects_low_certificates():
    # an uncertified coefficient before the first unit hides lambda but not mu = 0
    m = mu_lambda(PadicSeries((0, 1), 5, 3, (0, 3)))
    assert (m.mu, m.lam) == (0, INDETERMINATE)
    # a coefficient certified only to p^1 hides mu = 2
    m = mu_lambda(PadicSeries((0, 25), 5, 3, (1, 3)))
    assert m.mu == INDETERMINATE and m.mu_lower == 1


def test_valuations():
    with pytest.raises(ValueError):
        vp(0, 5)
    assert vp(250, 5) == 3
    assert vp_factorial(25, 5) == 6
    assert PadicInt(0, 5, 3).valuation == 3
    assert PadicInt(50, 5, 3).valuation == 2


def test_padicint_rational_and_inverse():
    x = PadicInt.from_rational(Fraction(1, 2), 5, 3)
    assert (x * 2).residue == 1
    with pytest.raises(NotAUnit):
        PadicInt.from_rational(Fraction(1, 5), 5, 3)
    with pytest.raises(NotAUnit):
        PadicInt(10, 5, 3).inverse()
    assert PadicInt(124, 5, 3).signed() == -1


def test_padicint_precision_is_min():
    assert (PadicInt(1, 5, 3) + PadicInt(1, 5, 2)).N == 2


@settings(max_examples=60)
@given(st.integers(), st.integers(), odd_primes, st.integers(1, 6))
def test_padicint_ring_laws(a, b, p, N):
    x, y = PadicInt(a, p, N), PadicInt(b, p, N)
    assert (x + y).residue == (a + b) % p ** N
    assert (x * y).residue == (a * b) % p ** N
    assert (x - x).residue == 0
    if a % p:
        assert (x * x.inverse()).residue == 1


@settings(max_examples=40)
@given(st.lists(st.integers(0, 10 ** 4), min_size=3, max_size=3),
       st.lists(st.integers(0, 10 ** 4), min_size=3, max_size=3), odd_primes)
def test_series_product_matches_truncated_polynomial_product(f, g, p):
    N = 3
    F, G = PadicSeries.from_ints(f, p, N), PadicSeries.from_ints(g, p, N)
    H = F * G
    for k in range(3):
        assert H.residues[k] == sum(f[i] * g[k - i] for i in range(k + 1)) % p ** H.cert[k]
        assert H.cert[k] <= N


def test_series_product_certificate_is_sharp():
    # 5 * (1 mod 5^1): the product is known to 5^2
    F = PadicSeries((5,), 5, 3, (3,))
    G = PadicSeries((1,), 5, 3, (1,))
    assert (F * G).cert == (2,)


@settings(max_examples=40)
@given(st.integers(1, 10 ** 6).filter(lambda n: n % 5), st.integers(1, 4))
def test_log_is_additive_on_one_units(k, N):
    p = 5
    a = 1 + p * k
    b = 1 + p * (k + 3)
    mod = p ** N
    lhs = padic_log(a * b % p ** (N + 2), p, N).residue
    rhs = (padic_log(a, p, N).residue + padic_log(b, p, N).residue) % mod
    assert lhs == rhs


def test_teichmuller_is_root_of_unity():
    for p in (3, 5, 7, 11):
        for a in range(1, p):
            w = teichmuller(a, p, 4)
            assert w.residue % p == a
            assert pow(w.residue, p - 1, p ** 4) == 1
