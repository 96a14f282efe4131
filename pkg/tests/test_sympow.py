"""Point counting, Satake parameters, and symmetric-power assembly.

The point-count oracle is a brute-force enumeration of the affine curve
over F_p, written independently of the quadratic-character path the
library uses.  The symmetric-cube local factor is checked against the
elementary symmetric functions of {a^3, pa, pb, b^3} worked out by hand
(a + b = a_p, ab = p), and Sym^1 coefficients against the Hecke
recursion.
"""

import pytest
from mpmath import mp

from periodpoly import (
    CurveSpec,
    InputError,
    ap_count,
    determine_root_number,
    satake_pair,
    sym_dirichlet_coeffs,
    sym_hodge,
    sym_lfunction_data,
    sym_local_factor,
)
from periodpoly.numutil import divisor_counts, primes_upto
from periodpoly.sympow import SatakePair


def brute_ap(curve, p):
    count = 0
    for x in range(p):
        for y in range(p):
            lhs = (y * y + curve.a1 * x * y + curve.a3 * y) % p
            rhs = (x ** 3 + curve.a2 * x * x + curve.a4 * x + curve.a6) % p
            count += lhs == rhs
    return p - count


CURVE_11A1 = CurveSpec(0, -1, 1, -10, -20, 11, "11a1")
CURVE_37A1 = CurveSpec(0, 0, 1, -1, 0, 37, "37a1")


class TestPointCounts:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 17, 19])
    def test_11a1_matches_enumeration(self, p):
        assert ap_count(CURVE_11A1, p) == brute_ap(CURVE_11A1, p)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_37a1_matches_enumeration(self, p):
        assert ap_count(CURVE_37A1, p) == brute_ap(CURVE_37A1, p)

    def test_11a1_known_traces(self):
        # q - 2q^2 - q^3 + 2q^4 + q^5 + 2q^6 - 2q^7 ... (LMFDB 11.a3)
        assert [ap_count(CURVE_11A1, p) for p in (2, 3, 5, 7, 13)] == [
            -2, -1, 1, -2, 4,
        ]

    def test_multiplicative_prime(self):
        # a_p = +1 split / -1 non-split at the conductor prime; 37a1 is
        # non-split (the tangent cone at its node is v^2 = 15 u^2 and 15
        # is a quadratic non-residue mod 37)
        assert ap_count(CURVE_11A1, 11) == 1
        assert ap_count(CURVE_37A1, 37) == -1

    def test_hasse_bound(self):
        for p in primes_upto(200):
            a = ap_count(CURVE_11A1, p)
            assert a * a <= 4 * p


class TestSatake:
    def test_unit_modulus_and_trace(self):
        for p in (3, 5, 13):
            sat = satake_pair(CURVE_11A1, p)
            assert abs(abs(sat.alpha) - 1) < 1e-14
            assert abs(2 * sat.alpha.real - sat.a_p / p ** 0.5) < 1e-14

    def test_rejects_bad_prime(self):
        with pytest.raises(InputError):
            satake_pair(CURVE_11A1, 11)


class TestLocalFactors:
    def test_sym1_is_the_curve_factor(self):
        for p in (2, 3, 5, 7):
            sat = satake_pair(CURVE_11A1, p)
            assert sym_local_factor(1, p, sat, False) == [1, -sat.a_p, p]

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
    def test_sym3_elementary_symmetric(self, p):
        # inverse roots a^3, pa, pb, b^3 with a+b = a_p, ab = p
        sat = satake_pair(CURVE_11A1, p)
        a = sat.a_p
        e1 = a ** 3 - 2 * p * a
        e2 = p * a ** 4 - 3 * p ** 2 * a ** 2 + 2 * p ** 3
        got = sym_local_factor(3, p, sat, False)
        assert got == [1, -e1, e2, -p ** 3 * e1, p ** 6]

    def test_bad_prime_linear(self):
        sat = SatakePair(p=11, alpha=0j, a_p=1)
        assert sym_local_factor(5, 11, sat, True) == [1, -1]
        sat37 = SatakePair(p=37, alpha=0j, a_p=1)
        assert sym_local_factor(3, 37, sat37, True) == [1, -1]

    def test_rejects_even_power(self):
        sat = satake_pair(CURVE_11A1, 3)
        with pytest.raises(InputError):
            sym_local_factor(2, 3, sat, False)


def hecke_an(curve, x):
    """a_n via the standard recursion, as the Sym^1 oracle."""
    a = [0] * (x + 1)
    a[1] = 1
    for p in primes_upto(x):
        ap = ap_count(curve, p)
        good = curve.conductor % p != 0
        powers = [1, ap]
        while p ** len(powers) <= x:
            nxt = ap * powers[-1] - (p if good else 0) * powers[-2]
            powers.append(nxt)
        q = p
        e = 1
        while q <= x:
            a[q] = powers[e]
            q *= p
            e += 1
    for n in range(2, x + 1):
        if a[n]:
            continue
        for p in primes_upto(n):
            if n % p == 0:
                q = p
                while n % (q * p) == 0:
                    q *= p
                if q < n:
                    a[n] = a[q] * a[n // q]
                break
    return a[1:]


class TestDirichletCoefficients:
    def test_sym1_equals_hecke(self):
        assert sym_dirichlet_coeffs(CURVE_11A1, 1, 60) == hecke_an(CURVE_11A1, 60)
        assert sym_dirichlet_coeffs(CURVE_37A1, 1, 40) == hecke_an(CURVE_37A1, 40)

    def test_leading_one(self):
        assert sym_dirichlet_coeffs(CURVE_11A1, 3, 12)[0] == 1
        assert sym_dirichlet_coeffs(CURVE_11A1, 5, 12)[0] == 1

    def test_multiplicative(self):
        lam = sym_dirichlet_coeffs(CURVE_11A1, 3, 60)
        for a, b in ((2, 3), (3, 5), (4, 9), (5, 12), (7, 8)):
            assert lam[a * b - 1] == lam[a - 1] * lam[b - 1]

    @pytest.mark.parametrize("n", [3, 5])
    def test_grc_bound(self, n):
        lam = sym_dirichlet_coeffs(CURVE_11A1, n, 200)
        dcounts = divisor_counts(200, n + 1)
        for k in range(1, 201):
            assert abs(lam[k - 1]) <= dcounts[k] * k ** (n / 2) * (1 + 1e-12)

    def test_prime_power_recursion_sym3(self):
        # at a good prime the local factor reproduces its own expansion
        lam = sym_dirichlet_coeffs(CURVE_11A1, 3, 64)
        d = sym_local_factor(3, 2, satake_pair(CURVE_11A1, 2), False)
        # lam[2^e] satisfies sum_{i} d_i lam_{2^{e-i}} = 0 for e >= 1
        po2 = [lam[2 ** e - 1] for e in range(0, 7)]
        for e in range(1, 7):
            acc = sum(d[i] * po2[e - i] for i in range(min(e, 4) + 1))
            assert acc == 0


class TestHodgeAndData:
    def test_weight_two_all_ones(self):
        assert sym_hodge(3) == (1, 1)
        assert sym_hodge(5) == (1, 1, 1)
        assert sym_hodge(7) == (1, 1, 1, 1)

    def test_higher_weight_spacing(self):
        # weight-3 input: only even slots survive
        assert sym_hodge(3, k=3) == (1, 0, 1)

    def test_dataset_shape(self):
        data = sym_lfunction_data(CURVE_11A1, 3, 300, 1)
        assert data.weight == 3
        assert data.degree == 4
        assert data.conductor == 11 ** 3
        assert data.hodge == (1, 1)
        assert data.root_number == 1
        assert data.label == "11a1-sym3"
        assert len(data.coefficients) == 300
        assert data.coefficients[0] == 1

    def test_rejects_even_or_small_power(self):
        with pytest.raises(InputError):
            sym_lfunction_data(CURVE_11A1, 2, 100, 1)
        with pytest.raises(InputError):
            sym_lfunction_data(CURVE_11A1, 1, 100, 1)


class TestRootNumberDetermination:
    def test_sym3_11a1_positive(self):
        eps, margin = determine_root_number(CURVE_11A1, 3, x=2000, bits=80)
        assert eps == 1
        assert margin > 100
