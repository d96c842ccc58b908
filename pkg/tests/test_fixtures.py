import pytest

from carlitz_forms.carlitz import PrimeModulus
from carlitz_forms.errors import DomainError
from carlitz_forms.fields import RationalFunction, get_field
from carlitz_forms.fixtures import (
    bracket,
    carlitz_factorials,
    eisenstein_gk,
    false_eisenstein,
    fricke_eigen_fixture,
    genus_dimension,
    goss_table,
    monic_up_to,
    reciprocal_exp_coeffs,
    u_sub_a,
    weight2_type1_fixture,
)
from carlitz_forms.operators import up_direct, vp_substitution
from carlitz_forms.series import TruncatedSeries, congruent_mod


@pytest.mark.parametrize("q", [2, 3, 4])
def test_carlitz_factorial_product_formula(q):
    fs = get_field(2, 2) if q == 4 else get_field(q)
    T = fs.T
    D = carlitz_factorials(3, fs)
    for i in range(1, 4):
        prod = fs.one
        for j in range(i):
            prod *= T ** (q**i) - T ** (q**j)
        assert D[i] == prod


def test_reciprocal_exponential():
    fs = get_field(3)
    b = reciprocal_exp_coeffs(20, fs)
    D = carlitz_factorials(3, fs)
    # e_C(w)/w = sum_i w^(q^i - 1) / D_i; the product with w/e_C(w) is 1
    e = [RationalFunction(fs.zero) for _ in range(21)]
    for i in range(3):
        if 3**i - 1 <= 20:
            e[3**i - 1] = RationalFunction(fs.one, D[i])
    for n in range(21):
        acc = RationalFunction(fs.zero)
        for s in range(n + 1):
            acc = acc + b[s] * e[n - s]
        assert acc == RationalFunction(fs.one if n == 0 else fs.zero)


def test_goss_polynomials():
    fs = get_field(3)
    tab = goss_table(9, fs)
    assert tab.to_str(4) == "X^4 + (1/(T^3 + 2*T))*X^2"
    for n in (1, 2, 3, 9):
        assert tab.poly(n) == {n: RationalFunction(fs.one)}
    # G_(pn) = G_n^p
    G2, G6 = tab.poly(2), tab.poly(6)
    assert G6 == {3 * j: c**3 for j, c in G2.items()}
    G8 = tab.poly(8)
    assert G8[8] == RationalFunction(fs.one)
    assert G8[6] == RationalFunction(fs.const(2), bracket(1, fs))


def test_u_a_basic():
    fs = get_field(3)
    u = u_sub_a(fs.one, 8, fs)
    assert u == TruncatedSeries.monomial(fs, fs.one, 1, 8)
    assert u_sub_a(fs.const(2), 8, fs) == TruncatedSeries.monomial(fs, fs.const(2), 1, 8)
    pi = PrimeModulus.parse("T^2 + 1", fs)
    assert u_sub_a(pi.poly, 40, fs) == vp_substitution(pi, 40)
    with pytest.raises(DomainError):
        u_sub_a(fs.zero, 4, fs)


@pytest.mark.parametrize("q", [2, 3])
def test_u_a_composition(q):
    # rho_(ab) = rho_a o rho_b gives u_(ab) = u_a(u_b)
    fs = get_field(q)
    a, b = fs.parse_poly("T + 1"), fs.parse_poly("T^2 + T")
    P = 30
    assert u_sub_a(a * b, P, fs).agrees_with(u_sub_a(a, P, fs).substitute(u_sub_a(b, P, fs)))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_g_against_lattice_sum(q):
    # g = 1 - [1] sum_(a monic) u_a^(q-1)
    fs = get_field(q)
    P = 3 * q * q
    g = eisenstein_gk(1, P, fs).series
    acc = TruncatedSeries.one(fs, P)
    for a in monic_up_to(P, fs):
        acc = acc - (u_sub_a(a, P, fs) ** (q - 1)).scale(bracket(1, fs))
    assert g == acc
    assert g.coeff(0) == fs.one
    assert g.coeff(q - 1) == -bracket(1, fs)


@pytest.mark.parametrize("q,d", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_gd_congruent_to_one(q, d):
    fs = get_field(q)
    for f in fs.monic_irreducibles(d):
        pi = PrimeModulus(f, fs)
        g = eisenstein_gk(d, 2 * pi.N, fs).series
        assert g.is_integral() and g.coeff(0) == fs.one
        assert congruent_mod(g, TruncatedSeries.one(fs, g.prec), pi, 1)


def test_gk_cache_truncates():
    fs = get_field(3)
    big = eisenstein_gk(1, 30, fs).series
    small = eisenstein_gk(1, 12, fs).series
    assert small == big.truncate(12)


def test_false_eisenstein():
    fs = get_field(3)
    E = false_eisenstein(12, fs)
    assert E.to_str() == "u + u^5 + u^9 + (2*T^3 + T)*u^11 + O(u^12)"
    direct = TruncatedSeries.zero(fs, 12)
    for a in monic_up_to(12, fs):
        direct = direct + u_sub_a(a, 12, fs).scale(a)
    assert E == direct


@pytest.mark.parametrize("text", ["T", "T + 2", "T^2 + 1"])
def test_weight2_fixture_is_u_eigen(text):
    fs = get_field(3)
    pi = PrimeModulus.parse(text, fs)
    f = weight2_type1_fixture(pi, 4 * pi.N)
    body = f.at_inf.body
    assert up_direct(body, pi).agrees_with(body)
    assert f.at_zero == -f.at_inf
    assert (f.k, f.l) == (2, 1)
    with pytest.raises(DomainError):
        weight2_type1_fixture(PrimeModulus.parse("T", get_field(2)), 8)


def test_fricke_eigen_fixture():
    fs = get_field(3)
    pi = PrimeModulus.parse("T", fs)
    F = eisenstein_gk(1, 20, fs) ** 2
    e = fricke_eigen_fixture(F, pi)
    assert e.eigen == 1 and e.at_inf == e.at_zero
    with pytest.raises(DomainError):
        fricke_eigen_fixture(eisenstein_gk(1, 20, get_field(2)), PrimeModulus.parse("T", get_field(2)))


def test_genus():
    # genus of X_0(p): (q^d - q)/(q^2 - 1) for d odd, (q^d - q^2)/(q^2 - 1) for d even
    assert genus_dimension(3, 1) == {"genus": 0, "dim_weight2_type1": 1}
    assert genus_dimension(3, 2)["genus"] == 0
    assert genus_dimension(3, 3)["genus"] == 3
    assert genus_dimension(2, 4)["genus"] == 4


@pytest.mark.parametrize("q", [2, 3])
def test_goss_table_invariants(q):
    fs = get_field(q)
    tab = goss_table(40, fs)
    for n in range(1, 41):
        G = tab.poly(n)
        # monic of degree n, no constant term, exponents congruent to n mod q-1
        assert max(G) == n and G[n] == RationalFunction(fs.one)
        assert min(G) >= 1
        assert all((j - n) % (q - 1) == 0 for j in G)
        if n <= q:
            assert G == {n: RationalFunction(fs.one)}
        # power rule G_(pn) = G_n^p (Frobenius on coefficients)
        if q * n <= 40:
            assert tab.poly(q * n) == {q * j: c**q for j, c in G.items()}
    i = 0
    while q**i <= 40:
        assert tab.poly(q**i) == {q**i: RationalFunction(fs.one)}
        i += 1


def test_g1_leading_terms_over_f4():
    fs = get_field(2, 2)
    g = eisenstein_gk(1, 12, fs).series
    assert g.coeff(0) == fs.one
    assert g.coeff(3) == -bracket(1, fs)


@pytest.mark.parametrize("q", [2, 3])
def test_fixtures_extend_with_precision(q):
    fs = get_field(q)
    pi = PrimeModulus.parse("T + 1", fs)
    for lo, hi in ((7, 19), (19, 40)):
        assert eisenstein_gk(2, hi, fs).series.truncate(lo) == eisenstein_gk(2, lo, fs).series
        assert false_eisenstein(hi, fs).truncate(lo) == false_eisenstein(lo, fs)
        a = fs.parse_poly("T^2 + 1")
        assert u_sub_a(a, hi, fs).truncate(lo) == u_sub_a(a, lo, fs)
        assert vp_substitution(pi, hi).truncate(lo) == vp_substitution(pi, lo)
