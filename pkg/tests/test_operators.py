import random
from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.carlitz import PrimeModulus
from carlitz_forms.checks import random_series
from carlitz_forms.errors import DomainError, PrecisionError
from carlitz_forms.fields import get_field
from carlitz_forms.operators import (
    Gamma0PairForm,
    annihilation_defect,
    build_g0,
    build_gr,
    fricke_pair,
    full_level_pair,
    lift_by_vp,
    multinomial_mod_p,
    norm_input_prec,
    norm_product,
    norm_tilde,
    pair_frobenius,
    pair_mul,
    pair_pow,
    root_symmetrics,
    trace_pair,
    up_direct,
    up_oracle_newton,
    vp_op,
    vp_op_generic,
)
from carlitz_forms.series import ScaledSeries, TruncatedSeries, congruent_mod

CASES = [(3, "T"), (3, "T + 1"), (3, "T^2 + 1"), (2, "T"), (2, "T + 1"), (2, "T^2 + T + 1")]


def prime(q, text):
    fs = get_field(q)
    return PrimeModulus.parse(text, fs)


def test_multinomial_mod_p_exact():
    for p in (2, 3, 5):
        for parts in [(1, 2), (3, 3), (2, 2, 1), (4, 0, 5), (6, 3), (1, 1, 1, 1)]:
            exact = factorial(sum(parts))
            for x in parts:
                exact //= factorial(x)
            assert multinomial_mod_p(parts, p) == exact % p


def test_up_worked_example():
    pi = prime(3, "T")
    fs = pi.fs
    u2 = TruncatedSeries.monomial(fs, fs.one, 2, 12)
    out = up_direct(u2, pi)
    assert out.coeff(2) == fs.T
    assert all(out.coeff(i).is_zero() for i in range(out.prec) if i != 2)
    assert out.agrees_with(up_oracle_newton(u2, pi))


def test_vp_of_u():
    pi = prime(3, "T")
    fs = pi.fs
    v = vp_op(TruncatedSeries.monomial(fs, fs.one, 1, 4), pi)
    assert v.coeff(3) == fs.one and v.coeff(5) == -fs.T and v.coeff(7) == fs.T**2
    assert v.prec == 12


@pytest.mark.parametrize("q,text", CASES)
def test_up_oracles_agree(q, text):
    pi = prime(q, text)
    rng = random.Random(7)
    for _ in range(8):
        f = random_series(rng, pi.fs, 25)
        a, b = up_direct(f, pi), up_oracle_newton(f, pi)
        P = min(a.prec, b.prec)
        assert P >= 1
        assert a.truncate(P) == b.truncate(P)
        assert a.v_p(pi) >= f.v_p(pi)
        assert vp_op(f, pi).v_p(pi) >= f.v_p(pi)
        assert vp_op(f, pi).agrees_with(vp_op_generic(f, pi))
        assert annihilation_defect(f, pi).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CASES))
def test_up_is_linear_and_agrees(seed, case):
    pi = prime(*case)
    rng = random.Random(seed)
    f, g = random_series(rng, pi.fs, 20), random_series(rng, pi.fs, 20)
    assert up_direct(f + g, pi) == up_direct(f, pi) + up_direct(g, pi)
    assert up_direct(f, pi).agrees_with(up_oracle_newton(f, pi))


@pytest.mark.parametrize("q,text", CASES)
def test_root_symmetrics(q, text):
    pi = prime(q, text)
    rs = root_symmetrics(pi, 6)
    for r in range(1, pi.N):
        assert rs.e(r).reduce_mod(pi).is_zero()
    eN = rs.e(pi.N)
    assert eN.coeff(1) in (pi.fs.one, -pi.fs.one)
    assert all(eN.coeff(i).is_zero() for i in range(eN.prec) if i != 1)
    assert rs.e(pi.N + 1).is_zero()


# -- norm against a resultant computed by sympy ----------------------------------

y_, T_, u_ = sympy.symbols("y T u")


def sym_poly(f, fs):
    return sum(int(d[0]) * T_**i for i, d in enumerate(fs.poly_digits(f)))


def resultant_norm(f, pi, prec_out):
    """prod over roots of Q(y) = y^N - u f_pi(y) of f(y), as Res_y(Q, f) in F_p[T, u]."""
    fs = pi.fs
    finv = sum(sym_poly(c, fs) * y_**k for k, c in pi.inv_cyclotomic.terms.items())
    Q = y_**pi.N - u_ * finv
    F = sum(sym_poly(f.coeff(i), fs) * y_**i for i in range(f.prec))
    res = sympy.Poly(sympy.resultant(Q, F, y_), u_, T_, modulus=fs.p)
    out = [fs.zero] * prec_out
    for (a, b), c in res.terms():
        if a < prec_out:
            out[a] += fs.const(int(c) % fs.p) * fs.T**b
    return out


@pytest.mark.parametrize("q,text", [(3, "T"), (2, "T + 1"), (2, "T^2 + T + 1")])
def test_norm_matches_resultant(q, text):
    pi = prime(q, text)
    rng = random.Random(3)
    for n0 in (0, 1, 2):
        f = random_series(rng, pi.fs, 5, n0, max_deg=1)
        # f is a polynomial: extend it by zeros to the precision the norm needs
        need = norm_input_prec(4, pi.N, n0)
        fp = TruncatedSeries(pi.fs, f.coeffs + [pi.fs.zero] * need, max(need, f.prec))
        got = norm_product(fp, pi, 4)
        assert [got.coeff(i) for i in range(4)] == resultant_norm(f, pi, 4)


@pytest.mark.parametrize("q,text", [(3, "T"), (3, "T^2 + 1"), (2, "T^2 + T + 1")])
def test_norm_properties(q, text):
    pi = prime(q, text)
    fs = pi.fs
    P = 6
    one = TruncatedSeries.one(fs, norm_input_prec(P, pi.N))
    assert norm_product(one, pi, P) == TruncatedSeries.one(fs, P)
    u = TruncatedSeries.monomial(fs, fs.one, 1, norm_input_prec(P, pi.N))
    assert norm_product(u, pi, P) == TruncatedSeries.monomial(fs, fs.one, 1, P)
    rng = random.Random(11)
    M = norm_input_prec(P, pi.N)
    f, g = random_series(rng, fs, M), random_series(rng, fs, M)
    assert norm_product(f * g, pi, P) == norm_product(f, pi, P) * norm_product(g, pi, P)
    nf = norm_product(f, pi, P)
    assert congruent_mod(nf, f, pi, 1)
    assert nf.coeff(0) == f.coeff(0) ** pi.N
    with pytest.raises(PrecisionError):
        norm_product(f.truncate(M - 1), pi, P)


# -- pair forms -------------------------------------------------------------------


def g_form(pi, prec):
    from carlitz_forms.fixtures import eisenstein_gk

    return eisenstein_gk(1, prec, pi.fs)


@pytest.mark.parametrize("q,text", [(3, "T"), (3, "T^2 + 1"), (2, "T + 1")])
def test_trace_of_full_level_is_identity(q, text):
    pi = prime(q, text)
    F = g_form(pi, 30) ** 2
    tr = trace_pair(full_level_pair(F, pi))
    assert tr.agrees_with(F.series.to_K())


def test_fricke_is_an_involution_up_to_sign():
    pi = prime(3, "T")
    F = g_form(pi, 20)
    for f in (lift_by_vp(F, pi), full_level_pair(F, pi)):
        ff = fricke_pair(fricke_pair(f))
        sign = 1 if f.k % 2 == 0 else -1
        assert ff.at_inf == (f.at_inf if sign == 1 else -f.at_inf)
    # the lift and the full-level pair are exchanged by Fricke, up to pi^(k/2)
    a, b = fricke_pair(lift_by_vp(F, pi)), full_level_pair(F, pi).scale_half(-F.k)
    assert a.at_inf.body.agrees_with(b.at_inf.body)


def test_pair_parity_checked():
    pi = prime(3, "T")
    s = ScaledSeries(TruncatedSeries.one(pi.fs, 4), pi.poly, 0)
    with pytest.raises(DomainError):
        Gamma0PairForm(1, 0, s, s, pi)


def test_pair_frobenius_is_power():
    pi = prime(3, "T")
    f = lift_by_vp(g_form(pi, 12), pi)
    a, b = pair_frobenius(f, 1), pair_pow(f, 3)
    assert a.at_inf.body.agrees_with(b.at_inf.body)
    assert a.at_zero.e == b.at_zero.e and a.at_zero.body.agrees_with(b.at_zero.body)


@pytest.mark.parametrize("q,text", [(3, "T"), (3, "T^2 + 1"), (2, "T^2 + T + 1")])
def test_g0_and_gr(q, text):
    pi = prime(q, text)
    g0 = build_g0(1, pi, 4 * pi.N)
    assert congruent_mod(g0.at_inf, TruncatedSeries.one(pi.fs, g0.prec), pi, 1)
    assert g0.at_zero.v_p() >= Fraction(g0.k, 2) + 1
    g1 = build_gr(g0, 1)
    p = pi.fs.p
    assert congruent_mod(g1.at_inf, TruncatedSeries.one(pi.fs, g1.prec), pi, p)
    # Tr(g_(0)) is congruent to 1: g_(0) is 1 at infinity and tiny at 0
    tr = trace_pair(g0)
    assert congruent_mod(tr, TruncatedSeries.one(pi.fs, tr.prec, "K"), pi, 1)


def test_norm_tilde_guards():
    pi = prime(3, "T")
    F = g_form(pi, 20) ** 2
    f = lift_by_vp(F, pi)
    with pytest.raises(DomainError):
        norm_tilde(f)
    from carlitz_forms.fixtures import fricke_eigen_fixture

    e = fricke_eigen_fixture(F, pi)
    with pytest.raises(DomainError):
        norm_tilde(e, alpha=-1)
    with pytest.raises(DomainError):
        norm_tilde(e, alpha=2)
    nt, lam = norm_tilde(e, 1, 5)
    assert nt.prec == 5 and nt.rcoeff(0).is_integral()


def test_pair_mul_weights():
    pi = prime(3, "T")
    F = g_form(pi, 10)
    f = lift_by_vp(F, pi)
    h = pair_mul(f, f)
    assert (h.k, h.l) == (2 * F.k, (2 * F.l) % 2)
    assert h.at_zero.v_p() == 2 * f.at_zero.v_p()
    assert h.at_inf.body.agrees_with(lift_by_vp(F * F, pi).at_inf.body)


@pytest.mark.parametrize("q,text", CASES)
def test_vp_is_frobenius_substitution_mod_p(q, text):
    # f|V_p = f(u^N / f_pi(u)) and f_pi = 1 mod pi, so f|V_p = f(u^N) mod p
    pi = prime(q, text)
    rng = random.Random(f"vp-mod-p-{q}-{text}")
    for _ in range(10):
        f = random_series(rng, pi.fs, 8)
        uN = TruncatedSeries.monomial(pi.fs, pi.fs.one, pi.N, f.prec * pi.N)
        c = congruent_mod(vp_op(f, pi), f.substitute(uN), pi, 1)
        assert c.holds and c.prec == f.prec * pi.N


@pytest.mark.parametrize("q,text", CASES)
def test_up_digit_extraction_mod_p(q, text):
    # a_j = c_(N(j-1)+1) mod p
    from carlitz_forms.fields import reduce_mod_pi

    pi = prime(q, text)
    rng = random.Random(f"up-digits-{q}-{text}")
    for _ in range(10):
        f = random_series(rng, pi.fs, 4 * pi.N)
        g = up_direct(f, pi)
        assert g.prec >= 3
        for j in range(1, g.prec):
            k = pi.N * (j - 1) + 1
            if k < f.prec:
                assert reduce_mod_pi(g.coeff(j) - f.coeff(k), pi.poly).is_zero()


def test_trace_with_zero_at_cusp_zero_is_identity():
    pi = prime(3, "T^2 + 1")
    f = random_series(random.Random(3), pi.fs, 12).to_K()
    for k in (2, 3):
        zero = ScaledSeries(TruncatedSeries.zero(pi.fs, 12 * pi.N, "K"), pi, k)
        pair = Gamma0PairForm(k, 1, ScaledSeries(f, pi, 0), zero, pi)
        assert trace_pair(pair) == f


@pytest.mark.parametrize("q,text", [(3, "T"), (3, "T^2 + 1"), (2, "T + 1")])
def test_trace_of_vp_lift(q, text):
    # Tr(F|V_p) = F|V_p + pi^(1-k) F|U_p
    from carlitz_forms.fields import RationalFunction

    pi = prime(q, text)
    F = g_form(pi, 8 * pi.N) ** 2
    tr = trace_pair(lift_by_vp(F, pi))
    s = F.series
    expect = vp_op(s, pi, s.prec).to_K() + up_direct(s, pi).to_K().scale(RationalFunction(pi.fs.one, pi.poly ** (F.k - 1)))
    assert tr.agrees_with(expect)
    assert min(tr.prec, expect.prec) >= 3
