import json
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.errors import DomainError
from carlitz_forms.fields import (
    INF,
    FieldSpec,
    RationalFunction,
    default_modulus,
    get_field,
    is_irreducible,
    poly_v_p,
    reduce_mod_pi,
    v_infty_decompose,
    v_p,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


def mobius(n):
    return int(sympy.mobius(n))


def necklace(q, n):
    # number of monic irreducibles of degree n over F_q
    return sum(mobius(d) * q ** (n // d) for d in sympy.divisors(n)) // n


def test_field_sizes_and_elements():
    for p, e in FIELDS:
        fs = get_field(p, e)
        assert fs.q == p**e
        assert len(set(fs.elem_code(c) for c in fs.elements)) == fs.q


def test_default_modulus_is_lexmin():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    # brute force: first candidate in lex order on (a_0, a_1, ...) that sympy calls irreducible
    x = sympy.Symbol("x")
    for p, e in [(2, 3), (5, 2), (3, 3)]:
        for low in product(range(p), repeat=e):
            if sympy.Poly(list(reversed(low + (1,))), x, modulus=p).is_irreducible:
                break
        assert default_modulus(p, e) == tuple(low) + (1,)


def test_field_axioms_f4():
    fs = get_field(2, 2)
    els = fs.elements
    nonzero = [c for c in els if not c.is_zero()]
    for a in nonzero:
        assert a ** (fs.q - 1) == fs.ctx.one()
    for a, b in product(els, els):
        assert a * b == b * a
        assert (a + b) ** 2 == a**2 + b**2


def test_reducible_modulus_rejected():
    with pytest.raises(DomainError):
        FieldSpec(3, 2, (2, 0, 1))  # z^2 - 1
    with pytest.raises(DomainError):
        FieldSpec(4, 1)
    with pytest.raises(DomainError):
        FieldSpec.from_q(6)


@pytest.mark.parametrize("p,e", FIELDS)
def test_irreducible_counts(p, e):
    fs = get_field(p, e)
    for n in range(1, 4 if fs.q <= 4 else 3):
        assert len(fs.monic_irreducibles(n)) == necklace(fs.q, n)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducibility_matches_sympy(p):
    fs = get_field(p)
    x = sympy.Symbol("x")
    for n in (2, 3):
        for f in fs.monic_polys(n):
            sp = sympy.Poly([r[0] for r in reversed(fs.poly_digits(f))], x, modulus=p)
            assert is_irreducible(f, fs) == sp.is_irreducible


def test_parse_and_print():
    fs = get_field(3)
    f = fs.parse_poly("T^2 + 1")
    assert fs.poly_digits(f) == [[1], [0], [1]]
    assert fs.poly_str(f) == "T^2 + 1"
    assert fs.parse_poly("[[1],[0],[1]]") == f
    assert fs.parse_poly("2T + 4") == fs.poly([1, 2])
    with pytest.raises(DomainError):
        fs.parse_poly("T/2")
    with pytest.raises(DomainError):
        fs.parse_poly("z*T")
    f4 = get_field(2, 2)
    g = f4.parse_poly("T^2 + z*T + 1")
    assert f4.poly_str(g) == "T^2 + z*T + 1"


def test_valuations():
    fs = get_field(3)
    pi = fs.parse_poly("T^2 + 1")
    a = pi**3 * fs.parse_poly("T + 1")
    assert poly_v_p(a, pi) == 3
    assert poly_v_p(fs.zero, pi) == INF
    x = RationalFunction(pi * fs.T, pi**4)
    assert v_p(x, pi) == -3
    assert reduce_mod_pi(a + 1, pi) == fs.one


def test_rational_function_canonical():
    fs = get_field(3)
    T = fs.T
    x = RationalFunction(2 * T * (T + 1), 2 * T * T)
    assert x.den == T
    assert x.num == T + 1
    assert x.to_str(fs) == "(T + 1)/T"
    assert RationalFunction(fs.one, T).to_str(fs) == "1/T"
    assert RationalFunction(T + 1, T * T).to_str(fs) == "(T + 1)/(T^2)"
    with pytest.raises(ZeroDivisionError):
        RationalFunction(fs.one, fs.zero)


def test_v_infty_decompose():
    fs = get_field(3)
    T = fs.T
    x = RationalFunction(2 * T**3 + T, T + 1)
    zeta, v = v_infty_decompose(x)
    assert zeta == fs.elem(2) and v == -2
    with pytest.raises(DomainError):
        v_infty_decompose(RationalFunction(fs.zero))


polys = st.lists(st.integers(0, 8), max_size=5)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_rational_field_axioms(a, b, c):
    fs = get_field(3)
    A = RationalFunction(fs.poly(a), fs.poly([1, 1]))
    B = RationalFunction(fs.poly(b) + 1, fs.T)
    C = RationalFunction(fs.poly(c))
    assert (A + B) * C == A * C + B * C
    assert (A * B) * C == A * (B * C)
    if not B.is_zero():
        assert (A / B) * B == A


@settings(max_examples=60, deadline=None)
@given(polys)
def test_digit_roundtrip(a):
    for p, e in FIELDS:
        fs = get_field(p, e)
        f = fs.poly(a)
        assert fs.poly_from_digits(json.loads(json.dumps(fs.poly_digits(f)))) == f
        assert fs.parse_poly(fs.poly_str(f)) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_infinity_valuation_is_multiplicative(a, b):
    fs = get_field(3)
    x = RationalFunction(fs.poly(a) + fs.T**5, fs.poly(b) * fs.T**2 + fs.T)
    y = RationalFunction(fs.poly(b) * fs.T + 1, fs.poly(a) * fs.T**4 + fs.T**3)
    zx, vx = v_infty_decompose(x)
    zy, vy = v_infty_decompose(y)
    assert v_infty_decompose(x * y) == (zx * zy, vx + vy)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_pi_valuation_is_discrete(a, b):
    fs = get_field(3)
    pi = fs.parse_poly("T^2 + 1")
    x = fs.poly(a) * pi**2 + 1 if a else pi
    y = fs.poly(b) * pi if b else pi**3
    assert poly_v_p(x * y, pi) == poly_v_p(x, pi) + poly_v_p(y, pi)
    vs = poly_v_p(x + y, pi)
    assert vs >= min(poly_v_p(x, pi), poly_v_p(y, pi))
    if poly_v_p(x, pi) != poly_v_p(y, pi):
        assert vs == min(poly_v_p(x, pi), poly_v_p(y, pi))


def test_monic_has_unit_sign():
    for p, e in FIELDS:
        fs = get_field(p, e)
        for d in range(4):
            for f in fs.monic_polys(d):
                assert v_infty_decompose(RationalFunction(f))[0] == fs.one


@pytest.mark.parametrize("p,e,d", [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 2), (7, 1, 2), (3, 2, 2)])
def test_residue_field_is_a_field(p, e, d):
    fs = get_field(p, e)
    pi = fs.monic_irreducibles(d)[0]
    residues = [fs.poly(list(c)) for c in product(fs.elements, repeat=d)]
    assert len({fs.poly_str(r) for r in residues}) == fs.q**d
    for a in residues:
        if not a.is_zero():
            assert any(reduce_mod_pi(a * b, pi) == fs.one for b in residues)
    a, b = residues[-1] * fs.T**3 + 1, residues[len(residues) // 2] * fs.T + fs.T**d
    assert reduce_mod_pi(a * b, pi) == reduce_mod_pi(reduce_mod_pi(a, pi) * reduce_mod_pi(b, pi), pi)
    assert reduce_mod_pi(a + b, pi) == reduce_mod_pi(reduce_mod_pi(a, pi) + reduce_mod_pi(b, pi), pi)
