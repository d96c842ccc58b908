"""Exact arithmetic in F_q, A = F_q[T] and K = F_q(T).

Elements of A are ``flint.fq_default_poly`` objects created through a
:class:`FieldSpec`; elements of K are :class:`RationalFunction` instances.
A embeds in K only through ``RationalFunction(a)`` (or ``FieldSpec.K``),
never implicitly.
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache
from itertools import product

import flint

from .errors import DomainError

INF = math.inf
#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _fp_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    f = flint.nmod_poly(list(coeffs), p)
    if f.degree() < 1:
        return False
    _, factors = f.factor()
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == f.degree()


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e`` over F_p.

    Candidates are compared by their coefficient vectors read from the
    constant term upwards.
    """
    if e == 1:
        return (0, 1)
    for low in product(range(p), repeat=e):
        cand = tuple(low) + (1,)
        if _fp_irreducible(cand, p):
            return cand
    raise DomainError(f"no irreducible of degree {e} over F_{p}")  # pragma: no cover


class FieldSpec:
    """The finite field F_q, q = p^e, in a fixed polynomial basis over F_p.

    Also acts as the factory for elements of A = F_q[T].
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not _is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise DomainError(f"modulus must be monic of degree {e}")
        if e > 1 and not _fp_irreducible(modulus, p):
            raise DomainError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        if e == 1:
            self.ctx = flint.fq_default_ctx(p, 1)
        else:
            self.ctx = flint.fq_default_ctx(modulus=flint.fmpz_mod_poly_ctx(p)(list(modulus)))
        self.R = flint.fq_default_poly_ctx(self.ctx)
        self.zero = self.R.zero()
        self.one = self.R.one()
        self.T = self.R.gen()

    @classmethod
    def from_q(cls, q: int) -> "FieldSpec":
        fac = _prime_factors(q)
        if len(fac) != 1:
            raise DomainError(f"q={q} is not a prime power")
        p = fac[0]
        e = round(math.log(q, p))
        if p**e != q:
            raise DomainError(f"q={q} is not a prime power")
        return get_field(p, e)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    # -- F_q --------------------------------------------------------------

    def elem(self, x):
        """F_q element from an int (base-p digit code), digit list or element."""
        if isinstance(x, flint.fq_default):
            return x
        if isinstance(x, int):
            if self.e == 1:
                return self.ctx(x % self.p)
            digits = []
            for _ in range(self.e):
                x, r = divmod(x, self.p)
                digits.append(r)
            x = digits
        digits = [int(d) % self.p for d in x]
        if len(digits) > self.e:
            raise DomainError(f"digit vector {x} longer than e={self.e}")
        if self.e == 1:
            return self.ctx(digits[0] if digits else 0)
        return self.ctx(digits + [0] * (self.e - len(digits)))

    def digits(self, c) -> list[int]:
        d = [int(x) for x in c.to_list()]
        return d + [0] * (self.e - len(d))

    def elem_code(self, c) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits(c)))

    @cached_property
    def elements(self) -> tuple:
        """All q elements, ordered by digit code."""
        return tuple(self.elem(i) for i in range(self.q))

    def elem_str(self, c) -> str:
        if self.e == 1:
            return str(int(c.to_list()[0]))
        terms = []
        for i, d in reversed(list(enumerate(self.digits(c)))):
            if d == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(d))
            elif d == 1:
                terms.append(mono)
            else:
                terms.append(f"{d}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- A = F_q[T] ------------------------------------------------------

    def poly(self, coeffs):
        """Polynomial from a low-to-high list of F_q element specifications."""
        return self.R([self.elem(c) for c in coeffs])

    def const(self, c):
        return self.R([self.elem(c)])

    def poly_digits(self, f) -> list[list[int]]:
        return [self.digits(c) for c in f.coeffs()]

    def poly_from_digits(self, rows) -> "flint.fq_default_poly":
        return self.R([self.elem(list(r)) for r in rows])

    def poly_str(self, f, var: str = "T") -> str:
        coeffs = f.coeffs()
        terms = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if c.is_zero():
                continue
            cs = self.elem_str(c)
            if self.e > 1 and "+" in cs:
                cs = f"({cs})"
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(cs)
            elif c.is_one():
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def parse_poly(self, text: str):
        """Parse ``"T^2 + 1"``-style text (``z`` names the F_q generator) or a
        JSON digit-vector list such as ``[[1],[0],[1]]``."""
        text = text.strip()
        if text.startswith("["):
            import json

            return self.poly_from_digits(json.loads(text))
        from sympy import Poly, Symbol
        from sympy.parsing.sympy_parser import (
            implicit_multiplication_application,
            parse_expr,
            standard_transformations,
        )

        T, z = Symbol("T"), Symbol("z")
        try:
            expr = parse_expr(
                text.replace("^", "**"),
                local_dict={"T": T, "z": z},
                transformations=standard_transformations + (implicit_multiplication_application,),
            )
            sp = Poly(expr, T, z)
        except Exception as exc:  # sympy raises a zoo of types here
            raise DomainError(f"cannot parse polynomial {text!r}: {exc}") from None
        if any(not c.is_integer for c in sp.coeffs()):
            raise DomainError(f"non-integer coefficient in {text!r}")
        gen = self.elem([0, 1]) if self.e > 1 else None
        out = self.zero
        for (i, j), c in sp.terms():
            if j and gen is None:
                raise DomainError("'z' is only meaningful when e > 1")
            coeff = self.elem(int(c) % self.p)
            if j:
                coeff = coeff * gen**j
            out += self.R([coeff]) * self.T**i
        return out

    def monic_polys(self, degree: int):
        """All monic polynomials of the given degree.

        Ordered lexicographically on the coefficient codes, constant term first.
        """
        for low in product(self.elements, repeat=degree):
            yield self.R(list(low) + [self.ctx.one()])

    def monic_irreducibles(self, degree: int) -> list:
        return [f for f in self.monic_polys(degree) if is_irreducible(f, self)]

    def frobenius(self, b, i: int = 1):
        """``b**(q**i)``, which for b in A equals ``b(T**(q**i))``."""
        return b.inflate(self.q**i) if i else b

    # -- K = F_q(T) ------------------------------------------------------

    def K(self, num, den=None) -> "RationalFunction":
        return RationalFunction(num, den)


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1, modulus: tuple | None = None) -> FieldSpec:
    """Cached FieldSpec constructor (FieldSpec objects are immutable)."""
    return FieldSpec(p, e, modulus)


def degree(f) -> int:
    return f.degree()


def is_irreducible(f, fs: FieldSpec) -> bool:
    """Rabin's test: ``T^(q^n) = T mod f`` and ``gcd(T^(q^(n/r)) - T, f) = 1``
    for every prime r dividing n = deg f."""
    n = f.degree()
    if n < 1:
        raise DomainError("irreducibility test needs a non-constant polynomial")
    if not f.leading_coefficient().is_one():
        raise DomainError("irreducibility test needs a monic polynomial")
    if n == 1:
        return True
    T = fs.T % f
    frob = [T]
    for _ in range(n):
        frob.append(frob[-1].pow_mod(fs.q, f))
    if frob[n] != T:
        return False
    for r in _prime_factors(n):
        if not f.gcd(frob[n // r] - T).is_one():
            return False
    return True


def reduce_mod_pi(a, pi):
    """Remainder of ``a`` on division by the prime (a PrimeModulus or poly)."""
    return a % getattr(pi, "poly", pi)


def poly_v_p(a, pi) -> float | int:
    """Exact order of ``pi`` in ``a``; ``INF`` for ``a == 0``."""
    pi = getattr(pi, "poly", pi)
    if a.is_zero():
        return INF
    v = 0
    while True:
        quo, rem = divmod(a, pi)
        if not rem.is_zero():
            return v
        a, v = quo, v + 1


def v_p(x, pi) -> float | int:
    """Valuation at the prime ``pi`` of an element of A or K (``INF`` at 0)."""
    if isinstance(x, RationalFunction):
        if x.num.is_zero():
            return INF
        return poly_v_p(x.num, pi) - poly_v_p(x.den, pi)
    return poly_v_p(x, pi)


def v_infty_decompose(x: "RationalFunction"):
    """Return ``(zeta, v)`` with x = zeta * (1/T)^v * (1-unit at infinity)."""
    if not isinstance(x, RationalFunction):
        raise TypeError("v_infty_decompose expects a RationalFunction")
    if x.is_zero():
        raise DomainError("zero has no leading coefficient")
    return x.num.leading_coefficient(), x.den.degree() - x.num.degree()


def _canonical(num, den):
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return num, den.context().one()
    if den.degree() > 0:
        g = num.gcd(den)
        if not g.is_one():
            num = num.exact_division(g)
            den = den.exact_division(g)
    lc = den.leading_coefficient()
    if not lc.is_one():
        inv = lc.inverse()
        num, den = num * inv, den * inv
    return num, den


class RationalFunction:
    """An element num/den of K with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RationalFunction):
            raise TypeError("already a RationalFunction")
        if den is None:
            den = num.context().one()
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_integral(self) -> bool:
        return self.den.is_one()

    def as_poly(self):
        if not self.den.is_one():
            raise DomainError(f"{self} is not in A")
        return self.num

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return RationalFunction._raw(self.num + other.num, self.den)
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RationalFunction._raw(a.context().zero(), a.context().one())
        if b.is_one() and d.is_one():
            return RationalFunction._raw(a * c, b)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a.exact_division(g1), d.exact_division(g1)
        if not g2.is_one():
            c, b = c.exact_division(g2), b.exact_division(g2)
        return RationalFunction._raw(a * c, b * d)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num**n, self.den**n)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def to_str(self, fs: FieldSpec, var: str = "T") -> str:
        if self.den.is_one():
            return fs.poly_str(self.num, var)
        num, den = fs.poly_str(self.num, var), fs.poly_str(self.den, var)
        if " " in num:
            num = f"({num})"
        if " " in den or "*" in den or "^" in den:
            den = f"({den})"
        return f"{num}/{den}"
