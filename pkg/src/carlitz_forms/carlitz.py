"""The Carlitz module, inverse cyclotomic polynomials and prime moduli."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import limits as _limits
from .errors import DomainError, InternalError
from .fields import FieldSpec, get_field, is_irreducible


class AdditivePolynomial:
    """``b_0 x + b_1 x^q + ... + b_r x^(q^r)`` with every b_i in A.

    Multiplication is composition, so this is the twisted polynomial ring
    that receives the Carlitz module.
    """

    __slots__ = ("fs", "coeffs")

    def __init__(self, fs: FieldSpec, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.fs = fs
        self.coeffs = tuple(coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def q_degree(self) -> int:
        """r such that the x-degree is q^r (``-1`` for the zero map)."""
        return len(self.coeffs) - 1

    @property
    def x_degree(self) -> int:
        return self.fs.q ** self.q_degree if self.coeffs else -1

    def leading_coefficient(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, AdditivePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.fs.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return AdditivePolynomial(self.fs, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return AdditivePolynomial(self.fs, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "AdditivePolynomial") -> "AdditivePolynomial":
        """``self(other(x))``; uses ``(b x^(q^j))^(q^i) = b(T^(q^i)) x^(q^(i+j))``."""
        if self.is_zero() or other.is_zero():
            return AdditivePolynomial(self.fs, [])
        out = [self.fs.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] += a * self.fs.frobenius(b, i)
        return AdditivePolynomial(self.fs, out)

    __matmul__ = compose

    def to_xpoly(self) -> "PolyOverA":
        """Explicit conversion to an ordinary polynomial in x."""
        q = self.fs.q
        return PolyOverA(self.fs, {q**i: c for i, c in enumerate(self.coeffs) if not c.is_zero()})

    def to_str(self, var: str = "x", ascending: bool = False) -> str:
        return self.to_xpoly().to_str(var, ascending)

    def __repr__(self):
        return f"AdditivePolynomial({self.to_str()})"


class PolyOverA:
    """A sparse polynomial in an auxiliary variable with coefficients in A."""

    __slots__ = ("fs", "terms")

    def __init__(self, fs: FieldSpec, terms: dict):
        self.fs = fs
        self.terms = {k: v for k, v in sorted(terms.items()) if not v.is_zero()}

    @property
    def degree(self) -> int:
        return max(self.terms, default=-1)

    def coeff(self, k: int):
        return self.terms.get(k, self.fs.zero)

    def __eq__(self, other):
        return isinstance(other, PolyOverA) and self.terms == other.terms

    def to_str(self, var: str = "X", ascending: bool = False) -> str:
        parts = []
        for k in sorted(self.terms, reverse=not ascending):
            c = self.fs.poly_str(self.terms[k])
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            else:
                if " " in c:
                    c = f"({c})"
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyOverA({self.to_str()})"


def carlitz_action(a, fs: FieldSpec) -> AdditivePolynomial:
    """rho_a, built by Horner's rule over the T-digits of ``a``.

    Each step is ``rho_{bT + c} = rho_b o rho_T + c`` with rho_T = T x + x^q.
    """
    coeffs = a.coeffs()
    if not coeffs:
        return AdditivePolynomial(fs, [])
    rho = [fs.R([coeffs[-1]])]
    for c in reversed(coeffs[:-1]):
        # (sum r_i tau^i)(T + tau) = sum r_i T^(q^i) tau^i + sum r_i tau^(i+1)
        nxt = [r * fs.frobenius(fs.T, i) for i, r in enumerate(rho)] + [fs.zero]
        for i, r in enumerate(rho):
            nxt[i + 1] += r
        nxt[0] += fs.R([c])
        rho = nxt
    return AdditivePolynomial(fs, rho)


def inverse_cyclotomic_of(a, fs: FieldSpec) -> PolyOverA:
    """``X^(q^deg a) * rho_a(1/X)`` for any nonzero a in A."""
    if a.is_zero():
        raise DomainError("inverse cyclotomic polynomial of 0")
    rho = carlitz_action(a, fs)
    top = fs.q ** rho.q_degree
    q = fs.q
    return PolyOverA(fs, {top - q**i: c for i, c in enumerate(rho.coeffs)})


class PrimeModulus:
    """A monic irreducible pi in A together with its Carlitz data.

    ``betas`` are the coefficients of rho_pi = pi x + alpha_1 x^q + ... + x^(q^d),
    so ``betas[0] == pi`` and ``betas[d] == 1``.
    """

    def __init__(self, pi, fs: FieldSpec):
        if pi.degree() < 1 or not pi.leading_coefficient().is_one():
            raise DomainError("a prime modulus must be monic of positive degree")
        if not is_irreducible(pi, fs):
            raise DomainError(f"{fs.poly_str(pi)} is not irreducible over F_{fs.q}")
        self.fs = fs
        self.poly = pi
        self.d = pi.degree()
        self.carlitz = carlitz_action(pi, fs)
        self.betas = self.carlitz.coeffs
        self.inv_cyclotomic = inverse_cyclotomic_of(pi, fs)
        if len(self.betas) != self.d + 1 or self.betas[0] != pi or not self.betas[-1].is_one():
            raise InternalError("rho_pi does not have the shape pi x + ... + x^(q^d)")

    @classmethod
    def parse(cls, text: str, fs: FieldSpec) -> "PrimeModulus":
        return cls(fs.parse_poly(text), fs)

    @property
    def N(self) -> int:
        """q^d, the number of residues mod pi (and the degree of rho_pi)."""
        return self.fs.q**self.d

    @property
    def alphas(self):
        """alpha_1, ..., alpha_{d-1} (the middle coefficients of rho_pi)."""
        return self.betas[1:-1]

    @cached_property
    def residue_size(self) -> int:
        return self.N

    def __eq__(self, other):
        return isinstance(other, PrimeModulus) and self.fs == other.fs and self.poly == other.poly

    def __hash__(self):
        return hash((self.fs, self.poly))

    def __str__(self):
        return self.fs.poly_str(self.poly)

    def __repr__(self):
        return f"PrimeModulus({self}, q={self.fs.q})"


def inverse_cyclotomic(pi: PrimeModulus) -> PolyOverA:
    return pi.inv_cyclotomic


def _xpoly_divmod(num: dict, den: dict, fs: FieldSpec):
    """Long division in A[x] by a divisor with unit leading coefficient."""
    top_d = max(den)
    lead_inv = den[top_d].leading_coefficient().inverse()
    if den[top_d].degree() != 0:
        raise DomainError("divisor must have a unit leading coefficient")
    lower = [(k, c) for k, c in den.items() if k != top_d]
    rem = dict(num)
    quo = {}
    for k in range(max(rem, default=-1), top_d - 1, -1):
        c = rem.pop(k, None)
        if c is None or c.is_zero():
            continue
        c = c * lead_inv
        shift = k - top_d
        quo[shift] = c
        for j, b in lower:
            rem[shift + j] = rem.get(shift + j, fs.zero) - c * b
    rem = {k: v for k, v in rem.items() if not v.is_zero()}
    return quo, rem


def hayes_quotient(pi: PrimeModulus, n: int, limits=None) -> PolyOverA:
    """rho_{pi^n}(x) / rho_{pi^(n-1)}(x), by exact division in A[x]."""
    if n < 1:
        raise DomainError("n must be positive")
    (limits or _limits.current()).check("hayes_degree", pi.fs.q ** (n * pi.d))
    fs = pi.fs
    top = carlitz_action(pi.poly**n, fs).to_xpoly().terms
    bottom = carlitz_action(pi.poly ** (n - 1), fs).to_xpoly().terms
    quo, rem = _xpoly_divmod(top, bottom, fs)
    if rem:
        raise InternalError("rho_{pi^(n-1)} does not divide rho_{pi^n}")
    return PolyOverA(fs, quo)


def is_eisenstein(f: PolyOverA, pi: PrimeModulus) -> bool:
    """Unit leading coefficient, other coefficients divisible by pi, and a
    constant term of exact pi-valuation one."""
    p = pi.poly
    top = f.degree
    if top < 1 or f.coeff(top).degree() != 0:
        return False
    for k, c in f.terms.items():
        if k != top and not (c % p).is_zero():
            return False
    c0 = f.coeff(0)
    if c0.is_zero():
        return False
    return not (c0.exact_division(p) % p).is_zero()


def hayes_eisenstein_check(pi: PrimeModulus, n: int, limits=None) -> bool:
    return is_eisenstein(hayes_quotient(pi, n, limits), pi)


def frobenius_congruence_check(pi: PrimeModulus) -> bool:
    """True iff rho_pi(x) = x^(q^d) mod pi."""
    p = pi.poly
    return pi.betas[-1].is_one() and all((b % p).is_zero() for b in pi.betas[:-1])


@dataclass(frozen=True)
class PrimeSpec:
    """Hashable recipe for a PrimeModulus: (p, e, modulus, pi digits)."""

    p: int
    e: int
    modulus: tuple
    pi: tuple

    def build(self) -> PrimeModulus:
        fs = get_field(self.p, self.e, self.modulus)
        return PrimeModulus(fs.poly_from_digits(self.pi), fs)
