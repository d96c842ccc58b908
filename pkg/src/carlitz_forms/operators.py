"""U_p, V_p, the Fricke involution and the trace and norm down to GL2(A).

Forms for Gamma0(p) are carried as :class:`Gamma0PairForm`, i.e. by their
u-expansions at the cusps infinity and 0, the latter being the expansion at
infinity of the Fricke image f|W.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import limits as _limits
from .carlitz import PrimeModulus
from .errors import DomainError, InternalError, PrecisionError
from .fields import RationalFunction, v_p
from .series import (
    ScaledSeries,
    TruncatedSeries,
    congruent_mod,
    difference_valuation,
    div_sparse_unit,
    mul_lists,
)

# -- combinatorics in characteristic p -------------------------------------


def multinomial_mod_p(parts, p: int) -> int:
    """(sum parts)! / prod(part!) mod p via Lucas's theorem.

    Digit by digit in base p this is a product of small multinomials, and
    it vanishes as soon as adding the parts produces a carry.
    """
    parts = [x for x in parts if x]
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    val = 1
    while parts:
        digits = [x % p for x in parts]
        s = sum(digits)
        if s >= p:
            return 0
        den = 1
        for dgt in digits:
            den = den * fact[dgt] % p
        val = val * fact[s] * pow(den, p - 2, p) % p
        parts = [x // p for x in parts if x >= p]
    return val


def _compositions(d: int, q: int, budget_sum: int, budget_extra: int):
    """(i_1, ..., i_d) with sum <= budget_sum and sum i_s (q^s - 1) <= budget_extra."""
    weights = [q**s - 1 for s in range(1, d + 1)]

    def rec(s, left_sum, left_extra):
        if s == d:
            yield ()
            return
        w = weights[s]
        top = min(left_sum, left_extra // w)
        for i in range(top + 1):
            for rest in rec(s + 1, left_sum - i, left_extra - i * w):
                yield (i,) + rest

    yield from rec(0, budget_sum, budget_extra)


def up_prec(prec_in: int, N: int) -> int:
    """Largest P with 1 + (P - 2) N <= prec_in - 1, and at least 1."""
    return max(1, (prec_in - 2) // N + 2)


def up_direct(f: TruncatedSeries, pi: PrimeModulus) -> TruncatedSeries:
    """f|U_p by the explicit coefficient formula.

    a_j = sum over (i_0, ..., i_d) with i_0 + ... + i_d = j - 1 of
    multinomial(j-1; i) * pi^i_0 * alpha_1^i_1 ... alpha_d^i_d * c_n
    where n = 1 + i_0 + i_1 q + ... + i_d q^d and alpha_d = 1.
    """
    fs, d, q, N = pi.fs, pi.d, pi.fs.q, pi.N
    P = up_prec(f.prec, N)
    zero = fs.zero
    out = [zero] * P
    betas = pi.betas
    powers = [[fs.one] for _ in range(d)]
    for j in range(1, P):
        # every i_s <= j - 1
        for s in range(d):
            while len(powers[s]) < j:
                powers[s].append(powers[s][-1] * betas[s])
        acc = zero
        for tail in _compositions(d, q, j - 1, f.prec - 1 - j):
            n = j + sum(i * (q ** (s + 1) - 1) for s, i in enumerate(tail))
            c = f.nums[n]
            if c.is_zero():
                continue
            i0 = j - 1 - sum(tail)
            m = multinomial_mod_p((i0,) + tail, fs.p)
            if not m:
                continue
            term = c * powers[0][i0]
            for s in range(1, d):
                if tail[s - 1]:
                    term = term * powers[s][tail[s - 1]]
            acc += term * m
        out[j] = acc
    return TruncatedSeries._make(fs, out, f.den, P, f.ring)


# -- the roots of rho_pi(x) = 1/u --------------------------------------------


@dataclass
class RootSymmetrics:
    """Elementary symmetric functions and power sums of the y_j = 1/gamma_j.

    The y_j are the roots of Q(y) = y^N - u f_pi(y), N = q^d.  Every e_r is a
    multiple of u, and the power sums are polynomials in u; ``p_vals[n]`` is
    p_n truncated at ``prec``.
    """

    pi: PrimeModulus
    prec: int
    e_vals: list = field(default_factory=list)
    p_vals: list = field(default_factory=list)

    def e(self, r: int) -> TruncatedSeries:
        if r == 0:
            return TruncatedSeries.one(self.pi.fs, self.prec)
        if r > self.pi.N:
            return TruncatedSeries.zero(self.pi.fs, self.prec)
        return self.e_vals[r - 1]

    def p(self, n: int) -> TruncatedSeries:
        return self.p_vals[n]


def elementary_values(pi: PrimeModulus, prec: int) -> list:
    """[e_1, ..., e_N] with e_r = (-1)^(r+1) beta_i u for r = q^i, else 0."""
    fs, q, N = pi.fs, pi.fs.q, pi.N
    out = []
    for r in range(1, N + 1):
        c = fs.zero
        for i, b in enumerate(pi.betas):
            if q**i == r:
                c = b if r % 2 == 1 else -b
        out.append(TruncatedSeries.monomial(fs, c, 1, prec))
    return out


def root_symmetrics(pi: PrimeModulus, M: int, prec: int | None = None) -> RootSymmetrics:
    """e_1..e_N and the power sums p_0..p_M (p_0 = N), truncated at ``prec``."""
    if M < 1:
        raise DomainError("need at least one power sum")
    fs, q, N = pi.fs, pi.fs.q, pi.N
    if prec is None:
        prec = M + 1
    rs = RootSymmetrics(pi, prec, elementary_values(pi, prec))
    # p_n = sum_{r<n} (-1)^(r-1) e_r p_{n-r} + (-1)^(n-1) n e_n, and
    # (-1)^(r-1) e_r = beta_i u when r = q^i (all other e_r vanish)
    zero = fs.zero
    nz = [(q**i, b) for i, b in enumerate(pi.betas)]
    p_vals = [[zero] * prec for _ in range(M + 1)]
    p_vals[0][0] = fs.const(N)
    for n in range(1, M + 1):
        cur = p_vals[n]
        for r, c in nz:
            if r < n:
                prev = p_vals[n - r]
                for k in range(prec - 1):
                    if not prev[k].is_zero():
                        cur[k + 1] += c * prev[k]
            elif r == n and prec > 1:
                cur[1] += c * fs.const(n)
    rs.p_vals = [TruncatedSeries._make(fs, v, fs.one, prec, "A", False) for v in p_vals]
    return rs


def newton_prec(prec_in: int, N: int) -> int:
    """Precision certified by ord(p_n) >= ceil(n / N)."""
    return max(1, -(-prec_in // N))


def up_oracle_newton(f: TruncatedSeries, pi: PrimeModulus) -> TruncatedSeries:
    """f|U_p as (1/pi) sum_n c_n p_n, an independent check on :func:`up_direct`."""
    fs = pi.fs
    P = newton_prec(f.prec, pi.N)
    M = f.prec - 1
    zero = fs.zero
    acc = [zero] * P
    if M >= 1:
        rs = root_symmetrics(pi, M, P)
        for n in range(1, M + 1):
            c = f.nums[n]
            if c.is_zero():
                continue
            for k, x in enumerate(rs.p_vals[n].nums):
                if not x.is_zero():
                    acc[k] += c * x
    # the n = 0 term is N c_0 / pi = 0 in characteristic p
    p = pi.poly
    if f.ring == "A":
        out = []
        for a in acc:
            q_, r = divmod(a, p)
            if not r.is_zero():
                raise InternalError("power-sum combination is not divisible by pi")
            out.append(q_)
        return TruncatedSeries._make(fs, out, f.den, P, "A")
    return TruncatedSeries._make(fs, acc, f.den * p, P, "K")


# -- V_p ---------------------------------------------------------------------


def _inv_cyclotomic_terms(pi: PrimeModulus):
    return [(k, c) for k, c in pi.inv_cyclotomic.terms.items() if k]


def vp_op(f: TruncatedSeries, pi: PrimeModulus, prec: int | None = None) -> TruncatedSeries:
    """f|V_p = f(u^N / f_pi(u)), known to precision N * prec_f (or ``prec`` if smaller).

    Computed as sum_k c_k t^k with t^k = u^N t^(k-1) / f_pi(u), each step a
    sparse division by the unit f_pi.
    """
    fs, N = pi.fs, pi.N
    P = f.prec * N
    if prec is not None:
        P = min(P, prec)
    (_limits.current()).check("series_prec", P)
    zero = fs.zero
    terms = _inv_cyclotomic_terms(pi)
    acc = [zero] * P
    power = [zero] * P
    if P:
        power[0] = fs.one
    top = min(f.prec, -(-P // N))
    for k in range(top):
        if k:
            power = div_sparse_unit([zero] * N + power[: P - N], terms, P, zero)
        c = f.nums[k]
        if c.is_zero():
            continue
        for j in range(k * N, P):
            x = power[j]
            if not x.is_zero():
                acc[j] += c * x
    return TruncatedSeries._make(fs, acc, f.den, P, f.ring)


def vp_substitution(pi: PrimeModulus, prec: int, ring="A") -> TruncatedSeries:
    """t = u^N / f_pi(u) as a series, known to precision ``prec``."""
    fs, N = pi.fs, pi.N
    base = [fs.zero] * prec
    if N < prec:
        base[N] = fs.one
    nums = div_sparse_unit(base, _inv_cyclotomic_terms(pi), prec, fs.zero)
    return TruncatedSeries._make(fs, nums, fs.one, prec, ring)


def vp_op_generic(f: TruncatedSeries, pi: PrimeModulus) -> TruncatedSeries:
    """f|V_p through the generic substitution routine (cross-check for vp_op)."""
    t = vp_substitution(pi, f.prec * pi.N, f.ring)
    return f.substitute(t)


# -- forms and pairs ---------------------------------------------------------


@dataclass
class Gl2aForm:
    """A form for GL2(A): weight, type and its u-expansion at infinity."""

    k: int
    l: int
    series: TruncatedSeries
    note: str = ""
    literature: bool = False

    def __mul__(self, other: "Gl2aForm") -> "Gl2aForm":
        q = self.series.fs.q
        return Gl2aForm(self.k + other.k, (self.l + other.l) % (q - 1), self.series * other.series)

    def __pow__(self, n: int) -> "Gl2aForm":
        q = self.series.fs.q
        return Gl2aForm(self.k * n, (self.l * n) % (q - 1), self.series**n)


@dataclass
class Gamma0PairForm:
    """A form for Gamma0(p), given at infinity and at 0 (= the Fricke image at infinity).

    Lifts from full level and products of them have at_inf of parity 0 and
    at_zero of parity k mod 2; Fricke images swap the two slots, so in general
    only the difference of parities is tied to k.
    """

    k: int
    l: int
    at_inf: ScaledSeries
    at_zero: ScaledSeries
    pi: PrimeModulus
    note: str = ""
    literature: bool = False
    eigen: int | None = None

    def __post_init__(self):
        if (self.at_zero.e - self.at_inf.e - self.k) % 2:
            raise DomainError("scale parities of the two cusps do not match the weight")

    @property
    def fs(self):
        return self.pi.fs

    @property
    def prec(self):
        return min(self.at_inf.prec, self.at_zero.prec)

    def __mul__(self, other):
        return pair_mul(self, other)

    def __add__(self, other):
        if (self.k, self.l) != (other.k, other.l):
            raise DomainError("cannot add forms of different weight or type")
        return Gamma0PairForm(self.k, self.l, self.at_inf + other.at_inf,
                              self.at_zero + other.at_zero, self.pi)

    def __neg__(self):
        return Gamma0PairForm(self.k, self.l, -self.at_inf, -self.at_zero, self.pi)

    def __sub__(self, other):
        return self + (-other)

    def scale_half(self, h: int) -> "Gamma0PairForm":
        """Multiply both expansions by pi^(h/2)."""
        return Gamma0PairForm(self.k, self.l, self.at_inf.scale_half(h), self.at_zero.scale_half(h), self.pi)


def _as_series(F) -> tuple[int, int, TruncatedSeries]:
    if isinstance(F, Gl2aForm):
        return F.k, F.l, F.series
    raise DomainError("expected a Gl2aForm")


def fricke_full_level(F: Gl2aForm, pi: PrimeModulus) -> ScaledSeries:
    """F|W = pi^(k/2) F|V_p for a form of full level."""
    k, _, s = _as_series(F)
    return ScaledSeries(vp_op(s, pi, s.prec), pi, k)


def full_level_pair(F: Gl2aForm, pi: PrimeModulus) -> Gamma0PairForm:
    """A full-level form viewed on Gamma0(p)."""
    k, l, s = _as_series(F)
    return Gamma0PairForm(k, l, ScaledSeries(s, pi, 0), fricke_full_level(F, pi), pi)


def lift_by_vp(F: Gl2aForm, pi: PrimeModulus) -> Gamma0PairForm:
    """F|V_p as a Gamma0(p) form; its Fricke image is pi^(-k/2) F."""
    k, l, s = _as_series(F)
    return Gamma0PairForm(k, l, ScaledSeries(vp_op(s, pi, s.prec), pi, 0), ScaledSeries(s, pi, -k), pi)


def fricke_pair(f: Gamma0PairForm) -> Gamma0PairForm:
    """(at_inf, at_zero) -> (at_zero, (-1)^k at_inf): W^2 = -pi I acts by (-1)^k."""
    back = f.at_inf if f.k % 2 == 0 else -f.at_inf
    return Gamma0PairForm(f.k, f.l, f.at_zero, back, f.pi)


def pair_mul(f: Gamma0PairForm, g: Gamma0PairForm) -> Gamma0PairForm:
    if f.pi != g.pi:
        raise DomainError("pair forms relative to different primes")
    q = f.pi.fs.q
    return Gamma0PairForm(f.k + g.k, (f.l + g.l) % (q - 1), f.at_inf * g.at_inf, f.at_zero * g.at_zero, f.pi)


def pair_frobenius(f: Gamma0PairForm, r: int) -> Gamma0PairForm:
    """f^(p^r), using that p-th powers of series are additive."""
    m = f.pi.fs.p**r
    q = f.pi.fs.q

    def frob(s: ScaledSeries):
        return ScaledSeries(s.body.frobenius_power(r), s.pi, s.e * m)

    return Gamma0PairForm(f.k * m, (f.l * m) % (q - 1), frob(f.at_inf), frob(f.at_zero), f.pi)


def pair_pow(f: Gamma0PairForm, n: int) -> Gamma0PairForm:
    if n < 1:
        raise DomainError("pair powers need n >= 1")
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else pair_mul(result, base)
        n >>= 1
        if n:
            base = pair_mul(base, base)
    return result


def trace_pair(f: Gamma0PairForm) -> TruncatedSeries:
    """Tr(f) = f + pi^(1 - k/2) (f|W)|U_p, a series over K."""
    if f.at_inf.e != 0:
        raise DomainError("the expansion at infinity must carry no half power of pi")
    h = 2 - f.k + f.at_zero.e
    if h % 2:
        raise DomainError("parity of the expansion at 0 does not match the weight")
    pi = f.pi
    up = up_direct(f.at_zero.body, pi)
    shift = h // 2
    if shift > 0:
        up = up.scale(pi.poly**shift)
    elif shift < 0:
        up = up.scale(RationalFunction(pi.fs.one, pi.poly ** (-shift)))
    return f.at_inf.body + up


# -- the norm ----------------------------------------------------------------


def _series_div(num, den, P):
    """num / den in A[[u]] mod u^P, where the quotient is known to lie in A[[u]]."""
    d0 = den[0]
    out = []
    for j in range(P):
        acc = num[j]
        for i in range(1, j + 1):
            if not den[i].is_zero() and not out[j - i].is_zero():
                acc -= den[i] * out[j - i]
        q_, r = divmod(acc, d0)
        if not r.is_zero():
            raise InternalError("inexact series division in the determinant")
        out.append(q_)
    return out


def _det_bareiss(M, P, fs):
    """Determinant of a square matrix over A[[u]]/(u^P) whose leading principal
    minors have nonzero constant terms (fraction-free elimination)."""
    n = len(M)
    zero = fs.zero
    M = [[list(x) for x in row] for row in M]
    prev = [fs.one] + [zero] * (P - 1)
    for k in range(n - 1):
        piv = M[k][k]
        if piv[0].is_zero():
            raise InternalError("vanishing pivot in the norm determinant")
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a = mul_lists(piv, M[i][j], P, zero)
                b = mul_lists(M[i][k], M[k][j], P, zero)
                M[i][j] = _series_div([x - y for x, y in zip(a, b)], prev, P)
        prev = piv
    return M[n - 1][n - 1]


def norm_input_prec(prec_out: int, N: int, n0: int = 0) -> int:
    """Input precision needed for ``prec_out`` exact output coefficients.

    Each root y_j has u-valuation 1/N, so an error O(u^m) in f moves the
    product by valuation >= m / N + (N - 1) n0 / N.
    """
    return max(1, N * (prec_out - 1) + 1 - (N - 1) * n0)


def norm_product(f: TruncatedSeries, pi: PrimeModulus, prec_out: int) -> TruncatedSeries:
    """prod_j f(y_j) over the N roots of y^N - u f_pi(y), to precision prec_out.

    Writing f = u^n0 g with g(0) != 0, prod y_j = u gives the factor u^n0, and
    prod g(y_j) is the determinant of multiplication by g(y) on
    A[[u]][y]/(y^N - u f_pi(y)) in the basis 1, y, ..., y^(N-1).
    """
    fs, N = pi.fs, pi.N
    if prec_out < 0:
        raise DomainError("negative output precision")
    n0 = f.true_order()
    if n0 is None:
        if f.prec >= norm_input_prec(prec_out, N):
            return TruncatedSeries.zero(fs, prec_out, f.ring)
        raise PrecisionError("input is zero to its precision, cannot certify the norm")
    need = norm_input_prec(prec_out, N, n0)
    if f.prec < need:
        raise PrecisionError(f"norm to precision {prec_out} needs input precision {need}, got {f.prec}")
    _limits.current().check("norm_degree", need)
    zero = fs.zero
    if n0 >= prec_out:
        return TruncatedSeries.zero(fs, prec_out, f.ring)
    P = prec_out - n0
    g = f.nums[n0:need]
    # reduction y^N = u * sum_i beta_i y^(N - q^i)
    red = [(N - fs.q**i, b) for i, b in enumerate(pi.betas)]

    def times_y(vec):
        top = vec[N - 1]
        out = [[zero] * P] + [list(x) for x in vec[: N - 1]]
        if any(not x.is_zero() for x in top):
            for pos, b in red:
                tgt = out[pos]
                for m in range(P - 1):
                    if not top[m].is_zero():
                        tgt[m + 1] += b * top[m]
        return out

    # g(y) mod Q by Horner; g's coefficients are constants in u
    vec = [[zero] * P for _ in range(N)]
    for c in reversed(g):
        vec = times_y(vec)
        vec[0][0] += c
    cols = [vec]
    for _ in range(N - 1):
        cols.append(times_y(cols[-1]))
    M = [[cols[c][r] for c in range(N)] for r in range(N)]
    det = _det_bareiss(M, P, fs)
    nums = [zero] * n0 + det
    out = TruncatedSeries._make(fs, nums, fs.one, prec_out, "A", False)
    if not f.den.is_one():
        out = TruncatedSeries._make(fs, out.nums, f.den**N, prec_out, "K")
    elif f.ring == "K":
        out = out.to_K()
    return out


def leading_coefficient(s: TruncatedSeries):
    n0 = s.true_order()
    if n0 is None:
        raise DomainError("series has no known nonzero coefficient")
    return n0, s.rcoeff(n0)


def norm_tilde(f: Gamma0PairForm, alpha: int = 1, prec_out: int | None = None):
    """The norm of a Fricke eigenform, rescaled to leading coefficient 1.

    Equals fhat * norm_product(fhat) where fhat is at_inf divided by its
    leading coefficient lam, computed as f * norm_product(f) / lam^(N+1).
    Returns (series, lam).
    """
    pi = f.pi
    if alpha not in (1, -1):
        raise DomainError("the Fricke eigenvalue must be +1 or -1")
    if f.at_inf.e != f.at_zero.e:
        raise DomainError("at_zero and at_inf differ by an odd half power of pi")
    expected = f.at_inf if alpha == 1 else -f.at_inf
    P = min(f.at_inf.prec, f.at_zero.prec)
    if not f.at_zero.body.truncate(P).agrees_with(expected.body.truncate(P)):
        raise DomainError("pair is not a Fricke eigenform with the stated eigenvalue")
    if f.at_inf.e:
        raise DomainError("norm_tilde needs an expansion at infinity over K")
    s = f.at_inf.body
    n0, lam = leading_coefficient(s)
    if v_p(lam, pi) != 0:
        raise DomainError("leading coefficient is not a unit at pi")
    N = pi.N
    if prec_out is None:
        prec_out = _max_norm_prec(s.prec, N, n0)
    nrm = norm_product(s, pi, prec_out).to_K()
    total = s.to_K() * nrm
    return total.scale(lam ** (-(N + 1))), lam


def _max_norm_prec(prec_in: int, N: int, n0: int) -> int:
    P = 1
    while norm_input_prec(P + 1, N, n0) <= prec_in:
        P += 1
    return P


# -- the forms g_(0) and g_(r) ------------------------------------------------


def build_g0(n: int, pi: PrimeModulus, prec: int, gd: Gl2aForm | None = None, check: bool = True) -> Gamma0PairForm:
    """g_(0) = g_d^n - pi^w g_d^n|V_p with w = n (q^d - 1), the weight.

    Its expansion at 0 is pi^(w/2) (g_d^n|V_p - g_d^n).  Built directly and
    checked against the pair calculus (full-level pair minus pi^w times the lift).
    """
    if n < 1:
        raise DomainError("n must be positive")
    if gd is None:
        from .fixtures import eisenstein_gk

        gd = eisenstein_gk(pi.d, prec, pi.fs)
    if gd.series.prec < prec:
        raise PrecisionError(f"g_d known to {gd.series.prec}, need {prec}")
    G = gd**n if n > 1 else gd
    G = Gl2aForm(G.k, G.l, G.series.truncate(prec))
    w = G.k
    s = G.series
    sv = vp_op(s, pi, prec)
    at_inf = s - sv.scale(pi.poly**w)
    at_zero = ScaledSeries(sv - s, pi, w)
    g0 = Gamma0PairForm(w, 0, ScaledSeries(at_inf, pi, 0), at_zero, pi, note=f"g_(0), n={n}")
    if check:
        other = full_level_pair(G, pi) - lift_by_vp(G, pi).scale_half(2 * w)
        P = g0.prec
        if not (other.at_inf.body.truncate(P).agrees_with(g0.at_inf.body.truncate(P))
                and other.at_zero.e == g0.at_zero.e
                and other.at_zero.body.truncate(P).agrees_with(g0.at_zero.body.truncate(P))):
            raise InternalError("g_(0) disagrees with its pair-calculus construction")
        if not congruent_mod(g0.at_inf, TruncatedSeries.one(pi.fs, P, "K"), pi, 1):
            raise InternalError("g_(0) is not congruent to 1 mod p")
        if g0.at_zero.v_p() < Fraction(w, 2) + 1:
            raise InternalError("g_(0)|W has too small a valuation")
    return g0


def build_gr(g0: Gamma0PairForm, r: int, check: bool = True) -> Gamma0PairForm:
    """g_(r) = g_(0)^(p^r)."""
    if r < 0:
        raise DomainError("r must be nonnegative")
    if r == 0:
        return g0
    gr = pair_frobenius(g0, r)
    if check:
        pr = g0.pi.fs.p**r
        one = TruncatedSeries.one(g0.fs, gr.at_inf.prec, "K")
        if not congruent_mod(gr.at_inf, one, g0.pi, pr):
            raise InternalError("g_(r) is not congruent to 1 mod p^(p^r)")
        if gr.at_zero.v_p() < Fraction(g0.k * pr, 2) + pr:
            raise InternalError("g_(r)|W has too small a valuation")
    return gr


# -- theorem-level verifiers ---------------------------------------------------


@dataclass
class Report:
    check: str
    params: dict
    valuation: object
    bound: object
    verdict: str
    prec: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def verdict(value, bound, prec: int) -> str:
    if prec <= 0:
        return "inconclusive"
    return "pass" if value >= bound else "fail"


def verify_tracemap_bound(f: Gamma0PairForm, n: int, r: int, pi: PrimeModulus,
                          gd: Gl2aForm | None = None) -> Report:
    """v_p(Tr(f g_(r)) - f) against min(p^r + v_p(f), p^r + 1 - k/2 + v_p(f|W))."""
    p = pi.fs.p
    prec = f.prec
    g0 = build_g0(n, pi, prec, gd)
    gr = build_gr(g0, r)
    tr = trace_pair(pair_mul(f, gr))
    lhs, P = difference_valuation(tr, f.at_inf, pi)
    pr = p**r
    vf, vw = f.at_inf.v_p(), f.at_zero.v_p()
    bound = min(pr + vf, pr + 1 - Fraction(f.k, 2) + vw)
    return Report("tracemap", {"n": n, "r": r, "k": f.k}, lhs, bound, verdict(lhs, bound, P), P,
                  {"v_f": vf, "v_fW": vw})


def annihilation_defect(f: TruncatedSeries, pi: PrimeModulus) -> TruncatedSeries:
    """(f|V_p)|U_p, which vanishes identically in characteristic p."""
    return up_direct(vp_op(f, pi), pi)
