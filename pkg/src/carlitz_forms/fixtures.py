"""u-expansions of concrete forms: Goss polynomials, the Eisenstein series g_k,
the false Eisenstein series E and the Gamma0(p) forms derived from them.

Only rational data enters: the Carlitz period never appears, because every
lattice sum is expressed through the Carlitz exponential e_C(w) = sum w^(q^i)/D_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import limits as _limits
from .carlitz import PrimeModulus, inverse_cyclotomic_of
from .errors import DomainError, InternalError
from .fields import FieldSpec, RationalFunction
from .operators import Gamma0PairForm, Gl2aForm, up_direct, vp_op
from .series import ScaledSeries, TruncatedSeries, div_sparse_unit

# -- Carlitz factorials --------------------------------------------------------


def bracket(i: int, fs: FieldSpec):
    """[i] = T^(q^i) - T."""
    return fs.T ** (fs.q**i) - fs.T


def carlitz_factorials(n: int, fs: FieldSpec) -> list:
    """[D_0, ..., D_n] with D_0 = 1 and D_i = [i] D_(i-1)^q."""
    D = [fs.one]
    for i in range(1, n + 1):
        D.append(bracket(i, fs) * D[-1] ** fs.q)
    return D


def carlitz_lcm(k: int, fs: FieldSpec):
    """L_k = [1][2]...[k] up to sign, i.e. (T^q - T)...(T^(q^k) - T)."""
    out = fs.one
    for i in range(1, k + 1):
        out = out * bracket(i, fs)
    return out


def reciprocal_exp_coeffs(smax: int, fs: FieldSpec) -> list:
    """[b_0, ..., b_smax] with w / e_C(w) = sum b_s w^s."""
    D = carlitz_factorials(_log_floor(smax + 1, fs.q) + 1, fs)
    inv_D = [RationalFunction(fs.one, x) for x in D]
    b = [RationalFunction(fs.one)]
    for s in range(1, smax + 1):
        acc = RationalFunction(fs.zero)
        i = 1
        while fs.q**i - 1 <= s:
            acc = acc + b[s - fs.q**i + 1] * inv_D[i]
            i += 1
        b.append(-acc)
    return b


def _log_floor(n: int, q: int) -> int:
    """Largest i with q^i <= n (n >= 1)."""
    i = 0
    while q ** (i + 1) <= n:
        i += 1
    return i


# -- Goss polynomials ----------------------------------------------------------


@dataclass
class GossTable:
    """G_1..G_M as dicts {exponent: coefficient in K}; ``G[0]`` is unused."""

    fs: FieldSpec
    D: list
    G: list

    def poly(self, n: int) -> dict:
        return self.G[n] if n >= 1 else {}

    def to_str(self, n: int) -> str:
        parts = []
        for j in sorted(self.G[n], reverse=True):
            c = self.G[n][j].to_str(self.fs)
            mono = "X" if j == 1 else f"X^{j}"
            if c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}" if (" " in c or "/" in c) else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def goss_table(M: int, fs: FieldSpec) -> GossTable:
    """G_n = X (G_(n-1) + sum_(i>=1) G_(n-q^i) / D_i), G_n = 0 for n <= 0."""
    _limits.current().check("goss_index", M)
    D = carlitz_factorials(_log_floor(max(M, 1), fs.q) + 1, fs)
    inv_D = [RationalFunction(fs.one, x) for x in D]
    G = [{}]
    for n in range(1, M + 1):
        acc: dict = {}

        def add(src, c):
            for j, v in src.items():
                w = v * c if c is not None else v
                cur = acc.get(j + 1)
                acc[j + 1] = w if cur is None else cur + w

        if n == 1:
            acc = {1: RationalFunction(fs.one)}
        else:
            add(G[n - 1], None)
            i = 1
            while fs.q**i < n:
                add(G[n - fs.q**i], inv_D[i])
                i += 1
        G.append({j: v for j, v in acc.items() if not v.is_zero()})
    return GossTable(fs, D, G)


# -- u_a ----------------------------------------------------------------------


def _u_a_data(a, fs: FieldSpec):
    """(shift q^deg a, normalized sparse terms of f_a, 1/leading coefficient)."""
    fa = inverse_cyclotomic_of(a, fs)
    c0 = fa.coeff(0)
    inv = c0.leading_coefficient().inverse()
    terms = [(k, c * inv) for k, c in fa.terms.items() if k]
    return fs.q ** a.degree(), terms, fs.R([inv])


def u_sub_a(a, prec: int, fs: FieldSpec) -> TruncatedSeries:
    """u_a = u(az) = 1 / rho_a(1/u) = u^(q^deg a) / f_a(u)."""
    if a.is_zero():
        raise DomainError("u_a is undefined for a = 0")
    shift, terms, inv = _u_a_data(a, fs)
    base = [fs.zero] * prec
    if shift < prec:
        base[shift] = inv
    return TruncatedSeries._make(fs, div_sparse_unit(base, terms, prec, fs.zero), fs.one, prec, "A", False)


def u_a_powers(a, jmax: int, prec: int, fs: FieldSpec) -> list:
    """[u_a^0, ..., u_a^jmax] as numerator lists of length prec."""
    shift, terms, inv = _u_a_data(a, fs)
    zero = fs.zero
    cur = [zero] * prec
    if prec:
        cur[0] = fs.one
    out = [cur]
    for _ in range(jmax):
        if out[-1] is None or all(x.is_zero() for x in out[-1]):
            out.append([zero] * prec)
            continue
        shifted = [zero] * shift + [x * inv for x in out[-1][: max(0, prec - shift)]]
        out.append(div_sparse_unit(shifted, terms, prec, zero))
    return out


def monic_up_to(prec: int, fs: FieldSpec):
    """Monic a with q^deg a < prec, i.e. those whose u_a is not O(u^prec)."""
    deg = 0
    while fs.q**deg < prec:
        yield from fs.monic_polys(deg)
        deg += 1


# -- Eisenstein series -----------------------------------------------------------


def power_sums_u_a(exponents, prec: int, fs: FieldSpec) -> dict:
    """{j: sum over monic a of u_a^j} to precision prec."""
    exponents = sorted(set(exponents))
    zero = fs.zero
    acc = {j: [zero] * prec for j in exponents}
    if not exponents:
        return acc
    jmax = exponents[-1]
    for a in monic_up_to(prec, fs):
        # u_a^j = O(u^(j q^deg a))
        top = min(jmax, (prec - 1) // fs.q ** a.degree())
        if top < exponents[0]:
            continue
        pw = u_a_powers(a, top, prec, fs)
        for j in exponents:
            if j > top:
                break
            row = acc[j]
            for i, x in enumerate(pw[j]):
                if not x.is_zero():
                    row[i] += x
    return acc


def eval_goss_sum(n: int, prec: int, fs: FieldSpec, table: GossTable | None = None) -> TruncatedSeries:
    """sum over monic a of G_n(u_a), a series over K."""
    table = table or goss_table(n, fs)
    Gn = table.poly(n)
    sums = power_sums_u_a(Gn.keys(), prec, fs)
    out = TruncatedSeries.zero(fs, prec, "K")
    for j, c in Gn.items():
        out = out + TruncatedSeries._make(fs, sums[j], fs.one, prec, "K").scale(c)
    return out


_GK_CACHE: dict = {}


def eisenstein_gk(k: int, prec: int, fs: FieldSpec) -> Gl2aForm:
    """g_k of weight q^k - 1 and type 0:

    g_k = (-1)^(k+1) L_k (-b_N - sum_(a monic) G_N(u_a)),  N = q^k - 1,

    with b_N the coefficient of w^N in w / e_C(w).  The coefficients are
    checked to lie in A.
    """
    if k < 1:
        raise DomainError("g_k needs k >= 1")
    _limits.current().check("series_prec", prec)
    key = (fs, k)
    hit = _GK_CACHE.get(key)
    if hit is not None and hit.prec >= prec:
        s = hit.truncate(prec)
    else:
        N = fs.q**k - 1
        b = reciprocal_exp_coeffs(N, fs)[N]
        lattice = eval_goss_sum(N, prec, fs)
        const = TruncatedSeries.monomial(fs, fs.one, 0, prec, "A").to_K().scale(b)
        body = -(const + lattice)
        L = carlitz_lcm(k, fs)
        sign = 1 if k % 2 == 1 else -1
        body = body.scale(L if sign == 1 else -L)
        if not body.is_integral():
            raise InternalError(f"g_{k} has a non-integral coefficient")
        s = body.to_A()
        _GK_CACHE[key] = s
    return Gl2aForm(fs.q**k - 1, 0, s, note=f"Eisenstein series g_{k} via Goss polynomials")


def eisenstein_g(prec: int, fs: FieldSpec) -> Gl2aForm:
    """g = g_1, of weight q - 1."""
    return eisenstein_gk(1, prec, fs)


def false_eisenstein(prec: int, fs: FieldSpec) -> TruncatedSeries:
    """E = sum over monic a of a * u_a, the false Eisenstein series (weight 2, type 1)."""
    _limits.current().check("series_prec", prec)
    zero = fs.zero
    acc = [zero] * prec
    for a in monic_up_to(prec, fs):
        ua = u_sub_a(a, prec, fs)
        for i, x in enumerate(ua.nums):
            if not x.is_zero():
                acc[i] += a * x
    return TruncatedSeries._make(fs, acc, fs.one, prec, "A", False)


def false_eisenstein_form(prec: int, fs: FieldSpec) -> Gl2aForm:
    return Gl2aForm(2, 1, false_eisenstein(prec, fs), note="false Eisenstein series E", literature=True)


# -- Gamma0(p) fixtures ----------------------------------------------------------


def weight2_type1_fixture(pi: PrimeModulus, prec: int, check: bool = True) -> Gamma0PairForm:
    """f_E = E - pi E|V_p, of weight 2 and type 1 for Gamma0(p).

    Since u|U = u, u_a|U = u_a for a prime to pi and (F|V)|U = 0, one gets
    f_E|U = f_E exactly; the Fricke image -f_E|U is therefore -f_E, with no
    loss of precision.  With ``check`` the identity is confirmed through
    :func:`up_direct` on the overlap.
    """
    fs = pi.fs
    if fs.q < 3:
        raise DomainError("the weight-2 type-1 fixture needs q >= 3")
    E = false_eisenstein(prec, fs)
    f = E - vp_op(E, pi, prec).scale(pi.poly)
    if check:
        up = up_direct(f, pi)
        if not up.agrees_with(f):
            raise InternalError("f_E|U_p differs from f_E")
    at_inf = ScaledSeries(f, pi, 0)
    return Gamma0PairForm(2, 1, at_inf, -at_inf, pi,
                          note="f_E = E - pi E|V_p, Fricke image -f_E|U_p = -f_E", literature=True)


def fricke_eigen_fixture(F: Gl2aForm, pi: PrimeModulus, prec: int | None = None) -> Gamma0PairForm:
    """F + pi^(k/2) F|V_p, a Fricke eigenform with eigenvalue +1 (k even)."""
    if F.k % 2:
        raise DomainError("the Fricke eigen fixture needs an even weight")
    s = F.series if prec is None else F.series.truncate(prec)
    body = s + vp_op(s, pi, s.prec).scale(pi.poly ** (F.k // 2))
    at = ScaledSeries(body, pi, 0)
    return Gamma0PairForm(F.k, F.l, at, at, pi, note=f"F + pi^(k/2) F|V_p from {F.note}", eigen=1)


def genus_dimension(q: int, d: int) -> dict:
    """Genus of X_0(p) for deg p = d, and the dimension (genus + 1) of the
    weight-2 type-1 forms for Gamma0(p)."""
    if d < 1:
        raise DomainError("d must be positive")
    if d % 2:
        num = q * (q ** (d - 1) - 1)
    else:
        num = q * q * (q ** (d - 2) - 1)
    genus, rem = divmod(num, q * q - 1)
    if rem:
        raise InternalError("genus formula produced a non-integer")
    return {"genus": genus, "dim_weight2_type1": genus + 1}
