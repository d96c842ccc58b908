"""Truncated u-series over A or K, pi-adic valuations and congruences.

A :class:`TruncatedSeries` knows the coefficients of u^0 .. u^(prec-1) and
nothing beyond.  Series over K are stored as a list of numerators in A over
one common monic denominator, which keeps every linear operator a map on
A-series.

A :class:`ScaledSeries` is ``pi^(e/2) * body`` with e in {0, 1}; it is the
only place a half power of pi ever appears.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, PrecisionError, RingMismatchError
from .fields import INF, FieldSpec, RationalFunction, poly_v_p

RINGS = ("A", "K")


def _pi_poly(pi):
    return getattr(pi, "poly", pi)


class TruncatedSeries:
    __slots__ = ("fs", "nums", "den", "prec", "ring")

    def __init__(self, fs: FieldSpec, coeffs=(), prec: int | None = None, ring: str | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        if prec < 0:
            raise DomainError("precision must be nonnegative")
        coeffs = coeffs[:prec]
        is_rf = [isinstance(c, RationalFunction) for c in coeffs]
        if ring is None:
            ring = "K" if any(is_rf) else "A"
        if ring not in RINGS:
            raise DomainError(f"unknown coefficient ring {ring!r}")
        rfs = [c if r else RationalFunction(c) for c, r in zip(coeffs, is_rf)]
        if ring == "A" and any(not c.is_integral() for c in rfs):
            raise DomainError("non-integral coefficient in an A-series")
        den = fs.one
        for c in rfs:
            if not c.den.is_one():
                den = den * c.den.exact_division(den.gcd(c.den))
        nums = [c.num * den.exact_division(c.den) for c in rfs]
        nums += [fs.zero] * (prec - len(nums))
        self.fs, self.nums, self.den, self.prec, self.ring = fs, nums, den, prec, ring

    # -- construction ---------------------------------------------------

    @classmethod
    def _make(cls, fs, nums, den, prec, ring, canonical=True):
        obj = object.__new__(cls)
        obj.fs, obj.nums, obj.den, obj.prec, obj.ring = fs, nums, den, prec, ring
        if canonical and not den.is_one():
            obj._canonicalize()
        return obj

    def _canonicalize(self):
        g = self.den
        for n in self.nums:
            if not n.is_zero():
                g = g.gcd(n)
                if g.is_one():
                    break
        if g.degree() > 0:
            self.nums = [n.exact_division(g) for n in self.nums]
            self.den = self.den.exact_division(g)
        if self.nums and all(n.is_zero() for n in self.nums):
            self.den = self.fs.one
        lc = self.den.leading_coefficient()
        if not lc.is_one():
            inv = lc.inverse()
            self.nums = [n * inv for n in self.nums]
            self.den = self.den * inv

    @classmethod
    def zero(cls, fs, prec, ring="A"):
        return cls._make(fs, [fs.zero] * prec, fs.one, prec, ring)

    @classmethod
    def monomial(cls, fs, coeff, k: int, prec: int, ring="A"):
        """``coeff * u^k`` known to precision ``prec`` (coeff in A)."""
        nums = [fs.zero] * prec
        if k < prec:
            nums[k] = coeff
        return cls._make(fs, nums, fs.one, prec, ring)

    @classmethod
    def one(cls, fs, prec, ring="A"):
        return cls.monomial(fs, fs.one, 0, prec, ring)

    @classmethod
    def from_polys(cls, fs, nums, prec=None, den=None, ring=None):
        """Series from a numerator list over A and an optional common denominator."""
        nums = list(nums)
        if prec is None:
            prec = len(nums)
        nums = nums[:prec] + [fs.zero] * max(0, prec - len(nums))
        den = fs.one if den is None else den
        if ring is None:
            ring = "A" if den.is_one() else "K"
        s = cls._make(fs, nums, den, prec, ring)
        if s.ring == "A" and not s.den.is_one():
            raise DomainError("non-integral coefficient in an A-series")
        return s

    # -- access ---------------------------------------------------------

    def coeff(self, i: int):
        """Coefficient of u^i: an element of A for A-series, of K otherwise."""
        if i >= self.prec:
            raise PrecisionError(f"u^{i} is beyond the precision {self.prec}")
        if self.ring == "A":
            return self.nums[i]
        return RationalFunction(self.nums[i], self.den)

    def rcoeff(self, i: int) -> RationalFunction:
        if i >= self.prec:
            raise PrecisionError(f"u^{i} is beyond the precision {self.prec}")
        return RationalFunction(self.nums[i], self.den)

    @property
    def coeffs(self) -> list:
        return [self.coeff(i) for i in range(self.prec)]

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return all(n.is_zero() for n in self.nums)

    def order(self) -> int:
        """Index of the first nonzero known coefficient (0 if none is known nonzero)."""
        for i, n in enumerate(self.nums):
            if not n.is_zero():
                return i
        return 0

    def true_order(self):
        """Index of the first nonzero coefficient, or None if none is known."""
        for i, n in enumerate(self.nums):
            if not n.is_zero():
                return i
        return None

    def support(self):
        return [i for i, n in enumerate(self.nums) if not n.is_zero()]

    def is_integral(self) -> bool:
        return self.den.is_one()

    def to_K(self) -> "TruncatedSeries":
        return TruncatedSeries._make(self.fs, list(self.nums), self.den, self.prec, "K", False)

    def to_A(self) -> "TruncatedSeries":
        if not self.den.is_one():
            raise DomainError("series has non-integral coefficients")
        return TruncatedSeries._make(self.fs, list(self.nums), self.den, self.prec, "A", False)

    def truncate(self, prec: int) -> "TruncatedSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        return TruncatedSeries._make(self.fs, self.nums[:prec], self.den, prec, self.ring)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.fs == other.fs and self.ring == other.ring and self.prec == other.prec
                and self.den == other.den and self.nums == other.nums)

    __hash__ = None

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficient-wise equality on the overlap of the two precisions."""
        self._check_compatible(other, same_ring=False)
        P = min(self.prec, other.prec)
        return all(a * other.den == b * self.den for a, b in zip(self.nums[:P], other.nums[:P]))

    # -- arithmetic -----------------------------------------------------

    def _check_compatible(self, other, same_ring=True):
        if not isinstance(other, TruncatedSeries):
            raise RingMismatchError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if self.fs != other.fs:
            raise RingMismatchError("series over different fields")
        if same_ring and self.ring != other.ring:
            raise RingMismatchError(f"series over {self.ring} and {other.ring}")

    def __neg__(self):
        return TruncatedSeries._make(self.fs, [-n for n in self.nums], self.den, self.prec, self.ring, False)

    def __add__(self, other):
        self._check_compatible(other)
        P = min(self.prec, other.prec)
        if self.den == other.den:
            nums = [a + b for a, b in zip(self.nums[:P], other.nums[:P])]
            return TruncatedSeries._make(self.fs, nums, self.den, P, self.ring)
        g = self.den.gcd(other.den)
        sa, sb = other.den.exact_division(g), self.den.exact_division(g)
        nums = [a * sa + b * sb for a, b in zip(self.nums[:P], other.nums[:P])]
        return TruncatedSeries._make(self.fs, nums, self.den * sa, P, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def mul_prec(self, other) -> int:
        return min(self.prec + other.order(), other.prec + self.order(), self.prec + other.prec)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_compatible(other)
        P = self.mul_prec(other)
        nums = mul_lists(self.nums, other.nums, P, self.fs.zero)
        return TruncatedSeries._make(self.fs, nums, self.den * other.den, P, self.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers of a series are not supported")
        result = TruncatedSeries.one(self.fs, self.prec, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius_power(self, r: int = 1) -> "TruncatedSeries":
        """f^(p^r), computed coefficient-wise since (a + b)^p = a^p + b^p.

        The result is known to precision p^r * prec.
        """
        m = self.fs.p**r
        zero = self.fs.zero
        nums = [zero] * (self.prec * m)
        for i, n in enumerate(self.nums):
            if not n.is_zero():
                nums[i * m] = n**m
        return TruncatedSeries._make(self.fs, nums, self.den**m, self.prec * m, self.ring, False)

    def scale(self, c) -> "TruncatedSeries":
        """Multiply every coefficient by c (an element of A or a RationalFunction)."""
        if isinstance(c, RationalFunction):
            if c.den.is_one():
                c = c.num
            else:
                nums = [n * c.num for n in self.nums]
                return TruncatedSeries._make(self.fs, nums, self.den * c.den, self.prec, "K")
        if isinstance(c, int):
            c = self.fs.const(c)
        return TruncatedSeries._make(self.fs, [n * c for n in self.nums], self.den, self.prec, self.ring)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by u^k (k >= 0)."""
        return TruncatedSeries._make(self.fs, [self.fs.zero] * k + self.nums, self.den, self.prec + k, self.ring, False)

    def invert_unit(self) -> "TruncatedSeries":
        """The reciprocal series, defined when the constant term is invertible."""
        P = self.prec
        if P == 0:
            return self
        n0 = self.nums[0]
        if n0.is_zero():
            raise DomainError("constant term is zero, the series is not a unit")
        if self.ring == "A" and n0.degree() > 0:
            raise DomainError("constant term is not a unit in A")
        zero = self.fs.zero
        a = self.nums
        nz = [(i, c) for i, c in enumerate(a[:P]) if i and not c.is_zero()]
        if n0.degree() == 0:
            inv0 = n0.leading_coefficient().inverse()
            b = [zero] * P
            b[0] = self.fs.R([inv0])
            for j in range(1, P):
                acc = zero
                for i, c in nz:
                    if i > j:
                        break
                    acc += c * b[j - i]
                b[j] = -acc * inv0
            nums = [self.den * x for x in b]
            return TruncatedSeries._make(self.fs, nums, self.fs.one, P, self.ring)
        # B_j = -sum_{i=1..j} a_i B_{j-i} n0^(i-1); 1/a = sum B_j u^j / n0^(j+1)
        pw = [self.fs.one]
        for _ in range(P):
            pw.append(pw[-1] * n0)
        B = [zero] * P
        B[0] = self.fs.one
        for j in range(1, P):
            acc = zero
            for i, c in nz:
                if i > j:
                    break
                acc += c * B[j - i] * pw[i - 1]
            B[j] = -acc
        nums = [self.den * B[j] * pw[P - 1 - j] for j in range(P)]
        return TruncatedSeries._make(self.fs, nums, pw[P], P, "K")

    def substitute(self, t: "TruncatedSeries") -> "TruncatedSeries":
        """The composition f(t) for a series t with order(t) >= 1."""
        self._check_compatible(t)
        m = t.true_order()
        if m == 0:
            raise DomainError("substitution needs a series with zero constant term")
        if m is None:
            # t vanishes to its whole precision
            m = max(t.prec, 1)
        P = min(t.prec, self.prec * m)
        fs = self.fs
        top = min(self.prec, -(-P // m))
        if top == 0:
            return TruncatedSeries.zero(fs, P, self.ring)
        # sum_i c_i T^i D^(top-1-i) / D^(top-1) where t = T/D
        tt = TruncatedSeries._make(fs, t.nums[:P], fs.one, P, self.ring, False)
        dpow = [fs.one]
        for _ in range(top - 1):
            dpow.append(dpow[-1] * t.den)
        acc = [fs.zero] * P
        power = TruncatedSeries.one(fs, P, self.ring)
        for i in range(top):
            c = self.nums[i]
            if not c.is_zero():
                w = c * dpow[top - 1 - i]
                for j in range(i * m, P):
                    x = power.nums[j]
                    if not x.is_zero():
                        acc[j] += w * x
            if i + 1 < top:
                power = (power * tt).truncate(P)
        return TruncatedSeries._make(fs, acc, self.den * dpow[top - 1], P, self.ring)

    def reduce_mod(self, pi) -> "TruncatedSeries":
        """Coefficients reduced modulo pi (A-series only)."""
        if not self.den.is_one():
            raise DomainError("reduction mod pi needs an integral series")
        p = _pi_poly(pi)
        return TruncatedSeries._make(self.fs, [n % p for n in self.nums], self.den, self.prec, self.ring)

    # -- valuations -----------------------------------------------------

    def v_p(self, pi):
        """min_i v_pi(c_i) over the known coefficients (INF if all vanish)."""
        p = _pi_poly(pi)
        best = INF
        for n in self.nums:
            if n.is_zero():
                continue
            v = _bounded_v(n, p, best)
            if v < best:
                best = v
                if best == 0:
                    break
        if best == INF:
            return INF
        return best - poly_v_p(self.den, p)

    # -- display --------------------------------------------------------

    def to_str(self, var: str = "u") -> str:
        parts = []
        for i in range(self.prec):
            if self.nums[i].is_zero():
                continue
            c = RationalFunction(self.nums[i], self.den)
            cs = c.to_str(self.fs)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        parts.append(f"O({var}^{self.prec})")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncatedSeries[{self.ring}]({self.to_str()})"


def _bounded_v(n, p, cap):
    """v_p(n), stopping early once it reaches ``cap``."""
    v = 0
    while v < cap:
        quo, rem = divmod(n, p)
        if not rem.is_zero():
            return v
        n, v = quo, v + 1
    return v


def mul_lists(a, b, P, zero):
    """First P coefficients of the product of two coefficient lists."""
    out = [zero] * P
    bn = [(j, c) for j, c in enumerate(b[:P]) if not c.is_zero()]
    if not bn:
        return out
    for i, x in enumerate(a[:P]):
        if x.is_zero():
            continue
        lim = P - i
        for j, y in bn:
            if j >= lim:
                break
            out[i + j] += x * y
    return out


def div_sparse_unit(nums, terms, P, zero):
    """First P coefficients of nums / F for F = 1 + sum c_k u^k.

    ``terms`` lists the (k, c_k) with k >= 1; the constant term must be 1.
    """
    out = list(nums[:P]) + [zero] * max(0, P - len(nums))
    terms = sorted(t for t in terms if not t[1].is_zero())
    for j in range(P):
        acc = out[j]
        for k, c in terms:
            if k > j:
                break
            b = out[j - k]
            if not b.is_zero():
                acc -= c * b
        out[j] = acc
    return out


def half(v):
    """Convert an integer-or-INF valuation to a Fraction (INF stays INF)."""
    return v if v == INF else Fraction(v)


class ScaledScalar:
    """r * pi^(e/2) with e in {0, 1}."""

    __slots__ = ("r", "e", "pi")

    def __init__(self, r: RationalFunction, h: int, pi):
        self.pi = _pi_poly(pi)
        e = h % 2
        shift = (h - e) // 2
        if shift:
            r = r * RationalFunction(self.pi) ** shift
        self.r, self.e = r, e

    def is_zero(self):
        return self.r.is_zero()

    def __mul__(self, other: "ScaledScalar"):
        return ScaledScalar(self.r * other.r, self.e + other.e, self.pi)

    def v_p(self):
        if self.r.is_zero():
            return INF
        num = poly_v_p(self.r.num, self.pi) - poly_v_p(self.r.den, self.pi)
        return Fraction(self.e, 2) + num

    def __eq__(self, other):
        return isinstance(other, ScaledScalar) and (self.r, self.e, self.pi) == (other.r, other.e, other.pi)

    __hash__ = None

    def __repr__(self):
        return f"ScaledScalar({self.r!r} * pi^({self.e}/2))"


class ScaledSeries:
    """``pi^(e/2) * body`` with e in {0, 1} and body a series over K."""

    __slots__ = ("e", "body", "pi")

    def __init__(self, body: TruncatedSeries, pi, h: int = 0):
        self.pi = _pi_poly(pi)
        e = h % 2
        shift = (h - e) // 2
        if body.ring != "K":
            body = body.to_K()
        if shift > 0:
            body = body.scale(self.pi**shift)
        elif shift < 0:
            body = body.scale(RationalFunction(body.fs.one, self.pi ** (-shift)))
        self.e, self.body = e, body

    @property
    def prec(self):
        return self.body.prec

    @property
    def fs(self):
        return self.body.fs

    def is_zero(self):
        return self.body.is_zero()

    def _check(self, other):
        if not isinstance(other, ScaledSeries) or self.pi != other.pi:
            raise RingMismatchError("scaled series relative to different primes")

    def __neg__(self):
        return ScaledSeries(-self.body, self.pi, self.e)

    def __add__(self, other):
        self._check(other)
        if self.e != other.e:
            raise RingMismatchError("cannot add scaled series of different parity")
        return ScaledSeries(self.body + other.body, self.pi, self.e)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ScaledScalar):
            return ScaledSeries(self.body.scale(other.r), self.pi, self.e + other.e)
        self._check(other)
        return ScaledSeries(self.body * other.body, self.pi, self.e + other.e)

    def scale_half(self, h: int) -> "ScaledSeries":
        """Multiply by pi^(h/2)."""
        return ScaledSeries(self.body, self.pi, self.e + h)

    def scale(self, c) -> "ScaledSeries":
        return ScaledSeries(self.body.scale(c), self.pi, self.e)

    def truncate(self, prec):
        return ScaledSeries(self.body.truncate(prec), self.pi, self.e)

    def v_p(self):
        v = self.body.v_p(self.pi)
        return INF if v == INF else Fraction(self.e, 2) + v

    def as_series(self) -> TruncatedSeries:
        """The underlying series over K; only defined for parity 0."""
        if self.e:
            raise DomainError("a series with an odd half power of pi is not over K")
        return self.body

    def __eq__(self, other):
        return isinstance(other, ScaledSeries) and (self.e, self.pi) == (other.e, other.pi) and self.body == other.body

    __hash__ = None

    def __repr__(self):
        pre = "pi^(1/2)*" if self.e else ""
        return f"ScaledSeries({pre}{self.body.to_str()})"


def series_v_p(f, pi):
    """pi-adic valuation of a TruncatedSeries or ScaledSeries (half-integers)."""
    if isinstance(f, ScaledSeries):
        return f.v_p()
    return half(f.v_p(pi))


class Congruence(NamedTuple):
    holds: bool
    prec: int
    valuation: object

    def __bool__(self):
        return self.holds


def _as_scaled(f, pi):
    return f if isinstance(f, ScaledSeries) else ScaledSeries(f, pi, 0)


def difference_valuation(f, g, pi):
    """v_p(f - g) on the overlap precision, and that precision.

    Parts of different parity cannot cancel, so then the answer is the
    smaller of the two valuations.
    """
    f, g = _as_scaled(f, pi), _as_scaled(g, pi)
    P = min(f.prec, g.prec)
    f, g = f.truncate(P), g.truncate(P)
    if f.e == g.e:
        return (f - g).v_p(), P
    return min(f.v_p(), g.v_p()), P


def congruent_mod(f, g, pi, m) -> Congruence:
    """Is v_p(f - g) >= m on the overlap of the known coefficients?"""
    v, P = difference_valuation(f, g, pi)
    return Congruence(v >= Fraction(m), P, v)
