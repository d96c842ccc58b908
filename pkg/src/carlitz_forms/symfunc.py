"""Partitions and the transition between monomial and elementary symmetric functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from math import comb

from . import limits as _limits
from .errors import DomainError, InternalError


@total_ordering
class Partition:
    """A weakly decreasing tuple of positive integers.

    The ordering operators give lexicographic order; dominance is
    :meth:`dominated_by`.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise DomainError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts {parts} are not weakly decreasing")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("", "0", "()"):
            return cls(())
        return cls(sorted((int(x) for x in text.split("+")), reverse=True))

    @classmethod
    def rectangle(cls, height: int, width: int) -> "Partition":
        """``height`` parts each equal to ``width``."""
        return cls((width,) * height)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts)) if self.parts else "0"

    def __repr__(self):
        return f"Partition({self.parts})"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for x in self.parts if x > i) for i in range(self.parts[0]))

    def dominated_by(self, other: "Partition") -> bool:
        """self <= other in dominance order (same size assumed)."""
        if self.n != other.n:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.parts[i] if i < len(self) else 0
            b += other.parts[i] if i < len(other) else 0
            if a > b:
                return False
        return True


def _partitions_desc(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - k, k):
            yield (k,) + rest


def partitions_of(n: int, limits=None) -> list:
    """All partitions of n in reverse lexicographic order, starting at (n)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    (limits or _limits.current()).check("partition_size", n)
    return [Partition(p) for p in _partitions_desc(n, n)]


def conjugate(mu: Partition) -> Partition:
    return mu.conjugate()


# -- 0-1 matrix counts ----------------------------------------------------------


def count_01_matrices(rows, cols, memo=None) -> int:
    """Number of 0-1 matrices with the given row and column sums.

    Columns are filled one at a time; the state is the sorted tuple of row
    sums still to be met, and rows with equal remainders are grouped so a
    column choice is a product of binomials.  ``memo`` may be shared between
    calls.
    """
    rows = tuple(sorted((r for r in rows if r), reverse=True))
    cols = tuple(c for c in cols if c)
    if sum(rows) != sum(cols):
        return 0
    if memo is None:
        memo = {}

    def go(state, j):
        if j == len(cols):
            return 1 if not state else 0
        key = (state, cols[j:])
        if key in memo:
            return memo[key]
        if sum(state) != sum(cols[j:]) or (state and state[0] > len(cols) - j):
            memo[key] = 0
            return 0
        groups = []
        for v in state:
            if groups and groups[-1][0] == v:
                groups[-1][1] += 1
            else:
                groups.append([v, 1])
        total = 0
        need = cols[j]

        def pick(g, left, weight, chosen):
            nonlocal total
            if g == len(groups):
                if left == 0:
                    new = []
                    for (v, cnt), t in zip(groups, chosen):
                        new += [v - 1] * t + [v] * (cnt - t)
                    nxt = tuple(sorted((x for x in new if x), reverse=True))
                    total += weight * go(nxt, j + 1)
                return
            v, cnt = groups[g]
            for t in range(min(cnt, left) + 1):
                pick(g + 1, left - t, weight * comb(cnt, t), chosen + [t])

        pick(0, need, 1, [])
        memo[key] = total
        return total

    return go(rows, 0)


# -- transition rows ---------------------------------------------------------------


@dataclass
class TransitionRow:
    """One row of a transition matrix: ``source`` written in the target basis.

    ``basis`` is "e->m" (e_source in monomials) or "m->e" (m_source in
    elementary functions).
    """

    source: Partition
    basis: str
    coeffs: dict = field(default_factory=dict)

    def get(self, nu: Partition) -> int:
        return self.coeffs.get(nu, 0)

    def to_json(self) -> dict:
        return {str(k): v for k, v in sorted(self.coeffs.items(), reverse=True)}

    def reduce(self, p: int) -> dict:
        return {k: v % p for k, v in self.coeffs.items() if v % p}


@lru_cache(maxsize=32)
def _e_in_m_table(n: int):
    parts = partitions_of(n)
    table = {}
    memo: dict = {}
    for lam in parts:
        row = {}
        top = lam.conjugate()
        for mu in parts:
            if not mu.dominated_by(top):
                continue
            c = count_01_matrices(lam.parts, mu.parts, memo)
            if c:
                row[mu] = c
        table[lam] = row
    return table


@lru_cache(maxsize=32)
def _m_in_e_table(n: int):
    # m_mu = e_{mu'} - sum_{kappa < mu} B_{mu kappa} m_kappa, B_{mu kappa} = M_{mu' kappa};
    # increasing lexicographic order is a linear extension of dominance
    E = _e_in_m_table(n)
    out = {}
    for mu in sorted(partitions_of(n)):
        row = {mu.conjugate(): 1}
        for kappa, b in E[mu.conjugate()].items():
            if kappa == mu:
                if b != 1:
                    raise InternalError("e-in-m table is not unitriangular")
                continue
            for nu, a in out[kappa].items():
                row[nu] = row.get(nu, 0) - b * a
        out[mu] = {k: v for k, v in row.items() if v}
    return out


def expand_e_in_m(lam: Partition, limits=None) -> TransitionRow:
    """e_lam = sum_mu M_{lam mu} m_mu, M counting 0-1 matrices."""
    (limits or _limits.current()).check("partition_size", lam.n)
    return TransitionRow(lam, "e->m", dict(_e_in_m_table(lam.n)[lam]))


def expand_m_in_e(mu: Partition, limits=None) -> TransitionRow:
    """m_mu = sum_nu a_{mu nu} e_nu by back substitution."""
    (limits or _limits.current()).check("partition_size", mu.n)
    return TransitionRow(mu, "m->e", dict(_m_in_e_table(mu.n)[mu]))


@dataclass
class LemmaReport:
    p: int
    r: int
    m: int
    xi: Partition
    excluded: Partition
    entries: list
    excluded_coeff: int
    verdict: str

    @property
    def passed(self):
        return self.verdict == "pass"


def conglemma_check(p: int, r: int, m: int, limits=None) -> LemmaReport:
    """p divides a_{mu xi} for xi = (p^r)^m and every mu != (m)^(p^r)."""
    if r < 1 or m < 1:
        raise DomainError("r and m must be positive")
    n = m * p**r
    (limits or _limits.current()).check("partition_size", n)
    xi = Partition.rectangle(m, p**r)
    excluded = Partition.rectangle(p**r, m)
    entries = []
    ok = True
    exc = None
    for mu in partitions_of(n, limits):
        a = _m_in_e_table(n)[mu].get(xi, 0)
        if mu == excluded:
            exc = a
            continue
        entries.append((mu, a))
        if a % p:
            ok = False
    return LemmaReport(p, r, m, xi, excluded, entries, exc, "pass" if ok else "fail")


def evaluate_symmetric(row: TransitionRow, e_vals, fs=None):
    """Substitute e_r -> e_vals[r-1] (and 0 for r past the end) into an e-basis row."""
    from .series import TruncatedSeries

    if row.basis != "m->e":
        raise DomainError("evaluate_symmetric needs a row in the elementary basis")
    if not e_vals:
        raise DomainError("no elementary values supplied")
    fs = fs or e_vals[0].fs
    P = min(e.prec for e in e_vals)
    total = TruncatedSeries.zero(fs, P)
    for nu, a in sorted(row.coeffs.items()):
        c = a % fs.p
        if not c:
            continue
        term = TruncatedSeries.one(fs, P)
        for part in nu:
            if part > len(e_vals):
                term = TruncatedSeries.zero(fs, P)
                break
            term = (term * e_vals[part - 1]).truncate(P)
        total = total + term.scale(fs.const(c))
    return total
