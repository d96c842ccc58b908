"""Verification drivers: each check turns a configuration into a list of
per-case reports (see :func:`serialize.report_to_json`)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .carlitz import PrimeModulus, frobenius_congruence_check, hayes_eisenstein_check
from .errors import DomainError
from .fields import INF, FieldSpec, RationalFunction
from .fixtures import eisenstein_gk, fricke_eigen_fixture, weight2_type1_fixture
from .operators import (
    annihilation_defect,
    build_g0,
    lift_by_vp,
    norm_input_prec,
    norm_product,
    norm_tilde,
    pair_mul,
    trace_pair,
    up_direct,
    up_oracle_newton,
    verdict,
    verify_tracemap_bound,
    vp_op,
)
from .serialize import report_to_json
from .series import TruncatedSeries, difference_valuation
from .symfunc import conglemma_check

CHECKS = (
    "hayes",
    "frobenius",
    "gd-congruence",
    "up-oracle-equality",
    "normprop",
    "conglemma",
    "tracemap",
    "trace-theorem",
    "norm-theorem",
)


@dataclass
class CheckConfig:
    fs: FieldSpec
    pi: PrimeModulus | None = None
    prec: int | None = None
    seed: int = 0
    deg: int | None = None
    max_n: int | None = None
    n: int = 1
    r: tuple = (0, 1)
    count: int | None = None
    p: int | None = None
    extra: dict = field(default_factory=dict)

    def primes(self) -> list:
        if self.deg is not None:
            return [PrimeModulus(f, self.fs) for f in self.fs.monic_irreducibles(self.deg)]
        if self.pi is None:
            raise DomainError("this check needs --pi or --deg")
        return [self.pi]


def _or(value, default):
    return default if value is None else value


def random_poly(rng: random.Random, fs: FieldSpec, max_deg: int = 3):
    return fs.poly([rng.randrange(fs.q) for _ in range(rng.randrange(max_deg + 2))])


def random_series(rng: random.Random, fs: FieldSpec, prec: int, n0: int = 0, max_deg: int = 3):
    """Random integral series with coefficient of u^n0 nonzero (if n0 < prec)."""
    coeffs = [fs.zero] * n0 + [random_poly(rng, fs, max_deg) for _ in range(max(0, prec - n0))]
    if n0 < prec:
        while coeffs[n0].is_zero():
            coeffs[n0] = random_poly(rng, fs, max_deg)
    return TruncatedSeries(fs, coeffs, prec)


def _report(name, cfg, pi, params, valuation, bound, v):
    return report_to_json(name, cfg.fs, pi, params, valuation, bound, v)


def check_hayes(cfg: CheckConfig) -> list:
    out = []
    for pi in cfg.primes():
        for n in range(1, _or(cfg.max_n, 2) + 1):
            ok = hayes_eisenstein_check(pi, n)
            out.append(_report("hayes", cfg, pi, {"n": n}, None, None, "pass" if ok else "fail"))
    return out


def check_frobenius(cfg: CheckConfig) -> list:
    return [
        _report("frobenius", cfg, pi, {}, None, None, "pass" if frobenius_congruence_check(pi) else "fail")
        for pi in cfg.primes()
    ]


def check_gd_congruence(cfg: CheckConfig) -> list:
    out = []
    for pi in cfg.primes():
        prec = _or(cfg.prec, 2 * pi.N)
        g = eisenstein_gk(pi.d, prec, cfg.fs).series
        v, P = difference_valuation(g, TruncatedSeries.one(cfg.fs, prec), pi)
        integral = g.is_integral()
        res = verdict(v, 1, P) if integral else "fail"
        out.append(_report("gd-congruence", cfg, pi, {"d": pi.d, "prec": P, "integral": integral}, v, 1, res))
    return out


def check_up_oracle(cfg: CheckConfig) -> list:
    rng = random.Random(cfg.seed)
    prec = _or(cfg.prec, 25)
    out = []
    for pi in cfg.primes():
        ok = True
        overlap = None
        for _ in range(_or(cfg.count, 20)):
            f = random_series(rng, cfg.fs, prec)
            a, b = up_direct(f, pi), up_oracle_newton(f, pi)
            P = min(a.prec, b.prec)
            overlap = P if overlap is None else min(overlap, P)
            vf = f.v_p(pi)
            ok &= a.truncate(P) == b.truncate(P)
            ok &= a.v_p(pi) >= vf and vp_op(f, pi).v_p(pi) >= vf
            ok &= annihilation_defect(f, pi).is_zero()
        res = "pass" if ok else "fail"
        if not overlap:
            res = "inconclusive"
        out.append(_report("up-oracle-equality", cfg, pi,
                           {"count": _or(cfg.count, 20), "prec": prec, "seed": cfg.seed, "overlap": overlap},
                           None, None, res))
    return out


def check_normprop(cfg: CheckConfig) -> list:
    rng = random.Random(cfg.seed)
    prec_out = _or(cfg.prec, 12)
    out = []
    for pi in cfg.primes():
        worst, ok = INF, True
        for _ in range(_or(cfg.count, 10)):
            n0 = rng.randrange(4)
            f = random_series(rng, cfg.fs, norm_input_prec(prec_out, pi.N), n0)
            nf = norm_product(f, pi, prec_out)
            v, _ = difference_valuation(nf, f, pi)
            worst = min(worst, v)
            ok &= nf.coeff(n0) == f.coeff(n0) ** pi.N if n0 < prec_out else True
        res = verdict(worst, 1, prec_out) if ok else "fail"
        out.append(_report("normprop", cfg, pi,
                           {"count": _or(cfg.count, 10), "prec_out": prec_out, "seed": cfg.seed}, worst, 1, res))
    return out


def check_conglemma(cfg: CheckConfig) -> list:
    p = cfg.p or cfg.fs.p
    max_n = _or(cfg.max_n, 12)
    out = []
    r = 1
    while p**r <= max_n:
        m = 1
        while m * p**r <= max_n:
            rep = conglemma_check(p, r, m)
            params = {"p": p, "r": r, "m": m, "excluded_coeff": rep.excluded_coeff}
            out.append(report_to_json("conglemma", cfg.fs, None, params, None, None, rep.verdict))
            m += 1
        r += 1
    return out


def check_tracemap(cfg: CheckConfig) -> list:
    out = []
    for pi in cfg.primes():
        prec = _or(cfg.prec, 15 * pi.N)
        g = eisenstein_gk(1, prec, cfg.fs)
        f = lift_by_vp(g**2, pi)
        for r in cfg.r:
            rep = verify_tracemap_bound(f, cfg.n, r, pi)
            params = {"n": cfg.n, "r": r, "prec": prec, "overlap": rep.prec, "form": "lift of g^2"}
            out.append(_report("tracemap", cfg, pi, params, rep.valuation, rep.bound, rep.verdict))
    return out


def check_trace_theorem(cfg: CheckConfig) -> list:
    if cfg.fs.q < 3:
        raise DomainError("the weight-2 type-1 trace theorem needs q >= 3")
    out = []
    for pi in cfg.primes():
        prec = _or(cfg.prec, 13 * pi.N + 2)
        fE = weight2_type1_fixture(pi, prec)
        g0 = build_g0(cfg.n, pi, prec)
        tr = trace_pair(pair_mul(fE, g0))
        v, P = difference_valuation(tr, fE.at_inf, pi)
        out.append(_report("trace-theorem", cfg, pi, {"n": cfg.n, "prec": prec, "overlap": P, "claim": "Tr(f g_(0)) = f mod p"},
                           v, 1, verdict(v, 1, P)))
        t0 = trace_pair(fE)
        v0 = t0.v_p(pi)
        out.append(_report("trace-theorem", cfg, pi, {"prec": prec, "overlap": t0.prec, "claim": "Tr(f) = 0"},
                           v0, INF, verdict(v0, INF, t0.prec)))
    return out


def norm_theorem_case(pi: PrimeModulus, prec_out: int):
    """(Ntilde, fhat, lam) for the eigen fixture built from g_d^2."""
    fs = pi.fs
    prec = norm_input_prec(prec_out, pi.N)
    F = eisenstein_gk(pi.d, prec, fs) ** 2
    f = fricke_eigen_fixture(F, pi)
    nt, lam = norm_tilde(f, 1, prec_out)
    fhat = f.at_inf.body.scale(lam.inverse())
    return nt, fhat, lam


def check_norm_theorem(cfg: CheckConfig) -> list:
    out = []
    for pi in cfg.primes():
        prec_out = _or(cfg.prec, 10)
        nt, fhat, lam = norm_theorem_case(pi, prec_out)
        v, P = difference_valuation(nt, fhat * fhat, pi)
        lead_one = nt.true_order() is not None and nt.rcoeff(nt.true_order()) == RationalFunction(cfg.fs.one)
        integral = nt.v_p(pi) >= 0
        res = verdict(v, 1, P) if (lead_one and integral) else "fail"
        params = {"prec_out": prec_out, "overlap": P, "form": f"g_{pi.d}^2 + Fricke image",
                  "leading_one": lead_one, "pi_integral": integral, "rescaled_by": lam.to_str(cfg.fs)}
        out.append(_report("norm-theorem", cfg, pi, params, v, 1, res))
    return out


DRIVERS = {
    "hayes": check_hayes,
    "frobenius": check_frobenius,
    "gd-congruence": check_gd_congruence,
    "up-oracle-equality": check_up_oracle,
    "normprop": check_normprop,
    "conglemma": check_conglemma,
    "tracemap": check_tracemap,
    "trace-theorem": check_trace_theorem,
    "norm-theorem": check_norm_theorem,
}


def run_check(name: str, cfg: CheckConfig) -> list:
    if name not in DRIVERS:
        raise DomainError(f"unknown check {name!r}")
    return DRIVERS[name](cfg)


def aggregate(reports: list) -> str:
    verdicts = {r["verdict"] for r in reports}
    if "fail" in verdicts:
        return "fail"
    if verdicts == {"pass"}:
        return "pass"
    return "inconclusive"
