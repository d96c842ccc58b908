"""Command line interface: ``carlitz-forms {expand,op,verify} ...``.

Exit codes: 0 on success (an inconclusive verification included), 1 when a
verification fails or an internal invariant breaks, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import limits as _limits
from .carlitz import PrimeModulus, carlitz_action
from .checks import CHECKS, CheckConfig, aggregate, run_check
from .errors import CarlitzError, DomainError, InternalError, RingMismatchError
from .fields import FieldSpec, get_field
from .fixtures import eisenstein_gk, false_eisenstein, fricke_eigen_fixture, u_sub_a
from .operators import (
    Gamma0PairForm,
    Gl2aForm,
    lift_by_vp,
    norm_product,
    norm_tilde,
    trace_pair,
    up_direct,
    up_oracle_newton,
    vp_op,
)
from .serialize import field_from_json, field_header, poly_to_json, series_from_json, series_to_json
from .series import ScaledSeries

EXPAND_TARGETS = ("carlitz", "inv_cyclotomic", "u_a", "E", "g_k")
OPS = ("up", "up-oracle", "vp", "trace", "norm-product", "norm-tilde")


class ConfigError(CarlitzError):
    pass


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g = c.add_argument_group("field and prime")
    g.add_argument("--q", type=int, help="field size q = p^e")
    g.add_argument("--p-char", type=int, help="characteristic p (with --ext-deg)")
    g.add_argument("--ext-deg", type=int, help="extension degree e (with --p-char)")
    g.add_argument("--fq-modulus", help="modulus over F_p, low-to-high digits like 1,0,1")
    g.add_argument("--pi", default="T", help="monic irreducible prime, e.g. 'T^2 + 1' (default T)")
    g.add_argument("--prec", type=int, help="u-adic precision")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--out", help="write output here instead of stdout")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(
        prog="carlitz-forms",
        description="u-series of Drinfeld modular forms: expansions, operators and congruence checks.",
        allow_abbrev=False,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("expand", parents=[common], allow_abbrev=False, help="print an exact expansion")
    ex.add_argument("target", choices=EXPAND_TARGETS)
    ex.add_argument("a", nargs="?", help="element of A for carlitz and u_a (default T, resp. 1)")
    ex.add_argument("--a", dest="a_opt", help="same as the positional a")
    ex.add_argument("--k", type=int, default=1, help="index k of g_k")

    op = sub.add_parser("op", parents=[common], allow_abbrev=False, help="apply an operator to a series file")
    op.add_argument("op", choices=OPS)
    op.add_argument("input", nargs="?", help="series or pair JSON file ('-' for stdin)")
    op.add_argument("--input", dest="input_opt")
    op.add_argument("--k", type=int, help="weight, when the input is a full-level series")
    op.add_argument("--l", type=int, default=0, help="type, when the input is a full-level series")
    op.add_argument("--prec-out", type=int, help="output precision for the norms")
    op.add_argument("--alpha", type=int, default=1, choices=(1, -1), help="Fricke eigenvalue for norm-tilde")

    ve = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="run a verification")
    ve.add_argument("check", choices=CHECKS)
    ve.add_argument("--deg", type=int, help="run over every monic prime of this degree")
    ve.add_argument("--max-n", type=int, help="largest n (hayes) or partition size (conglemma)")
    ve.add_argument("--p", type=int, help="prime for conglemma (default: the characteristic)")
    ve.add_argument("--n", type=int, default=1, help="exponent n in g_(0)")
    ve.add_argument("--r", default="0,1", help="comma separated r values for tracemap")
    ve.add_argument("--count", type=int, help="number of random cases")
    return ap


def field_from_args(args) -> FieldSpec:
    if args.q is not None and (args.p_char is not None or args.ext_deg is not None):
        fs = FieldSpec.from_q(args.q)
        if (args.p_char or fs.p) != fs.p or (args.ext_deg or fs.e) != fs.e:
            raise ConfigError("--q disagrees with --p-char/--ext-deg")
    if args.p_char is not None:
        p, e = args.p_char, args.ext_deg or 1
    elif args.q is not None:
        fs = FieldSpec.from_q(args.q)
        p, e = fs.p, fs.e
    else:
        p, e = 3, args.ext_deg or 1
    modulus = None
    if args.fq_modulus:
        try:
            raw = args.fq_modulus.strip()
            modulus = tuple(json.loads(raw) if raw.startswith("[") else (int(x) for x in raw.split(",")))
        except ValueError:
            raise ConfigError(f"cannot parse --fq-modulus {args.fq_modulus!r}") from None
        if e == 1:
            modulus = None
    return get_field(p, e, modulus)


def prime_from_args(args, fs) -> PrimeModulus:
    return PrimeModulus(fs.parse_poly(args.pi), fs)


def _emit(args, payload, text: str):
    body = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _check_prec(args):
    for name in ("prec", "prec_out"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be nonnegative")


def cmd_expand(args) -> int:
    fs = field_from_args(args)
    a_text = args.a_opt or args.a
    prec = args.prec or 10
    if args.target == "carlitz":
        a = fs.parse_poly(a_text or "T")
        rho = carlitz_action(a, fs)
        payload = field_header(fs)
        payload.update({"kind": "additive", "a": poly_to_json(a, fs),
                        "coeffs": [poly_to_json(c, fs) for c in rho.coeffs]})
        _emit(args, payload, rho.to_str("x", ascending=True))
        return 0
    if args.target == "inv_cyclotomic":
        pi = prime_from_args(args, fs)
        f = pi.inv_cyclotomic
        payload = field_header(fs, pi)
        payload.update({"kind": "poly_in_X",
                        "terms": {str(k): poly_to_json(c, fs) for k, c in sorted(f.terms.items())}})
        _emit(args, payload, f.to_str("X"))
        return 0
    if args.target == "u_a":
        a = fs.parse_poly(a_text or "1")
        s = u_sub_a(a, prec, fs)
    elif args.target == "E":
        s = false_eisenstein(prec, fs)
    else:
        if args.k < 1:
            raise ConfigError("--k must be positive")
        s = eisenstein_gk(args.k, prec, fs).series
    _emit(args, series_to_json(s), s.to_str())
    return 0


def _read_input(args):
    path = args.input_opt or args.input
    if not path:
        raise ConfigError("op needs an input file")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def _check_field(fs, cfg_fs):
    if fs != cfg_fs:
        raise RingMismatchError(f"input is over F_{fs.q} {list(fs.modulus)}, config says F_{cfg_fs.q} {list(cfg_fs.modulus)}")


def _pair_from_json(obj, pi) -> Gamma0PairForm:
    parts = []
    for key in ("at_inf", "at_zero"):
        _, p, s = series_from_json(obj[key])
        if p != pi.poly:
            raise ConfigError("pair expansions must carry the configured prime")
        parts.append(s if isinstance(s, ScaledSeries) else ScaledSeries(s, pi.poly, 0))
    return Gamma0PairForm(int(obj["k"]), int(obj["l"]), parts[0], parts[1], pi)


def _parse_input(obj, cfg_fs, pi, op):
    """(pair, None) for a pair file, (None, series) for a series file."""
    if obj.get("kind") == "pair":
        if op not in ("trace", "norm-tilde"):
            raise ConfigError(f"{op} takes a series, not a pair")
        _check_field(field_from_json(obj), cfg_fs)
        return _pair_from_json(obj, pi), None
    fs, _, s = series_from_json(obj)
    _check_field(fs, cfg_fs)
    return None, (s.as_series() if isinstance(s, ScaledSeries) else s)


def cmd_op(args) -> int:
    cfg_fs = field_from_args(args)
    pi = prime_from_args(args, cfg_fs)
    obj = _read_input(args)
    if not isinstance(obj, dict):
        raise ConfigError("input must be a JSON object")
    try:
        pair, series = _parse_input(obj, cfg_fs, pi, args.op)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed input: {exc!r}") from None
    extra = {}
    if args.op in ("up", "up-oracle", "vp", "norm-product"):
        if series is None:
            raise ConfigError(f"{args.op} needs a series input")
        if args.op == "up":
            out = up_direct(series, pi)
        elif args.op == "up-oracle":
            out = up_oracle_newton(series, pi)
        elif args.op == "vp":
            out = vp_op(series, pi, args.prec)
        else:
            prec_out = args.prec_out or args.prec
            if prec_out is None:
                raise ConfigError("norm-product needs --prec-out")
            out = norm_product(series, pi, prec_out)
    else:
        if pair is None:
            if args.k is None:
                raise ConfigError(f"{args.op} on a plain series needs --k (the weight)")
            F = Gl2aForm(args.k, args.l, series)
            pair = lift_by_vp(F, pi) if args.op == "trace" else fricke_eigen_fixture(F, pi)
            extra["lifted"] = "F|V_p" if args.op == "trace" else "F + pi^(k/2) F|V_p"
        if args.op == "trace":
            out = trace_pair(pair)
        else:
            out, lam = norm_tilde(pair, args.alpha, args.prec_out)
            extra["rescaled_by"] = lam.to_str(cfg_fs)
    payload = series_to_json(out, pi)
    payload["op"] = args.op
    payload.update(extra)
    text = f"{out.to_str()}\nprecision: {out.prec}"
    _emit(args, payload, text)
    return 0


def _parse_rs(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"bad --r {text!r}") from None


def cmd_verify(args) -> int:
    fs = field_from_args(args)
    pi = None
    if args.deg is None and args.check != "conglemma":
        pi = prime_from_args(args, fs)
    cfg = CheckConfig(fs=fs, pi=pi, prec=args.prec, seed=args.seed, deg=args.deg,
                      max_n=args.max_n, n=args.n, r=_parse_rs(args.r), count=args.count, p=args.p)
    if args.p is not None and args.check == "conglemma":
        from .fields import _is_prime

        if not _is_prime(args.p):
            raise ConfigError(f"--p {args.p} is not prime")
    reports = run_check(args.check, cfg)
    reports.sort(key=lambda r: (r["pi"] or "", json.dumps(r["params"], sort_keys=True)))
    overall = aggregate(reports)
    payload = {"check": args.check, "verdict": overall, "cases": reports}
    lines = []
    for r in reports:
        head = [r["check"], f"q={r['q']}"] + ([f"pi={r['pi']}"] if r["pi"] else [])
        head += [f"{k}={v}" for k, v in r["params"].items()]
        tail = [f"valuation={r['valuation']}", f"bound={r['bound']}"] if r["valuation"] is not None else []
        lines.append(" ".join(head) + ": " + " ".join(tail + [r["verdict"]]))
    lines.append(f"overall: {overall}")
    _emit(args, payload, "\n".join(lines))
    return 1 if overall == "fail" else 0


COMMANDS = {"expand": cmd_expand, "op": cmd_op, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_prec(args)
        with _limits.using(_limits.Limits.from_env()):
            return COMMANDS[args.command](args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, DomainError, RingMismatchError, CarlitzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not our failure
        sys.stderr.close()
        return 0
    except Exception as exc:  # anything unexpected is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
