"""JSON encodings of polynomials, series, pair forms and reports.

Polynomials are low-to-high lists of F_p digit vectors, e.g. T^2 + 1 over
F_3 is ``[[1], [0], [1]]``.  A series is

    {"q", "p_char", "fq_modulus", "pi", "prec", "scale_e", "ring",
     "coeffs": [{"num": poly, "den": poly}, ...]}

Valuations are strings such as ``"3/2"`` or ``"inf"``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .fields import INF, FieldSpec, RationalFunction, get_field
from .series import ScaledSeries, TruncatedSeries


def valuation_str(v) -> str:
    if v == INF:
        return "inf"
    return str(Fraction(v))


def parse_valuation(s: str):
    return INF if s == "inf" else Fraction(s)


def poly_to_json(f, fs: FieldSpec) -> list:
    return fs.poly_digits(f)


def poly_from_json(rows, fs: FieldSpec):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise DomainError("a polynomial must be a list of digit vectors")
    return fs.poly_from_digits(rows)


def field_header(fs: FieldSpec, pi=None) -> dict:
    return {
        "q": fs.q,
        "p_char": fs.p,
        "fq_modulus": list(fs.modulus),
        "pi": None if pi is None else poly_to_json(getattr(pi, "poly", pi), fs),
    }


def series_to_json(s, pi=None) -> dict:
    """Encode a TruncatedSeries (scale_e = 0) or a ScaledSeries."""
    if isinstance(s, ScaledSeries):
        body, e, pi = s.body, s.e, s.pi
    else:
        body, e = s, 0
    fs = body.fs
    out = field_header(fs, pi)
    out.update({
        "prec": body.prec,
        "scale_e": e,
        "ring": body.ring,
        "coeffs": [
            {"num": poly_to_json(c.num, fs), "den": poly_to_json(c.den, fs)}
            for c in (body.rcoeff(i) for i in range(body.prec))
        ],
    })
    return out


def field_from_json(obj: dict) -> FieldSpec:
    try:
        p, q = int(obj["p_char"]), int(obj["q"])
        modulus = tuple(int(x) for x in obj["fq_modulus"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"bad field header: {exc}") from None
    e = len(modulus) - 1
    if e < 1 or p**e != q:
        raise DomainError(f"q={q} does not match p_char={p} and the modulus degree")
    return get_field(p, e, None if e == 1 else modulus)


def series_from_json(obj: dict):
    """Decode to (fs, pi poly or None, series).

    The series is a ScaledSeries when it carries a half power of pi
    (scale_e = 1), otherwise a TruncatedSeries in its stated ring.
    """
    fs = field_from_json(obj)
    pi = obj.get("pi")
    pi = None if pi is None else poly_from_json(pi, fs)
    try:
        prec = int(obj["prec"])
        e = int(obj.get("scale_e", 0))
        raw = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"bad series object: {exc}") from None
    if len(raw) > prec:
        raise DomainError("more coefficients than the stated precision")
    coeffs = []
    for c in raw:
        num = poly_from_json(c["num"], fs)
        den = poly_from_json(c.get("den", [[1]]), fs)
        if den.is_zero():
            raise DomainError("zero denominator")
        coeffs.append(RationalFunction(num, den))
    ring = obj.get("ring")
    if ring is None:
        ring = "A" if all(c.is_integral() for c in coeffs) else "K"
    body = TruncatedSeries(fs, coeffs, prec, ring)
    if e not in (0, 1):
        raise DomainError("scale_e must be 0 or 1")
    if not e:
        return fs, pi, body
    if pi is None:
        raise DomainError("a half power of pi needs a prime")
    return fs, pi, ScaledSeries(body, pi, e)


def pair_to_json(f) -> dict:
    out = field_header(f.fs, f.pi)
    out.update({
        "kind": "pair",
        "k": f.k,
        "l": f.l,
        "at_inf": series_to_json(f.at_inf),
        "at_zero": series_to_json(f.at_zero),
    })
    if f.note:
        out["provenance"] = {"construction": f.note, "literature_flag": f.literature}
    return out


def form_to_json(F) -> dict:
    out = series_to_json(F.series)
    out.update({"kind": "form", "k": F.k, "l": F.l})
    if F.note:
        out["provenance"] = {"construction": F.note, "literature_flag": F.literature}
    return out


def report_to_json(check: str, fs: FieldSpec, pi, params: dict, valuation, bound, verdict: str) -> dict:
    return {
        "check": check,
        "q": fs.q,
        "pi": None if pi is None else fs.poly_str(getattr(pi, "poly", pi)),
        "params": params,
        "valuation": None if valuation is None else valuation_str(valuation),
        "bound": None if bound is None else valuation_str(bound),
        "verdict": verdict,
    }
