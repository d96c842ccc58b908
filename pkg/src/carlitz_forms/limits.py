"""Desk-scale caps on the expensive computations.

Defaults keep every routine in the seconds range.  They can be raised
through the ``CARLITZ_LIMITS`` environment variable, a comma separated
list of ``name=value`` pairs, e.g. ``CARLITZ_LIMITS="hayes_degree=200000"``.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace

from .errors import DomainError, LimitExceededError

ENV_VAR = "CARLITZ_LIMITS"


@dataclass(frozen=True)
class Limits:
    # max n for partitions_of and the transition tables
    partition_size: int = 20
    # max q^(n d) for the Hayes quotient check
    hayes_degree: int = 3**10
    # max index M for the Goss polynomial table
    goss_index: int = 4096
    # max precision of any fixture expansion
    series_prec: int = 4000
    # max y-degree of the truncated input to norm_product
    norm_degree: int = 2000

    def check(self, name: str, value: int) -> None:
        cap = getattr(self, name)
        if value > cap:
            raise LimitExceededError(
                f"{name}={value} exceeds the configured limit {cap} "
                f"(raise it via {ENV_VAR})"
            )

    @classmethod
    def from_env(cls, environ=None) -> "Limits":
        raw = (os.environ if environ is None else environ).get(ENV_VAR, "")
        return cls.parse(raw)

    @classmethod
    def parse(cls, raw: str) -> "Limits":
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in filter(None, (s.strip() for s in raw.split(","))):
            name, sep, value = item.partition("=")
            name = name.strip()
            if not sep or name not in known:
                raise DomainError(f"bad {ENV_VAR} entry {item!r}")
            try:
                updates[name] = int(value)
            except ValueError:
                raise DomainError(f"bad {ENV_VAR} value {item!r}") from None
        return replace(cls(), **updates)


_current: Limits | None = None


def current() -> Limits:
    """The active limits; read from the environment on first use."""
    global _current
    if _current is None:
        _current = Limits.from_env()
    return _current


def set_limits(limits: Limits | None) -> None:
    """Install ``limits`` (None means: re-read the environment on next use)."""
    global _current
    _current = limits


@contextmanager
def using(limits: Limits):
    global _current
    saved = _current
    _current = limits
    try:
        yield limits
    finally:
        _current = saved
