"""Opt-in cross-checking of fast paths against the brute-force oracles.

When enabled (``DISLOFIX_CROSSCHECK=1`` or :func:`enable`), every Hausdorff,
M_T and N_S evaluation is recomputed by :mod:`dislofix.oracle` and must match
exactly.  The test suite turns this on globally.
"""

import os

_state = {"on": os.environ.get("DISLOFIX_CROSSCHECK", "") not in ("", "0"), "count": 0}


class OracleMismatch(AssertionError):
    pass


def enabled() -> bool:
    return _state["on"]


def enable(flag: bool = True) -> bool:
    prev = _state["on"]
    _state["on"] = flag
    return prev


def count() -> int:
    return _state["count"]


def compare(what, fast, slow):
    _state["count"] += 1
    if fast != slow:
        raise OracleMismatch(f"{what}: fast path {fast!r} != oracle {slow!r}")
