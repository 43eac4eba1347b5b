"""Rational arithmetic backend.

The whole library computes with exact rationals.  Two interchangeable
backends are supported:

* ``gmpy2.mpq`` -- compiled, much faster on the axiom/closure-law loops;
* ``fractions.Fraction`` -- pure Python fallback.

The backend is selected once at import time.  Set ``EVSLAB_BACKEND=pure``
to force the Fraction fallback (used by the benchmark and the test that
exercises both code paths).
"""

import math
import os

_forced = os.environ.get("EVSLAB_BACKEND", "").lower()

if _forced in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Rat  # type: ignore

        BACKEND = "gmpy2"
    except ImportError:
        if _forced == "gmpy2":
            raise
        from fractions import Fraction as Rat

        BACKEND = "pure"
elif _forced == "pure":
    from fractions import Fraction as Rat

    BACKEND = "pure"
else:
    raise RuntimeError(f"unknown EVSLAB_BACKEND={_forced!r}")


def rat(num, den=1):
    """Exact rational from integers (or pass a Rat through unchanged)."""
    return Rat(num, den)


ZERO = rat(0)
ONE = rat(1)


def rat_str(q) -> str:
    """Render as ``p`` or ``p/q`` (no spaces); inverse of :func:`rat_parse`."""
    n, d = q.numerator, q.denominator
    if d == 1:
        return str(int(n))
    return f"{int(n)}/{int(d)}"


def rat_parse(text: str):
    """Parse ``p`` or ``p/q`` into an exact rational."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Rat(int(p), int(q))
    return Rat(int(text))


def rat_sqrt(q):
    """Exact square root of a non-negative rational, or None if irrational."""
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Rat(rn, rd)
