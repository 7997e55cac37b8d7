"""Scalar helpers that work for both ``complex`` and mpmath ``mpc`` values.

Double precision is the default. Deep orbits (pull-backs of loops, long
push-forwards) need an unbounded exponent and, when the orbit passes through
cancellation, extra mantissa bits; mpmath numbers carry both, and arithmetic on
them stays in the precision of the context that created them.
"""

from __future__ import annotations

import cmath
import math

import mpmath
from mpmath.ctx_mp_python import _mpc, _mpf

# every context (including private ones) derives its number types from these
MPNumber = (_mpf, _mpc)


def is_mp(v) -> bool:
    return isinstance(v, MPNumber)


def mp_context(bits: int) -> mpmath.ctx_mp.MPContext:
    """A private mpmath context, so no global precision is touched."""
    ctx = mpmath.MPContext()
    ctx.prec = max(53, int(bits))
    return ctx


def extended(v, ctx=None):
    """Lift a scalar into extended-exponent arithmetic (53-bit mantissa by default)."""
    ctx = ctx or mp_context(53)
    return ctx.mpc(v)


def to_complex(v) -> complex:
    if is_mp(v):
        return complex(v)
    return complex(v)


def log_abs(v) -> float:
    """log|v| as a float; finite for any nonzero mp value regardless of exponent."""
    if is_mp(v):
        return float(v.context.log(abs(v)))
    return math.log(abs(v))


def arg(v) -> float:
    if is_mp(v):
        return float(v.context.arg(v))
    return cmath.phase(v)


def principal_log(v) -> complex:
    """Principal branch of log v, returned as a Python complex."""
    if is_mp(v):
        return complex(v.context.log(v))
    return cmath.log(v)


def is_finite(v) -> bool:
    if is_mp(v):
        return bool(v.context.isfinite(v))
    return cmath.isfinite(v)


def bits_of(v) -> int:
    """Mantissa precision the value carries (53 for plain floats)."""
    if is_mp(v):
        return v.context.prec
    return 53


def real_to_text(r) -> str:
    """Decimal text for an mp real with enough digits to round-trip its precision."""
    ctx = r.context
    return ctx.nstr(r, int(ctx.prec * 0.30103) + 3)
