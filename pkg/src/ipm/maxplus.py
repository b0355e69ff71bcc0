"""Max-plus semiring arithmetic on the extended reals R u {-inf}.

Scalars are plain floats.  BOTTOM (= -inf) is the additive identity and
is absorbing for multiplication; +inf and NaN are never valid scalars.
"""

from __future__ import annotations

import math

BOTTOM = float("-inf")
UNIT = 0.0

LN2 = math.log(2.0)
LN3 = math.log(3.0)


def is_scalar(v: float) -> bool:
    """True for finite reals and BOTTOM; false for +inf and NaN."""
    return v == BOTTOM or (not math.isinf(v) and not math.isnan(v))


def check_scalar(v: float) -> float:
    if not is_scalar(v):
        raise ValueError(f"not a max-plus scalar: {v!r}")
    return v


def oplus(a: float, b: float) -> float:
    """Tropical addition: max.  BOTTOM is the identity."""
    return a if a >= b else b


def odot(a: float, b: float) -> float:
    """Tropical multiplication: +.  0 is the identity, BOTTOM absorbs."""
    # With +inf excluded, float addition already gives BOTTOM + x = BOTTOM.
    return a + b


def ln_coeffs(t: float) -> tuple[float, float]:
    """Normalized log-coefficient pair (a, b) for the interval homotopies.

    a = ln((1-t)/t) clipped at 0, b = ln(t/(1-t)) clipped at 0, so that
    a oplus b == 0 exactly.  t=0 gives (0, BOTTOM); t=1 gives (BOTTOM, 0).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0,1], got {t!r}")
    if t == 0.0:
        return UNIT, BOTTOM
    if t == 1.0:
        return BOTTOM, UNIT
    # difference of logs: the quotient (1-t)/t can overflow for tiny t
    q = math.log1p(-t) - math.log(t)
    return min(0.0, q), min(0.0, -q)


def ln_coeffs_literal(t: float) -> tuple[float, float]:
    """Same pair computed from the unsimplified max-of-logs expressions.

    Kept as the cross-check for ln_coeffs; not used by the homotopies.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0,1], got {t!r}")
    log_t = math.log(t) if t > 0.0 else BOTTOM
    log_1mt = math.log(1.0 - t) if t < 1.0 else BOTTOM
    m = oplus(log_t, log_1mt)
    a = log_1mt - m if log_1mt != BOTTOM else BOTTOM
    b = log_t - m if log_t != BOTTOM else BOTTOM
    return a, b
