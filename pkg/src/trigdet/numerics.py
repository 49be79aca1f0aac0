"""Precision policy and numeric comparison helpers.

Every transcendental quantity in this package (pi, trig values, digamma
sums, determinants) is an mpmath arbitrary-precision number computed under
an explicitly requested binary precision.  The floor is 64 bits; the
default working precision is 512 bits and can be overridden with the
TRIGDET_PREC_BITS environment variable.  Values are immutable snapshots:
they keep their full mantissa once created, and all arithmetic on them is
performed inside a `with_precision` block at least as wide as the floor.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from functools import lru_cache

from mpmath import mp, mpf

MIN_PRECISION_BITS = 64
DEFAULT_PRECISION_BITS = 512
PRECISION_ENV_VAR = "TRIGDET_PREC_BITS"


def _check_bits(bits) -> None:
    if not isinstance(bits, int) or isinstance(bits, bool) or bits < MIN_PRECISION_BITS:
        raise ValueError(
            f"precision must be an integer >= {MIN_PRECISION_BITS} bits, got {bits!r}"
        )


def working_precision() -> int:
    """Default precision in bits, honoring the TRIGDET_PREC_BITS override."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw.strip())
    except ValueError as exc:
        raise ValueError(
            f"{PRECISION_ENV_VAR} must be a decimal integer, got {raw!r}"
        ) from exc
    _check_bits(bits)
    return bits


@contextmanager
def with_precision(bits: int):
    """Run a block with every mpmath operation rounded at `bits` precision.

    mpmath's elementary functions (and digamma) are accurate to within a
    couple of units in the last place at the active precision, which is the
    contract the rest of the package relies on.
    """
    _check_bits(bits)
    with mp.workprec(bits):
        yield mp


def agree_within(a, b, rel_tol, abs_tol) -> bool:
    """True iff |a - b| <= abs_tol + rel_tol * max(|a|, |b|)."""
    if rel_tol < 0 or abs_tol < 0:
        raise ValueError("tolerances must be nonnegative")
    if rel_tol == 0 and abs_tol == 0:
        raise ValueError("at least one tolerance must be positive")
    return abs(a - b) <= abs_tol + rel_tol * max(abs(a), abs(b))


def recognize_integer(x, tol):
    """round(x) if x is within tol of an integer, else None.  Requires tol < 1/2."""
    if not tol < 0.5:
        raise ValueError(f"integer recognition needs tol < 0.5, got {tol}")
    nearest = int(mp.nint(x))
    if abs(x - nearest) <= tol:
        return nearest
    return None


def relative_error(a, b):
    """|a - b| / max(|a|, |b|), with 0 when both vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return mpf(0)
    return abs(a - b) / scale


def decimal_str(x, digits: int = 40) -> str:
    """Deterministic decimal rendering used for reports and CLI output."""
    return mp.nstr(x, digits, strip_zeros=True)


# Shared trigonometric tables.  Matrix entries and character sums only ever
# evaluate trig functions at rational multiples of pi with a small fixed
# denominator, so each (denominator, precision) pair is computed once.

@lru_cache(maxsize=None)
def sec_2pi_table(n: int, bits: int):
    """sec(2*pi*r/n) for r = 0..n-1.  Pole-free for odd n."""
    with with_precision(bits):
        step = 2 * mp.pi / n
        return tuple(mp.sec(step * r) for r in range(n))


@lru_cache(maxsize=None)
def csc_2pi_table(n: int, bits: int):
    """csc(2*pi*r/n) for r = 1..n-1 (index 0 is the pole, stored as None)."""
    with with_precision(bits):
        step = 2 * mp.pi / n
        return (None,) + tuple(mp.csc(step * r) for r in range(1, n))


@lru_cache(maxsize=None)
def cot_pi_table(n: int, bits: int):
    """cot(pi*j/n) for j = 1..n-1 (index 0 stored as None)."""
    with with_precision(bits):
        step = mp.pi / n
        return (None,) + tuple(mp.cot(step * j) for j in range(1, n))


@lru_cache(maxsize=None)
def tan_pi_table(n: int, bits: int):
    """tan(pi*j/n) for j = 1..n-1; the pole at j = n/2 is stored as None."""
    with with_precision(bits):
        step = mp.pi / n
        vals = [None]
        for j in range(1, n):
            vals.append(None if 2 * j == n else mp.tan(step * j))
        return tuple(vals)
