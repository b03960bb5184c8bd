"""Exact-or-magnitude arithmetic for the constant pipeline.

Values stay exact Python ints while they fit in EXACT_DIGITS decimal digits.
Beyond that they become Mag(h, x), a deterministic power-tower surrogate
meaning 10^10^...^x with h tens.  Normalisation keeps the tower levels
totally ordered: a Mag(1, x) has x in [EXACT_DIGITS, TOWER_STEP) and every
higher level has x in [12, TOWER_STEP), so comparing (h, x) pairs compares
values.  Addition absorbs an operand once it cannot move the leading digits;
all operations are deterministic and monotone, which is what the constant
tower needs (the honest constants stop being materialisable almost
immediately, so only ordering and rough magnitude carry information there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EXACT_DIGITS = 8000.0
TOWER_STEP = 1e12
_LOG10_2 = math.log10(2)
_LOG10_E = math.log10(math.e)


@dataclass(frozen=True)
class Mag:
    """10^10^...^x with h tens; ordered lexicographically by (h, x)."""

    h: int
    x: float

    def __post_init__(self):
        if self.h < 1 or not math.isfinite(self.x):
            raise ValueError("bad magnitude")

    def __repr__(self):
        return "~10^" * self.h + f"{self.x:.6g}"


Value = int | Mag


def log10_int(v: int) -> float:
    """Deterministic log10 of a positive int of any size."""
    if v <= 0:
        raise ValueError("log of non-positive value")
    bl = v.bit_length()
    if bl <= 53:
        return math.log10(v)
    top = v >> (bl - 53)
    return math.log10(top) + (bl - 53) * _LOG10_2


def _mag(h: int, x: float) -> Mag:
    # normalise: push big exponents up a level, fold small towers down
    while x >= TOWER_STEP:
        x = math.log10(x)
        h += 1
    while h > 1 and x < 12:
        x = 10.0 ** x
        h -= 1
    if h == 1 and x < EXACT_DIGITS:
        x = EXACT_DIGITS  # floor: Mag never dips below the exact tier
    return Mag(h, x)


def promote(v: Value) -> Value:
    if isinstance(v, int):
        if v.bit_length() * _LOG10_2 > EXACT_DIGITS:
            return _mag(1, log10_int(v))
        return v
    return v


def v_cmp(a: Value, b: Value) -> int:
    if isinstance(a, int) and isinstance(b, int):
        return (a > b) - (a < b)
    if isinstance(a, int):
        return -1
    if isinstance(b, int):
        return 1
    ka, kb = (a.h, a.x), (b.h, b.x)
    return (ka > kb) - (ka < kb)


def v_le(a: Value, b: Value) -> bool:
    return v_cmp(a, b) <= 0


def v_max(*vals: Value) -> Value:
    out = vals[0]
    for v in vals[1:]:
        if v_cmp(v, out) > 0:
            out = v
    return out


def v_add(a: Value, b: Value) -> Value:
    if isinstance(a, int) and isinstance(b, int):
        if a < 0 or b < 0:
            raise ValueError("pipeline values are non-negative")
        return promote(a + b)
    if isinstance(a, int):
        a, b = b, a
    if isinstance(b, int):
        return a  # ints stay below the magnitude tier: absorbed
    hi, lo = (a, b) if v_cmp(a, b) >= 0 else (b, a)
    if hi.h == lo.h == 1 and hi.x - lo.x < 15:
        return _mag(1, hi.x + math.log10(1 + 10 ** (lo.x - hi.x)))
    return hi  # the smaller operand cannot move the leading digits


def v_mul(a: Value, b: Value) -> Value:
    if isinstance(a, int) and isinstance(b, int):
        return promote(a * b)
    if a == 0 or b == 0:
        return 0
    la = _as_log(a)
    lb = _as_log(b)
    return _exp10(_log_add(la, lb))


def _as_log(v: Value) -> float | Mag:
    """log10 of a value: a float when it fits, else a Mag one level down."""
    if isinstance(v, int):
        return log10_int(v)
    if v.h == 1:
        return v.x
    return Mag(v.h - 1, v.x)


def _log_add(la: float | Mag, lb: float | Mag):
    if isinstance(la, Mag) and isinstance(lb, Mag):
        return la if v_cmp(la, lb) >= 0 else lb
    if isinstance(la, Mag):
        return la
    if isinstance(lb, Mag):
        return lb
    return la + lb


def _exp10(l: float | Mag) -> Value:
    if isinstance(l, Mag):
        return _mag(l.h + 1, l.x)
    return _mag(1, l)


def v_pow2(e: Value) -> Value:
    """2**e for possibly huge exponents."""
    if isinstance(e, int):
        if e * _LOG10_2 <= EXACT_DIGITS:
            return 1 << e
        return _mag(1, e * _LOG10_2)
    if e.h == 1:
        return _mag(2, e.x + math.log10(_LOG10_2))
    return _mag(e.h + 1, e.x)


def v_factorial(n: Value) -> Value:
    if isinstance(n, int):
        if n < 2:
            return 1
        lgn = log10_int(n)
        if lgn < 14:
            est = n * (lgn - _LOG10_E)
            if est <= EXACT_DIGITS:
                return promote(math.factorial(n))
            return _mag(1, math.lgamma(n + 1) / math.log(10))
        # log10(n!) ~ n (log10 n - log10 e); represent its own log10
        return _mag(2, lgn + math.log10(max(lgn - _LOG10_E, 1.0)))
    if n.h == 1:
        return _mag(2, n.x + math.log10(max(n.x, 1.0)))
    return _mag(n.h + 1, n.x)


def v_binomial(n: Value, k: Value) -> Value:
    """C(n, k) for k <= n; exact while it fits, else magnitude (n >> k here)."""
    if isinstance(n, int) and isinstance(k, int):
        if k < 0 or k > n:
            return 0
        k = min(k, n - k)
        if k == 0:
            return 1
        per = log10_int(n) - log10_int(k) + _LOG10_E
        if k.bit_length() < 900 and k * per <= EXACT_DIGITS:
            return promote(math.comb(n, k))
        if n.bit_length() < 50:
            lg = (math.lgamma(n + 1) - math.lgamma(k + 1)
                  - math.lgamma(n - k + 1)) / math.log(10)
            return _mag(1, lg)
        if log10_int(k) + math.log10(max(per, 1.0)) < 300:  # k * per fits a float
            return _mag(1, k * per)
        return _mag(2, log10_int(k) + math.log10(max(per, 1.0)))
    # magnitude tier: dominated by n^k (here n is a Mag whenever k is)
    if isinstance(k, Mag) and isinstance(n, int):
        return 0  # k exceeds any exact-tier n
    ln = _as_log(n)
    if isinstance(k, int):
        if isinstance(ln, Mag):
            return _exp10(ln)  # k factors cannot move a tower-level log
        if log10_int(k) + math.log10(max(ln, 1.0)) < 300:
            return _exp10(k * ln)
        return _mag(2, log10_int(k) + math.log10(max(ln, 1.0)))
    return _exp10(_log_mul(k, ln))


def _log_mul(k: Value, ln: float | Mag):
    """k * ln as a log-domain quantity."""
    if isinstance(ln, Mag):
        return ln
    if isinstance(k, int):
        if log10_int(k) + math.log10(max(ln, 1.0)) < 300:
            return k * ln
        return Mag(1, log10_int(k) + math.log10(max(ln, 1.0)))
    if k.h == 1:
        return Mag(1, k.x + math.log10(max(ln, 1.0)))
    return Mag(k.h, k.x)


def format_value(v: Value) -> str:
    """Exact digits for small ints, digit-count scientific form otherwise."""
    if isinstance(v, int):
        if v.bit_length() * _LOG10_2 <= 40:
            return str(v)
        lg = log10_int(v)
        return f"~10^{lg:.6g} ({int(lg) + 1} digits)"
    return repr(v)
