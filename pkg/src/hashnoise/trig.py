"""Sine of signed 32-bit integers, in radians, at double precision.

libm's ``sin`` falls into its slow Payne-Hanek path for arguments above
~1e8, which is most of the int32 range and would make the sine dominate
every noise evaluation.  Integer arguments allow a cheaper exact route:

* reduce modulo pi/2 with a four-part Cody-Waite split; the first three
  parts have at most 22 significant bits, so ``q * part`` is exact for
  every ``|q| < 2**31``, and the third subtraction is carried as a
  double-double,
* evaluate the fdlibm sin/cos kernels on the reduced pair and pick one by
  quadrant without branching.

The result is within 1 ulp of a correctly rounded sine for all int32
inputs (checked against ``math.sin`` and mpmath in the tests).
"""

import numpy as np
from numba import njit

# pi/2 split into 21, 21, 22 significant bits, then the remainder
_PIO2_1 = float.fromhex("0x1.921fb00000000p+0")
_PIO2_2 = float.fromhex("0x1.5110b00000000p-22")
_PIO2_3 = float.fromhex("0x1.1846980000000p-44")
_PIO2_4 = float.fromhex("0x1.3198a2e037073p-69")
_INV_PIO2 = float.fromhex("0x1.45f306dc9c883p-1")

# fused multiply-add only, matching the noise kernels
FMA = {"contract"}

# fdlibm k_sin.c / k_cos.c minimax coefficients
_S1 = -1.66666666666666324348e-01
_S2 = 8.33333333332248946124e-03
_S3 = -1.98412698298579493134e-04
_S4 = 2.75573137070700676789e-06
_S5 = -2.50507602534068634195e-08
_S6 = 1.58969099521155010221e-10
_C1 = 4.16666666666666019037e-02
_C2 = -1.38888888888741095749e-03
_C3 = 2.48015872894767294178e-05
_C4 = -2.75573143513906633035e-07
_C5 = 2.08757232129817482790e-09
_C6 = -1.13596475577881948265e-11


@njit(cache=True, fastmath=FMA, inline="always")
def sin_word(w):
    """sin of the 32-bit word *w* (int64 in [0, 2**32)) read as a signed int."""
    n = float((w ^ 0x80000000) - 0x80000000)
    q = np.rint(n * _INV_PIO2)
    r = (n - q * _PIO2_1) - q * _PIO2_2
    b = -q * _PIO2_3
    s = r + b
    bb = s - r
    e = (r - (s - bb)) + (b - bb)
    t = e - q * _PIO2_4
    x = s + t
    y = t - (x - s)

    z = x * x
    w2 = z * z
    rs = _S2 + z * (_S3 + z * _S4) + z * w2 * (_S5 + z * _S6)
    v = z * x
    sv = x - ((z * (0.5 * y - v * rs) - y) - v * _S1)
    rc = z * (_C1 + z * (_C2 + z * _C3)) + w2 * w2 * (_C4 + z * (_C5 + z * _C6))
    hz = 0.5 * z
    c0 = 1.0 - hz
    cv = c0 + (((1.0 - c0) - hz) + (z * rc - x * y))

    quadrant = np.int64(q)
    res = cv if quadrant & 1 else sv
    return -res if quadrant & 2 else res


@njit(cache=True, fastmath=FMA, nogil=True)
def sin_words(src, dst, count):
    for i in range(count):
        dst[i] = sin_word(src[i])


def sin_int32(values):
    """Elementwise sine of int32-representable integers; float64 output."""
    arr = np.asarray(values)
    if arr.dtype.kind not in "iu":
        raise TypeError(f"expected integers, got {arr.dtype}")
    if arr.size and (arr.min() < -(1 << 31) or arr.max() >= (1 << 31)):
        raise ValueError("arguments must fit in a signed 32-bit integer")
    words = np.ascontiguousarray(arr.astype(np.int64).ravel() & 0xFFFFFFFF)
    out = np.empty(words.size)
    sin_words(words, out, words.size)
    return out.reshape(arr.shape)
