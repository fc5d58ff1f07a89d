"""Compiled noise kernels.

Kernels are specialized per gradient source: the variant code is forced to
a compile-time literal, so each variant gets its own machine code with the
hash inlined into the corner loop.  Points are processed in fixed blocks;
cell setup, each corner's contribution and the interpolation are separate
simple loops.  Every corner evaluates the full hash chain for its own
lattice point, as a per-fragment shader would.

Two entry points share the per-corner code: scattered points, and raster
grids (one coordinate vector per axis), which is what rendering uses.  For
the same coordinates both produce bit-identical values.
"""

import math

import numpy as np
from numba import literally, njit, types

from .gradient import GRAD2, GRAD3, PERM
from .hashes import MASK, TABLE_CODE, hash_word
from .trig import sin_word

BLOCK = 256
# fused multiply-add only; no reassociation or finite-math assumptions
FMA = {"contract"}


@njit(cache=True, fastmath=FMA, inline="always")
def _fade(t):
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


@njit(cache=True, fastmath=FMA, inline="always")
def _cell(x, period, inv):
    """(cell index mod period, fractional part) of one coordinate."""
    f = math.floor(x)
    m = f - period * math.floor(f * inv)
    m = m + period if m < 0.0 else m
    m = m - period if m >= period else m
    return np.int64(m), x - f


@njit(cache=True, fastmath=FMA, nogil=True)
def _cells(src, start, count, period, cell, frac):
    inv = 1.0 / period
    for i in range(count):
        c, f = _cell(src[start + i], period, inv)
        cell[i] = c
        frac[i] = f


@njit(cache=True, fastmath=FMA, inline="always")
def _wrap(c, period):
    return 0 if c == period else c


@njit(cache=True, fastmath=FMA, inline="always")
def _dot2(code, lx, ly, dx, dy):
    if code == TABLE_CODE:
        g = PERM[PERM[lx & 255] + (ly & 255)] % 8
        return GRAD2[g, 0] * dx + GRAD2[g, 1] * dy
    hx = hash_word(code, lx)
    hy = hash_word(code, (hx + ly) & MASK)
    return sin_word((hx + hy) & MASK) * dx + sin_word((hy + hy) & MASK) * dy


@njit(cache=True, fastmath=FMA, inline="always")
def _dot3(code, lx, ly, lz, dx, dy, dz):
    if code == TABLE_CODE:
        g = PERM[PERM[PERM[lx & 255] + (ly & 255)] + (lz & 255)] % 12
        return GRAD3[g, 0] * dx + GRAD3[g, 1] * dy + GRAD3[g, 2] * dz
    hx = hash_word(code, lx)
    hy = hash_word(code, (hx + ly) & MASK)
    hz = hash_word(code, (hy + lz) & MASK)
    return (sin_word((hz + hx) & MASK) * dx + sin_word((hz + hy) & MASK) * dy
            + sin_word((hz + hz) & MASK) * dz)


@njit(cache=True, fastmath=FMA, inline="always")
def _lerp2(s0, s1, s2, s3, u, v):
    # corner index is ox*2 + oy; blend along x first
    a = s0 + u * (s2 - s0)
    b = s1 + u * (s3 - s1)
    return a + v * (b - a)


@njit(cache=True, fastmath=FMA, inline="always")
def _lerp3(s, i, u, v, w):
    # corner index is ox*4 + oy*2 + oz; x first, then y, then z
    a00 = s[0, i] + u * (s[4, i] - s[0, i])
    a01 = s[1, i] + u * (s[5, i] - s[1, i])
    a10 = s[2, i] + u * (s[6, i] - s[2, i])
    a11 = s[3, i] + u * (s[7, i] - s[3, i])
    b0 = a00 + v * (a10 - a00)
    b1 = a01 + v * (a11 - a01)
    return b0 + w * (b1 - b0)


@njit(cache=True, fastmath=FMA, inline="always")
def _block2(code, cx, dx, cy, dy, period, s, out, start, m):
    for k in range(4):
        ox = k >> 1
        oy = k & 1
        sk = s[k]
        for i in range(m):
            sk[i] = _dot2(code, _wrap(cx[i] + ox, period), _wrap(cy[i] + oy, period),
                          dx[i] - ox, dy[i] - oy)
    for i in range(m):
        out[start + i] = _lerp2(s[0, i], s[1, i], s[2, i], s[3, i], _fade(dx[i]), _fade(dy[i]))


@njit(cache=True, fastmath=FMA, inline="always")
def _block3(code, cx, dx, cy, dy, cz, dz, period, s, out, start, m):
    for k in range(8):
        ox = k >> 2
        oy = (k >> 1) & 1
        oz = k & 1
        sk = s[k]
        for i in range(m):
            sk[i] = _dot3(code, _wrap(cx[i] + ox, period), _wrap(cy[i] + oy, period),
                          _wrap(cz[i] + oz, period), dx[i] - ox, dy[i] - oy, dz[i] - oz)
    for i in range(m):
        out[start + i] = _lerp3(s, i, _fade(dx[i]), _fade(dy[i]), _fade(dz[i]))


@njit(cache=True, fastmath=FMA, nogil=True)
def noise2(code, xs, ys, period, out):
    literally(code)
    fper = float(period)
    cx = np.empty(BLOCK, np.int64)
    cy = np.empty(BLOCK, np.int64)
    dx = np.empty(BLOCK)
    dy = np.empty(BLOCK)
    s = np.empty((4, BLOCK))
    n = xs.size
    for start in range(0, n, BLOCK):
        m = min(BLOCK, n - start)
        _cells(xs, start, m, fper, cx, dx)
        _cells(ys, start, m, fper, cy, dy)
        _block2(code, cx, dx, cy, dy, period, s, out, start, m)


@njit(cache=True, fastmath=FMA, nogil=True)
def noise3(code, xs, ys, zs, period, out):
    literally(code)
    fper = float(period)
    cx = np.empty(BLOCK, np.int64)
    cy = np.empty(BLOCK, np.int64)
    cz = np.empty(BLOCK, np.int64)
    dx = np.empty(BLOCK)
    dy = np.empty(BLOCK)
    dz = np.empty(BLOCK)
    s = np.empty((8, BLOCK))
    n = xs.size
    for start in range(0, n, BLOCK):
        m = min(BLOCK, n - start)
        _cells(xs, start, m, fper, cx, dx)
        _cells(ys, start, m, fper, cy, dy)
        _cells(zs, start, m, fper, cz, dz)
        _block3(code, cx, dx, cy, dy, cz, dz, period, s, out, start, m)


@njit(cache=True, fastmath=FMA, nogil=True)
def grid2(code, xs, ys, period, out):
    """out[j, i] = noise(xs[i], ys[j])."""
    literally(code)
    fper = float(period)
    w = xs.size
    cxs = np.empty(w, np.int64)
    dxs = np.empty(w)
    _cells(xs, 0, w, fper, cxs, dxs)
    cy = np.empty(BLOCK, np.int64)
    dy = np.empty(BLOCK)
    s = np.empty((4, BLOCK))
    inv = 1.0 / fper
    for j in range(ys.size):
        c, f = _cell(ys[j], fper, inv)
        cy[:] = c
        dy[:] = f
        row = out[j]
        for start in range(0, w, BLOCK):
            m = min(BLOCK, w - start)
            _block2(code, cxs[start:], dxs[start:], cy, dy, period, s, row, start, m)


@njit(cache=True, fastmath=FMA, nogil=True)
def grid3(code, xs, ys, z, period, out):
    """out[j, i] = noise(xs[i], ys[j], z)."""
    literally(code)
    fper = float(period)
    w = xs.size
    cxs = np.empty(w, np.int64)
    dxs = np.empty(w)
    _cells(xs, 0, w, fper, cxs, dxs)
    cy = np.empty(BLOCK, np.int64)
    dy = np.empty(BLOCK)
    cz = np.empty(BLOCK, np.int64)
    dz = np.empty(BLOCK)
    s = np.empty((8, BLOCK))
    inv = 1.0 / fper
    c, f = _cell(z, fper, inv)
    cz[:] = c
    dz[:] = f
    for j in range(ys.size):
        c, f = _cell(ys[j], fper, inv)
        cy[:] = c
        dy[:] = f
        row = out[j]
        for start in range(0, w, BLOCK):
            m = min(BLOCK, w - start)
            _block3(code, cxs[start:], dxs[start:], cy, dy, cz, dz, period, s, row, start, m)


_F64 = types.Array(types.float64, 1, "C")
_F64_2D = types.Array(types.float64, 2, "C")
_SIGNATURES = {
    noise2: (_F64, _F64, types.int64, _F64),
    noise3: (_F64, _F64, _F64, types.int64, _F64),
    grid2: (_F64, _F64, types.int64, _F64_2D),
    grid3: (_F64, _F64, types.float64, types.int64, _F64_2D),
}
_entries = {}


def _specialized(kernel, code):
    """Compiled entry point of *kernel* for one variant.

    Calling through the dispatcher would retype the whole kernel on every
    call before retrying with the literal code, so the entry point is
    resolved once and called directly.  Arguments must then match the
    signature exactly.
    """
    key = (kernel.py_func.__name__, code)
    entry = _entries.get(key)
    if entry is None:
        sig = (types.literal(int(code)),) + _SIGNATURES[kernel]
        kernel.compile(sig)
        entry = _entries[key] = kernel.overloads[sig].entry_point
    return entry


def evaluate(code, dim, coords, period, out=None):
    """Raw noise for ``coords`` of shape ``(n, dim)``; returns a length-n array."""
    n = coords.shape[0]
    if out is None:
        out = np.empty(n)
    axes = [np.ascontiguousarray(coords[:, a], dtype=np.float64) for a in range(dim)]
    kernel = noise2 if dim == 2 else noise3
    _specialized(kernel, code)(int(code), *axes, int(period), out)
    return out


def evaluate_grid(code, xs, ys, period, z=None):
    """Raw noise on the raster ``xs`` by ``ys`` (at depth *z* for 3D);
    returns shape ``(len(ys), len(xs))``."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.empty((ys.size, xs.size))
    if z is None:
        _specialized(grid2, code)(int(code), xs, ys, int(period), out)
    else:
        _specialized(grid3, code)(int(code), xs, ys, float(z), int(period), out)
    return out
