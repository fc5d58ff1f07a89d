"""Lattice gradients: hash-chained (table free) and the classic table baseline."""

import math

import numpy as np

from .hashes import MASK, HashVariant, hash_words
from .trig import sin_words

# Ken Perlin's reference permutation, doubled so T[T[x] + y] never overflows.
PERLIN_PERMUTATION = (
    151, 160, 137, 91, 90, 15, 131, 13, 201, 95, 96, 53, 194, 233, 7, 225,
    140, 36, 103, 30, 69, 142, 8, 99, 37, 240, 21, 10, 23, 190, 6, 148,
    247, 120, 234, 75, 0, 26, 197, 62, 94, 252, 219, 203, 117, 35, 11, 32,
    57, 177, 33, 88, 237, 149, 56, 87, 174, 20, 125, 136, 171, 168, 68, 175,
    74, 165, 71, 134, 139, 48, 27, 166, 77, 146, 158, 231, 83, 111, 229, 122,
    60, 211, 133, 230, 220, 105, 92, 41, 55, 46, 245, 40, 244, 102, 143, 54,
    65, 25, 63, 161, 1, 216, 80, 73, 209, 76, 132, 187, 208, 89, 18, 169,
    200, 196, 135, 130, 116, 188, 159, 86, 164, 100, 109, 198, 173, 186, 3, 64,
    52, 217, 226, 250, 124, 123, 5, 202, 38, 147, 118, 126, 255, 82, 85, 212,
    207, 206, 59, 227, 47, 16, 58, 17, 182, 189, 28, 42, 223, 183, 170, 213,
    119, 248, 152, 2, 44, 154, 163, 70, 221, 153, 101, 155, 167, 43, 172, 9,
    129, 22, 39, 253, 19, 98, 108, 110, 79, 113, 224, 232, 178, 185, 112, 104,
    218, 246, 97, 228, 251, 34, 242, 193, 238, 210, 144, 12, 191, 179, 162, 241,
    81, 51, 145, 235, 249, 14, 239, 107, 49, 192, 214, 31, 181, 199, 106, 157,
    184, 84, 204, 176, 115, 121, 50, 45, 127, 4, 150, 254, 138, 236, 205, 93,
    222, 114, 67, 29, 24, 72, 243, 141, 128, 195, 78, 66, 215, 61, 156, 180,
)
PERM = np.array(PERLIN_PERMUTATION * 2, dtype=np.int64)
PERM.flags.writeable = False

_D = math.sqrt(2.0) / 2.0
GRAD2 = np.array(
    [(1, 0), (-1, 0), (0, 1), (0, -1), (_D, _D), (-_D, _D), (_D, -_D), (-_D, -_D)],
    dtype=np.float64,
)
# cube edge midpoints, left unnormalized
GRAD3 = np.array(
    [
        (1, 1, 0), (-1, 1, 0), (1, -1, 0), (-1, -1, 0),
        (1, 0, 1), (-1, 0, 1), (1, 0, -1), (-1, 0, -1),
        (0, 1, 1), (0, -1, 1), (0, 1, -1), (0, -1, -1),
    ],
    dtype=np.float64,
)
GRAD2.flags.writeable = False
GRAD3.flags.writeable = False
GRAD_TABLES = {2: GRAD2, 3: GRAD3}


def _lattice(p, dim=None):
    p = np.asarray(p)
    if p.dtype.kind not in "iu":
        raise TypeError(f"lattice coordinates must be integers, got {p.dtype}")
    if dim is not None and p.shape[-1:] != (dim,):
        raise ValueError(f"expected {dim} lattice coordinates, got shape {p.shape}")
    if p.shape[-1:] not in ((2,), (3,)):
        raise ValueError(f"lattice points must be 2D or 3D, got shape {p.shape}")
    return p


def _hash(code, words):
    out = np.empty_like(words)
    hash_words(code, words, out, words.size)
    return out


def _sin(words):
    out = np.empty(words.size)
    sin_words(words, out, words.size)
    return out


def hash_chain(variant, p):
    """Chain the hash through the coordinates of *p*.

    Returns one array of 32-bit words per axis: ``h0 = H(p0)``,
    ``h1 = H(h0 + p1)``, ``h2 = H(h1 + p2)``, additions wrapping.
    """
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        raise ValueError("variant has no scalar hash")
    p = _lattice(p)
    flat = p.reshape(-1, p.shape[-1]).astype(np.int64) & MASK
    out = []
    prev = 0
    for axis in range(flat.shape[1]):
        prev = _hash(variant.code, np.ascontiguousarray((flat[:, axis] + prev) & MASK))
        out.append(prev)
    return [h.reshape(p.shape[:-1]) for h in out]


def hash_gradient(variant, p):
    """Gradients for integer lattice points *p* of shape ``(..., dim)``.

    2D: ``sin(x + y), sin(y + y)``; 3D: ``sin(z + x), sin(z + y), sin(z + z)``
    where x, y, z are the chained hashes read as signed ints.
    """
    h = hash_chain(variant, p)
    if len(h) == 2:
        pairs = [(h[0], h[1]), (h[1], h[1])]
    else:
        pairs = [(h[2], h[0]), (h[2], h[1]), (h[2], h[2])]
    comps = [_sin(np.ascontiguousarray((a + b) & MASK).ravel()).reshape(a.shape) for a, b in pairs]
    return np.stack(comps, axis=-1)


def hash_gradient_2d(variant, p):
    return hash_gradient(variant, _lattice(p, 2))


def hash_gradient_3d(variant, p):
    return hash_gradient(variant, _lattice(p, 3))


def table_permute(p, table=None):
    """Classic permutation-table hash of a 2D or 3D lattice point, in [0, 255].

    3D: ``T[T[T[x] + y] + z]``; 2D drops the last stage.  Coordinates are
    reduced mod 256 first.  *table* is a 256-entry permutation, Ken Perlin's
    by default.
    """
    if table is None:
        doubled = PERM
    else:
        t = np.asarray(table, dtype=np.int64)
        if t.shape != (256,) or not np.array_equal(np.sort(t), np.arange(256)):
            raise ValueError("table must be a permutation of 0..255")
        doubled = np.concatenate([t, t])
    p = _lattice(p) & 255
    idx = doubled[p[..., 0]]
    for axis in range(1, p.shape[-1]):
        idx = doubled[idx + p[..., axis]]
    return idx


def table_gradient(p, dim=None):
    p = _lattice(p, dim)
    table = GRAD_TABLES[p.shape[-1]]
    return table[table_permute(p) % len(table)]


def lattice_gradient(variant, p):
    """Gradient at lattice points for any variant, table baseline included."""
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        return table_gradient(p)
    return hash_gradient(variant, p)
