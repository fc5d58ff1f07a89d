"""32-bit hash kernels used as gradient sources.

Every kernel follows signed 32-bit GLSL ``int`` semantics: wrapping
add/multiply, truncating left shift, arithmetic right shift.

Inside compiled code a 32-bit word is carried as an int64 holding its
unsigned bit pattern in ``[0, 2**32)``; results are masked after every
operation that can carry past bit 31.  The public functions accept Python
ints or integer arrays and return signed values: ``int`` for scalars,
``int32`` arrays otherwise.
"""

from enum import Enum

import numpy as np
from numba import njit, types
from numba.extending import overload

FNV_PRIME = 16777619
FNV_OFFSET = -2128831035
MURMUR_M = 1540483477
MURMUR_SEED = 10

MASK = 0xFFFFFFFF
_OFFSET_U = FNV_OFFSET & MASK
_MURMUR_H0 = (MURMUR_SEED * MURMUR_M) & MASK


class HashVariant(Enum):
    FNV1 = "fnv1"
    PARTIAL_FNV1 = "partial-fnv1"
    JENKINS = "jenkins"
    PARTIAL_JENKINS = "partial-jenkins"
    MURMUR = "murmur"
    TABLE = "table"

    @classmethod
    def parse(cls, name):
        """Look a variant up by CLI name (``partial-fnv1``) or member name."""
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for v in cls:
            if key in (v.value, v.name.lower().replace("_", "-")):
                return v
        raise ValueError(f"unknown hash variant {name!r}")

    @property
    def code(self):
        """Small integer id used by the compiled kernels."""
        return _CODES[self]

    @property
    def label(self):
        return _LABELS[self]


# Report order, matching the published performance table.
HASH_VARIANTS = (
    HashVariant.FNV1,
    HashVariant.PARTIAL_FNV1,
    HashVariant.JENKINS,
    HashVariant.PARTIAL_JENKINS,
    HashVariant.MURMUR,
)
ALL_VARIANTS = HASH_VARIANTS + (HashVariant.TABLE,)

_CODES = {v: i for i, v in enumerate(ALL_VARIANTS)}
_LABELS = {
    HashVariant.FNV1: "FNV1",
    HashVariant.PARTIAL_FNV1: "PartialFNV1",
    HashVariant.JENKINS: "Jenkins",
    HashVariant.PARTIAL_JENKINS: "PartialJenkins",
    HashVariant.MURMUR: "Murmur",
    HashVariant.TABLE: "Float",
}
TABLE_CODE = _CODES[HashVariant.TABLE]


@njit(cache=True, inline="always")
def sar_word(x, n):
    """Arithmetic shift right of a 32-bit word."""
    return (((x ^ 0x80000000) - 0x80000000) >> n) & MASK


@njit(cache=True, inline="always")
def fnv1_word(k):
    b0 = k & 255
    b1 = (k & 65280) >> 8
    b2 = (k & 16711680) >> 16
    b3 = sar_word(k & 0xFF000000, 24)
    r = _OFFSET_U
    r = ((r * FNV_PRIME) & MASK) ^ b0
    r = ((r * FNV_PRIME) & MASK) ^ b1
    r = ((r * FNV_PRIME) & MASK) ^ b2
    r = ((r * FNV_PRIME) & MASK) ^ b3
    return r


@njit(cache=True, inline="always")
def partial_fnv1_word(k):
    r = _OFFSET_U
    r = ((r * FNV_PRIME) & MASK) ^ k
    r = ((r * FNV_PRIME) & MASK) ^ k
    return r


@njit(cache=True, inline="always")
def _oat_round(h, b):
    h = (h + b) & MASK
    h = (h + (h << 10)) & MASK
    return h ^ sar_word(h, 6)


@njit(cache=True, inline="always")
def _oat_final(h):
    h = (h + (h << 3)) & MASK
    h = h ^ sar_word(h, 11)
    return (h + (h << 15)) & MASK


@njit(cache=True, inline="always")
def jenkins_word(k):
    h = _oat_round(0, k & 255)
    h = _oat_round(h, (k & 65280) >> 8)
    h = _oat_round(h, (k & 16711680) >> 16)
    h = _oat_round(h, sar_word(k & 0xFF000000, 24))
    return _oat_final(h)


@njit(cache=True, inline="always")
def partial_jenkins_word(k):
    return _oat_final(_oat_round(0, k))


@njit(cache=True, inline="always")
def murmur_word(k):
    k = (k * MURMUR_M) & MASK
    k = k ^ sar_word(k, 24)
    k = (k * MURMUR_M) & MASK
    return _MURMUR_H0 ^ k


_WORD_KERNELS = (fnv1_word, partial_fnv1_word, jenkins_word, partial_jenkins_word, murmur_word)


def hash_word(code, k):
    """Hash one word with the kernel selected by *code*.

    In compiled code *code* must be a compile-time literal; only the selected
    kernel is inlined at the call site.
    """
    return _WORD_KERNELS[code](k)


@overload(hash_word, inline="always", prefer_literal=True)
def _hash_word_impl(code, k):
    if not isinstance(code, types.IntegerLiteral):
        return None
    if code.literal_value >= len(_WORD_KERNELS):
        # never reached: the table branch is taken first
        return lambda code, k: k
    kernel = _WORD_KERNELS[code.literal_value]

    def impl(code, k):
        return kernel(k)

    return impl


@njit(cache=True, nogil=True)
def hash_words(code, src, dst, count):
    """dst[:count] = H(src[:count]) for the hash selected by *code*.

    The branch sits outside the loops so each loop body vectorizes.
    """
    if code == 0:
        for i in range(count):
            dst[i] = fnv1_word(src[i])
    elif code == 1:
        for i in range(count):
            dst[i] = partial_fnv1_word(src[i])
    elif code == 2:
        for i in range(count):
            dst[i] = jenkins_word(src[i])
    elif code == 3:
        for i in range(count):
            dst[i] = partial_jenkins_word(src[i])
    elif code == 4:
        for i in range(count):
            dst[i] = murmur_word(src[i])


def to_words(key):
    """Integers (any sign, any int dtype) to int64 words in [0, 2**32)."""
    arr = np.asarray(key)
    if arr.dtype.kind not in "iu":
        raise TypeError(f"hash keys must be integers, got {arr.dtype}")
    if arr.dtype == np.uint64:
        arr = arr & np.uint64(MASK)
    return arr.astype(np.int64) & MASK


def words_to_i32(words):
    return np.asarray(words, dtype=np.int64).astype(np.uint32).view(np.int32)


def apply(variant, key):
    """Hash *key* with *variant*; scalar in, int out; array in, int32 array out."""
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        raise ValueError("variant has no scalar hash")
    words = np.ascontiguousarray(to_words(key).ravel())
    out = np.empty_like(words)
    hash_words(variant.code, words, out, words.size)
    if np.ndim(key) == 0 and not isinstance(key, np.ndarray):
        return int(words_to_i32(out)[0])
    return words_to_i32(out).reshape(np.shape(key))


dispatch = apply


def fnv1(key):
    """FNV-1 over the four bytes of *key*, least significant first."""
    return apply(HashVariant.FNV1, key)


def partial_fnv1(key):
    """Two FNV-1 rounds that multiply and xor the whole word."""
    return apply(HashVariant.PARTIAL_FNV1, key)


def jenkins(key):
    """Jenkins one-at-a-time over the four bytes of *key*."""
    return apply(HashVariant.JENKINS, key)


def partial_jenkins(key):
    """One one-at-a-time round on the whole word, then the usual finalizer."""
    return apply(HashVariant.PARTIAL_JENKINS, key)


def murmur(key):
    """Single-block Murmur2: seed 10, no length mixing."""
    return apply(HashVariant.MURMUR, key)
