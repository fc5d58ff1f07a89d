"""GLSL 1.30 source for the hash kernels and the hash-chained gradient.

Output is deterministic text: same arguments, same bytes.
"""

from dataclasses import dataclass

from .hashes import FNV_OFFSET, FNV_PRIME, MURMUR_M, MURMUR_SEED, HashVariant

GLSL_VERSION = "#version 130"

# byte masks as signed GLSL int literals; the top one is 0xFF000000
BYTE_MASKS = (0xFF, 0xFF00, 0xFF0000, 0xFF000000 - (1 << 32))

FUNCTION_NAMES = {
    HashVariant.FNV1: "fnv1Hash",
    HashVariant.PARTIAL_FNV1: "partialFnv1Hash",
    HashVariant.JENKINS: "jenkinsHash",
    HashVariant.PARTIAL_JENKINS: "partialJenkinsHash",
    HashVariant.MURMUR: "murmurHash",
}

_OAT_ROUND = ["hash += {src};", "hash += (hash << 10);", "hash ^= (hash >> 6);"]
_OAT_FINAL = ["hash += (hash << 3);", "hash ^= (hash >> 11);", "hash += (hash << 15);"]


@dataclass(frozen=True)
class ShaderSource:
    variant: HashVariant
    text: str


def _byte_lines():
    return [
        f"int b{i} = (key & {mask}){f' >> {8 * i}' if i else ''};"
        for i, mask in enumerate(BYTE_MASKS)
    ]


def _function(signature, blocks):
    """Function text from a list of statement blocks separated by blank lines."""
    body = "\n\n".join("\n".join("    " + s for s in block) for block in blocks)
    return f"{signature}\n{{\n{body}\n}}\n"


def _fnv_constants():
    return f"const int prime = {FNV_PRIME};\nconst int offset = {FNV_OFFSET};\n"


def _hash_source(variant, name):
    if variant is HashVariant.FNV1:
        rounds = [["ret *= prime;", f"ret ^= b{i};"] for i in range(4)]
        fn = _function(f"int {name}(int key)",
                       [["int ret = offset;"], _byte_lines(), *rounds, ["return ret;"]])
        return _fnv_constants() + "\n" + fn
    if variant is HashVariant.PARTIAL_FNV1:
        rounds = [["ret *= prime;", "ret ^= key;"]] * 2
        fn = _function(f"int {name}(int key)", [["int ret = offset;"], *rounds, ["return ret;"]])
        return _fnv_constants() + "\n" + fn
    if variant is HashVariant.JENKINS:
        rounds = [[s.format(src=f"b{i}") for s in _OAT_ROUND] for i in range(4)]
        return _function(f"int {name}(int key)",
                         [["int hash = 0;"], _byte_lines(), *rounds, _OAT_FINAL, ["return hash;"]])
    if variant is HashVariant.PARTIAL_JENKINS:
        rounds = [[s.format(src="key") for s in _OAT_ROUND]]
        return _function(f"int {name}(int key)",
                         [["int hash = 0;"], *rounds, _OAT_FINAL, ["return hash;"]])
    fn = _function(
        f"int {name}(int k)",
        [[f"int h = {MURMUR_SEED};"], ["k *= m;", "k ^= k >> 24;", "k *= m;"],
         ["h *= m;", "h ^= k;"], ["return h;"]],
    )
    return f"const int m = {MURMUR_M};\n\n" + fn


def _gradient_source(name, dim):
    if dim == 2:
        return _function(
            "vec2 gradient(ivec2 p)",
            [[f"int x = {name}(p.x);", f"int y = {name}(x + p.y);"],
             ["return sin(vec2(x + y, y + y));"]],
        )
    return _function(
        "vec3 gradient(ivec3 p)",
        [[f"int x = {name}(p.x);", f"int y = {name}(x + p.y);", f"int z = {name}(y + p.z);"],
         ["return sin(vec3(z + x, z + y, z + z));"]],
    )


def generate(variant, gradient=False, dim=None):
    """GLSL text for *variant*'s hash, plus the gradient function when asked.

    ``dim`` (2 or 3) is required with ``gradient`` and rejected without it.
    """
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        raise ValueError("the table baseline has no hash function to emit")
    if gradient and dim not in (2, 3):
        raise ValueError(f"gradient needs dim 2 or 3, got {dim}")
    if not gradient and dim is not None:
        raise ValueError("dim only applies together with gradient")
    name = FUNCTION_NAMES[variant]
    parts = [GLSL_VERSION + "\n", _hash_source(variant, name)]
    if gradient:
        parts.append(_gradient_source(name, dim))
    return ShaderSource(variant, "\n".join(parts))
