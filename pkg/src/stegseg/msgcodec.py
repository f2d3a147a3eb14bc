"""Keyed deterministic primitives and the message cipher stack.

Everything here is a pure function of its arguments: a SplitMix64-family
word stream, a chained keyed digest, a key schedule derived from secret
key + password, a keyed bit permutation, and the two-level byte cipher
(XOR keystream, then keyed byte substitution). None of it is hardened
cryptography; the point is exact reproducibility of every bit on both
ends of the channel, with all keyed material isolated in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import EmptySecret, LengthMismatch

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
DIGEST_IV = 0x517CC1B727220A95


def mix64(z: int) -> int:
    """SplitMix64 finalizer: the shared avalanche stage of every keyed
    primitive in this package. Maps 0 to 0; bijective on 64-bit words."""
    z &= MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z


def prng_stream(seed: int, n: int) -> np.ndarray:
    """First n words of the counter-mode stream mix64(seed + (i+1)*golden).

    Counter mode makes the stream a prefix-stable pure function of
    (seed, index), so it vectorizes; word i never depends on word i-1.
    """
    if n < 0:
        raise ValueError("word count must be >= 0")
    idx = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


def prng_bytes(seed: int, n: int) -> np.ndarray:
    """First n bytes of the stream, each word emitted little-endian."""
    words = prng_stream(seed, (n + 7) // 8)
    return words.astype("<u8").view(np.uint8)[:n]


def _as_byte_array(data) -> np.ndarray:
    if isinstance(data, np.ndarray):
        if data.dtype != np.uint8:
            raise TypeError("byte array must be uint8")
        return np.ascontiguousarray(data)
    return np.frombuffer(bytes(data), dtype=np.uint8)


def keyed_digest(key: int, data) -> int:
    """Chained 64-bit digest: absorb each byte through the mixer, then
    finalize with the length. Used for subkey derivation, checksums,
    verifiers, integrity tags, and the whole-image feature."""
    arr = _as_byte_array(data)
    return int(_kernels.digest_kernel(np.uint64(key & MASK64), arr))


def keyed_shuffle(seed: int, n: int) -> np.ndarray:
    """Fisher-Yates permutation of 0..n-1 driven by prng_stream(seed).

    The word consumed for position i (descending from n-1 to 1) is
    reduced modulo (i+1) to pick the swap partner. Returns the shuffled
    index array; entry k holds the source index that lands at k.
    """
    if n < 0:
        raise ValueError("length must be >= 0")
    return _kernels.shuffle_kernel(np.uint64(seed & MASK64), n)


@dataclass(frozen=True)
class SecretMaterial:
    """User-supplied secret key and password. Kept out of reprs so the
    secrets cannot leak through logs or tracebacks."""

    secret_key: bytes = field(repr=False)
    password: bytes = field(repr=False)

    def __post_init__(self):
        if not self.secret_key or not self.password:
            raise EmptySecret("secret key and password must be non-empty")
        if len(self.secret_key) > 256 or len(self.password) > 256:
            raise ValueError("secret key and password are limited to 256 bytes")


@dataclass(frozen=True)
class KeySchedule:
    """Five domain-separated subkeys plus the password-mixed intermediate
    used for the header verifier. Deterministic in the secret material."""

    key_perm: int
    key_enc1: int
    key_sbox: int
    key_pos: int
    key_feat: int
    key_check: int


_TAGS = {
    "key_perm": b"PERM",
    "key_enc1": b"ENC1",
    "key_sbox": b"ENC2",
    "key_pos": b"POS",
    "key_feat": b"FEAT",
}


def derive_schedule(material: SecretMaterial) -> KeySchedule:
    """Digest-chain the secret key, then the password, then split into
    per-purpose subkeys under distinct ASCII tags."""
    k0 = keyed_digest(0, material.secret_key)
    kp = keyed_digest(k0, material.password)
    words = {name: keyed_digest(kp, tag) for name, tag in _TAGS.items()}
    return KeySchedule(key_check=kp, **words)


def bytes_to_bits(data: bytes) -> np.ndarray:
    """Unpack bytes into a 0/1 uint8 array, most significant bit first."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_to_bytes(bits: np.ndarray) -> bytes:
    """Pack a 0/1 array into bytes MSB-first, zero-filling the tail."""
    return np.packbits(bits).tobytes()


def permute_bits(bits: np.ndarray, key_perm: int) -> np.ndarray:
    """Shuffle bit positions with the keyed Fisher-Yates permutation.

    Length and population count are preserved; 0- and 1-bit messages map
    to themselves because only the identity permutation exists.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size <= 1:
        return bits.copy()
    return bits[keyed_shuffle(key_perm, bits.size)]


def unpermute_bits(bits: np.ndarray, key_perm: int) -> np.ndarray:
    """Exact inverse of permute_bits under the same key."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size <= 1:
        return bits.copy()
    out = np.empty_like(bits)
    out[keyed_shuffle(key_perm, bits.size)] = bits
    return out


def make_sbox(seed: int) -> np.ndarray:
    """Keyed permutation of 0..255 used as the level-2 substitution box."""
    return keyed_shuffle(seed, 256).astype(np.uint8)


def invert_sbox(sbox: np.ndarray) -> np.ndarray:
    inv = np.empty_like(sbox)
    inv[sbox] = np.arange(256, dtype=np.uint8)
    return inv


def _check_salt(salt: bytes):
    if len(salt) != 8:
        raise ValueError("salt must be exactly 8 bytes")


def encrypt(bits: np.ndarray, schedule: KeySchedule, salt: bytes) -> bytes:
    """Pack (already permuted) bits into bytes MSB-first, then apply the
    two cipher levels: XOR with the salted keystream, then the salted
    byte substitution. Returns the ciphertext bytes."""
    _check_salt(salt)
    bits = np.asarray(bits, dtype=np.uint8)
    data = np.packbits(bits)
    stream = prng_bytes(keyed_digest(schedule.key_enc1, salt), data.size)
    level1 = data ^ stream
    sbox = make_sbox(keyed_digest(schedule.key_sbox, salt))
    return sbox[level1].tobytes()


def decrypt(
    ciphertext: bytes, schedule: KeySchedule, salt: bytes, length_bits: int
) -> np.ndarray:
    """Invert both cipher levels and unpack exactly length_bits bits."""
    _check_salt(salt)
    n = len(ciphertext)
    if n == 0:
        if length_bits != 0:
            raise LengthMismatch("empty ciphertext cannot carry bits")
        return np.zeros(0, dtype=np.uint8)
    if not (8 * (n - 1) < length_bits <= 8 * n):
        raise LengthMismatch(
            f"{length_bits} bits does not fit {n} ciphertext bytes"
        )
    data = np.frombuffer(ciphertext, dtype=np.uint8)
    sbox = make_sbox(keyed_digest(schedule.key_sbox, salt))
    level1 = invert_sbox(sbox)[data]
    stream = prng_bytes(keyed_digest(schedule.key_enc1, salt), n)
    return np.unpackbits(level1 ^ stream)[:length_bits]


def message_tag(schedule: KeySchedule, ciphertext: bytes) -> bytes:
    """16-byte integrity tag over the ciphertext: two digests under the
    feature subkey and its mixed sibling, concatenated little-endian."""
    t1 = keyed_digest(schedule.key_feat, ciphertext)
    t2 = keyed_digest(mix64(schedule.key_feat ^ 1), ciphertext)
    return t1.to_bytes(8, "little") + t2.to_bytes(8, "little")
