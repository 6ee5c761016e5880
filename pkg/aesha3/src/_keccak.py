"""
Keccak-f[1600] and the sponge construction on top of it.

The permutation works on a plain list of 25 lanes (index x + 5y); the public
functions take and return immutable `KeccakState` values. Round constants and
rotation offsets are generated from their FIPS-202 definitions at import time.
"""

import hashlib
from typing import List, Tuple

from aesha3._KeccakState import (
    LANE_MASK,
    SHA3_256_PARAMS,
    SHAKE256_PARAMS,
    STATE_BYTES,
    KeccakState,
    SpongeParams,
    SqueezeProfile,
)

N_ROUNDS = 24


def _round_constants() -> Tuple[int, ...]:
    """Runs the rc(t) LFSR (x^8 + x^6 + x^5 + x^4 + 1) to build the 24 iota constants."""
    constants = []
    lfsr = 0x01
    for _ in range(N_ROUNDS):
        rc = 0
        for j in range(7):
            if lfsr & 1:
                rc |= 1 << ((1 << j) - 1)
            lfsr = ((lfsr << 1) ^ 0x71) & 0xFF if lfsr & 0x80 else lfsr << 1
        constants.append(rc)
    return tuple(constants)


def _rotation_offsets() -> Tuple[int, ...]:
    offsets = [0] * 25
    x, y = 1, 0
    for t in range(24):
        offsets[x + 5 * y] = ((t + 1) * (t + 2) // 2) % 64
        x, y = y, (2 * x + 3 * y) % 5
    return tuple(offsets)


ROUND_CONSTANTS = _round_constants()
RHO_OFFSETS = _rotation_offsets()
# pi: A'[x, y] = A[(x + 3y) mod 5, x]
PI_SOURCE = tuple(((x + 3 * y) % 5) + 5 * x for y in range(5) for x in range(5))


def _rotl(lane: int, n: int) -> int:
    n %= 64
    return ((lane << n) | (lane >> (64 - n))) & LANE_MASK


def theta(a: List[int]) -> List[int]:
    c = [a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20] for x in range(5)]
    d = [c[(x - 1) % 5] ^ _rotl(c[(x + 1) % 5], 1) for x in range(5)]
    return [a[i] ^ d[i % 5] for i in range(25)]


def rho(a: List[int]) -> List[int]:
    return [_rotl(a[i], RHO_OFFSETS[i]) for i in range(25)]


def pi(a: List[int]) -> List[int]:
    return [a[src] for src in PI_SOURCE]


def chi(a: List[int]) -> List[int]:
    out = [0] * 25
    for y in range(0, 25, 5):
        for x in range(5):
            out[y + x] = a[y + x] ^ (
                (a[y + (x + 1) % 5] ^ LANE_MASK) & a[y + (x + 2) % 5]
            )
    return out


def iota(a: List[int], round_constant: int) -> List[int]:
    out = list(a)
    out[0] ^= round_constant
    return out


def _permute(lanes: List[int]) -> List[int]:
    a = lanes
    for rc in ROUND_CONSTANTS:
        a = iota(chi(pi(rho(theta(a)))), rc)
    return a


def keccak_f(state: KeccakState) -> KeccakState:
    """
    Applies the 24-round Keccak-f[1600] permutation.

    Parameters
    ----------
    state : KeccakState
        Any 1600-bit state.

    Returns
    -------
    KeccakState
        The permuted state. Each round applies theta, rho, pi, chi and iota, in
        that order.

    Examples
    --------
    >>> hex(keccak_f(KeccakState.zero()).lane(0, 0))
    '0xf1258f7940e1dde7'
    """
    return KeccakState(tuple(_permute(list(state.lanes))))


def pad(message: bytes, params: SpongeParams) -> bytes:
    """
    Appends the delimited domain suffix and pad10*1 up to a multiple of the rate.
    A message that already fills its last block gets a whole extra padding block.
    """
    rate = params.rate_bytes
    padded = bytearray(message)
    padded.append(params.domain_suffix)
    padded.extend(b"\x00" * (-len(padded) % rate))
    padded[-1] |= 0x80
    return bytes(padded)


def _absorb_lanes(message: bytes, params: SpongeParams) -> List[int]:
    rate = params.rate_bytes
    n_lanes = -(-rate // 8)
    padded = pad(message, params)
    lanes = [0] * 25
    for offset in range(0, len(padded), rate):
        block = padded[offset : offset + rate] + b"\x00" * (8 * n_lanes - rate)
        for i in range(n_lanes):
            lanes[i] ^= int.from_bytes(block[8 * i : 8 * i + 8], "little")
        lanes = _permute(lanes)
    return lanes


def absorb(message: bytes, params: SpongeParams = SHAKE256_PARAMS) -> KeccakState:
    """
    Pads `message` and XORs it block by block into the rate portion of a zero
    state, permuting after every block.

    Parameters
    ----------
    message : bytes
        Any byte string, including the empty one.
    params : SpongeParams, optional
        Sponge geometry and domain suffix. Defaults to the SHAKE256 geometry.

    Returns
    -------
    KeccakState
        The state after the last block has been absorbed.
    """
    return KeccakState(tuple(_absorb_lanes(bytes(message), params)))


def _check_n_bits(n_bits: int) -> int:
    if not isinstance(n_bits, int):
        raise TypeError(f"n_bits must be an integer, not {type(n_bits)}.")
    if n_bits <= 0:
        raise ValueError(f"n_bits must be positive. Got {n_bits}.")
    return -(-n_bits // 8)


def _mask_tail(out: bytes, n_bits: int) -> bytes:
    # stream bit i is bit i % 8 of byte i // 8
    if n_bits % 8 == 0:
        return out
    return out[:-1] + bytes([out[-1] & ((1 << (n_bits % 8)) - 1)])


def _serialize(lanes: List[int]) -> bytes:
    return b"".join(lane.to_bytes(8, "little") for lane in lanes)


def squeeze(
    state: KeccakState,
    n_bits: int,
    params: SpongeParams = SHAKE256_PARAMS,
    profile: SqueezeProfile = SqueezeProfile.RATE_ONLY,
) -> bytes:
    """
    Reads `n_bits` of output from an absorbed state.

    Parameters
    ----------
    state : KeccakState
        The state returned by `absorb`.
    n_bits : int
        Output length in bits; any positive integer.
    params : SpongeParams, optional
        Sponge geometry; only the rate matters here.
    profile : SqueezeProfile, optional
        RATE_ONLY reads the first `rate_bits` of the state per step. FULL_STATE
        reads the whole serialized state per step, so the first 1600 bits are the
        post-absorb state itself and the next 1600 are keccak_f of it.

    Returns
    -------
    bytes
        `ceil(n_bits / 8)` output bytes. When `n_bits` is not a whole number of
        bytes, the unused high bits of the last byte are zero.

    Raises
    ------
    ValueError
        If `n_bits` is zero or negative.
    """
    n_bytes = _check_n_bits(n_bits)
    step = STATE_BYTES if profile is SqueezeProfile.FULL_STATE else params.rate_bytes

    lanes = list(state.lanes)
    out = bytearray()
    while True:
        out.extend(_serialize(lanes)[:step])
        if len(out) >= n_bytes:
            break
        lanes = _permute(lanes)
    return _mask_tail(bytes(out[:n_bytes]), n_bits)


def sha3_256(message: bytes) -> bytes:
    """SHA3-256 digest of `message` (rate 1088, suffix 0x06)."""
    return squeeze(absorb(message, SHA3_256_PARAMS), 256, SHA3_256_PARAMS)


def shake256_xof(message: bytes, n_bits: int) -> bytes:
    """SHAKE256 output stream of `n_bits` bits (rate 1088, suffix 0x1F)."""
    _check_n_bits(n_bits)
    return squeeze(absorb(message, SHAKE256_PARAMS), n_bits, SHAKE256_PARAMS)


def shake256_native(message: bytes, n_bits: int) -> bytes:
    """
    Same stream as `shake256_xof`, computed by the interpreter's built-in SHA-3.
    Used to time the key schedule against a compiled sponge.
    """
    n_bytes = _check_n_bits(n_bits)
    return _mask_tail(hashlib.shake_256(bytes(message)).digest(n_bytes), n_bits)

