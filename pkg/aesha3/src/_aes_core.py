"""
The AES round transformations and the block cipher built from them.

Every layer works on a uint8 array whose last axis holds the 16 bytes of a state,
so a whole payload of shape (n_blocks, 16) goes through each round in one call.
The layers also accept a single `AesState` and then return an `AesState`.
"""

import functools
from typing import Callable, Union

import numpy as np

from aesha3._AesState import AesState, as_state_array
from aesha3._RoundKeySchedule import RoundKeySchedule
from aesha3.src._gf import (
    INV_SBOX,
    MUL2,
    MUL3,
    MUL9,
    MUL11,
    MUL13,
    MUL14,
    SBOX,
)

StateLike = Union[AesState, np.ndarray]

# byte r + 4c of the output comes from row r, column (c + r) mod 4 of the input
SHIFT_ROWS_INDEX = np.array(
    [r + 4 * ((c + r) % 4) for c in range(4) for r in range(4)], dtype=np.intp
)
INV_SHIFT_ROWS_INDEX = np.argsort(SHIFT_ROWS_INDEX)


def _accepts_state(layer: Callable[..., np.ndarray]) -> Callable[..., StateLike]:
    @functools.wraps(layer)
    def wrapper(s, *args):
        if isinstance(s, AesState):
            return s.apply(layer, *args)
        return layer(as_state_array(s), *args)

    return wrapper


@_accepts_state
def sub_bytes(s: np.ndarray) -> np.ndarray:
    return SBOX[s]


@_accepts_state
def inv_sub_bytes(s: np.ndarray) -> np.ndarray:
    return INV_SBOX[s]


@_accepts_state
def shift_rows(s: np.ndarray) -> np.ndarray:
    """Rotates row r left by r positions."""
    return s[..., SHIFT_ROWS_INDEX]


@_accepts_state
def inv_shift_rows(s: np.ndarray) -> np.ndarray:
    return s[..., INV_SHIFT_ROWS_INDEX]


def _columns(s: np.ndarray) -> np.ndarray:
    return s.reshape(s.shape[:-1] + (4, 4))


@_accepts_state
def mix_columns(s: np.ndarray) -> np.ndarray:
    """Multiplies every column by the circulant matrix (02, 03, 01, 01)."""
    a = _columns(s)
    out = (
        MUL2[a]
        ^ MUL3[np.roll(a, -1, axis=-1)]
        ^ np.roll(a, -2, axis=-1)
        ^ np.roll(a, -3, axis=-1)
    )
    return out.reshape(s.shape)


@_accepts_state
def inv_mix_columns(s: np.ndarray) -> np.ndarray:
    """Multiplies every column by the circulant matrix (0E, 0B, 0D, 09)."""
    a = _columns(s)
    out = (
        MUL14[a]
        ^ MUL11[np.roll(a, -1, axis=-1)]
        ^ MUL13[np.roll(a, -2, axis=-1)]
        ^ MUL9[np.roll(a, -3, axis=-1)]
    )
    return out.reshape(s.shape)


@_accepts_state
def add_round_key(s: np.ndarray, k) -> np.ndarray:
    if isinstance(k, AesState):
        k = k.to_array()
    return s ^ as_state_array(k)


def encrypt_blocks(blocks: np.ndarray, sched: RoundKeySchedule) -> np.ndarray:
    """
    Encrypts every 16-byte row of `blocks` independently.

    Parameters
    ----------
    blocks : np.ndarray
        uint8 array of shape (n, 16), or a single (16,) state.
    sched : RoundKeySchedule
        Round keys from either key-schedule provider.

    Returns
    -------
    np.ndarray
        Ciphertext blocks, same shape as the input.
    """
    keys = sched.array
    rounds = sched.variant.rounds
    s = add_round_key(as_state_array(blocks), keys[0])
    for r in range(1, rounds):
        s = add_round_key(mix_columns(shift_rows(sub_bytes(s))), keys[r])
    return add_round_key(shift_rows(sub_bytes(s)), keys[rounds])


def decrypt_blocks(blocks: np.ndarray, sched: RoundKeySchedule) -> np.ndarray:
    """Inverse of `encrypt_blocks`: round keys in reverse order, inverse layers."""
    keys = sched.array
    rounds = sched.variant.rounds
    s = inv_sub_bytes(inv_shift_rows(add_round_key(as_state_array(blocks), keys[rounds])))
    for r in range(rounds - 1, 0, -1):
        s = inv_sub_bytes(inv_shift_rows(inv_mix_columns(add_round_key(s, keys[r]))))
    return add_round_key(s, keys[0])


def encrypt_block(block: bytes, sched: RoundKeySchedule) -> bytes:
    """
    Encrypts one 16-byte block.

    Examples
    --------
    >>> sched = expand_key_standard(MasterKey.from_hex("000102030405060708090a0b0c0d0e0f"))
    >>> encrypt_block(bytes.fromhex("00112233445566778899aabbccddeeff"), sched).hex()
    '69c4e0d86a7b0430d8cdb78070b4c55a'
    """
    if len(block) != 16:
        raise ValueError(f"Blocks are 16 bytes long. Got {len(block)}.")
    return encrypt_blocks(as_state_array(block), sched).tobytes()


def decrypt_block(block: bytes, sched: RoundKeySchedule) -> bytes:
    if len(block) != 16:
        raise ValueError(f"Blocks are 16 bytes long. Got {len(block)}.")
    return decrypt_blocks(as_state_array(block), sched).tobytes()
