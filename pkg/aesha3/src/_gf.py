"""
Arithmetic in GF(2^8) modulo the AES polynomial x^8 + x^4 + x^3 + x + 1, and the
S-box tables built from it.
"""

from typing import List, Tuple

import numpy as np

AES_POLYNOMIAL = 0x11B
GENERATOR = 0x03


def xtime(a: int) -> int:
    """Multiplication by x (0x02)."""
    a <<= 1
    return (a ^ AES_POLYNOMIAL) if a & 0x100 else a


def _log_tables() -> Tuple[List[int], List[int]]:
    exp = [0] * 510
    log = [0] * 256
    value = 1
    for power in range(255):
        exp[power] = value
        log[value] = power
        value ^= xtime(value)  # value * 0x03
    exp[255:510] = exp[0:255]
    return exp, log


EXP, LOG = _log_tables()


def gf_mul(a: int, b: int) -> int:
    """
    Product of two bytes in GF(2^8).

    Examples
    --------
    >>> hex(gf_mul(0x57, 0x83))
    '0xc1'
    """
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a & 0xFF] + LOG[b & 0xFF]]


def gf_inv(a: int) -> int:
    """Multiplicative inverse, with 0 mapped to 0."""
    if a == 0:
        return 0
    return EXP[255 - LOG[a]]


def _affine(b: int) -> int:
    out = 0x63
    for shift in range(5):
        out ^= ((b << shift) | (b >> (8 - shift))) & 0xFF
    return out


def _build_sbox() -> np.ndarray:
    sbox = np.array([_affine(gf_inv(a)) for a in range(256)], dtype=np.uint8)
    # spot values from the published table
    if sbox[0x00] != 0x63 or sbox[0x53] != 0xED or sbox[0xFF] != 0x16:
        raise RuntimeError("S-box generation does not match the AES table.")
    return sbox


SBOX = _build_sbox()
INV_SBOX = np.argsort(SBOX).astype(np.uint8)


def mul_table(c: int) -> np.ndarray:
    """Lookup table of x -> c * x for every byte x."""
    return np.array([gf_mul(x, c) for x in range(256)], dtype=np.uint8)


MUL2, MUL3 = mul_table(0x02), mul_table(0x03)
MUL9, MUL11, MUL13, MUL14 = (
    mul_table(0x09),
    mul_table(0x0B),
    mul_table(0x0D),
    mul_table(0x0E),
)
