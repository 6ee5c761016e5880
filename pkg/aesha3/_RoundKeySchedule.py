"""
The RoundKeySchedule class: the ordered round keys one master key expands to.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from aesha3._Variant import Variant

ROUND_KEY_BYTES = 16


@dataclass(frozen=True)
class RoundKeySchedule:
    """
    Ordered list of 128-bit round keys; keys[0] is the whitening key.

    Parameters
    ----------
    variant : Variant
        AES variant the schedule is for. Fixes the number of keys (11, 13 or 15).
    keys : Sequence[bytes]
        The round keys, 16 bytes each, in the column-major layout of `AesState`.
    profile : Optional[str]
        Label of the derivation that produced the schedule ("standard",
        "sha3-full", "sha3-shake"). Provenance only; not part of equality.
    """

    variant: Variant
    keys: Tuple[bytes, ...]
    profile: Optional[str] = field(default=None, compare=False)
    _array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.variant, Variant):
            raise TypeError(
                f"variant ({self.variant}) must be a Variant, and cannot be {type(self.variant)}."
            )
        keys = tuple(bytes(k) for k in self.keys)
        if len(keys) != self.variant.n_round_keys:
            raise ValueError(
                f"{self.variant.label()} needs {self.variant.n_round_keys} round keys. Got {len(keys)}."
            )
        for i, key in enumerate(keys):
            if len(key) != ROUND_KEY_BYTES:
                raise ValueError(
                    f"Round key {i} must be {ROUND_KEY_BYTES} bytes (128 bits). Got {len(key)} bytes."
                )
        object.__setattr__(self, "keys", keys)
        array = np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(len(keys), 16)
        array.setflags(write=False)
        object.__setattr__(self, "_array", array)

    @classmethod
    def from_bytes(
        cls, variant: Variant, material: bytes, profile: Optional[str] = None
    ) -> "RoundKeySchedule":
        """Slices `material` into consecutive 16-byte round keys, first slice first."""
        n = variant.n_round_keys * ROUND_KEY_BYTES
        if len(material) < n:
            raise ValueError(
                f"{variant.label()} needs {n} bytes of key material. Got {len(material)}."
            )
        keys = tuple(material[16 * i : 16 * i + 16] for i in range(variant.n_round_keys))
        return cls(variant, keys, profile)

    @classmethod
    def from_hex_lines(
        cls, lines: Sequence[str], variant: Optional[Variant] = None
    ) -> "RoundKeySchedule":
        keys = tuple(bytes.fromhex(line.strip()) for line in lines if line.strip())
        if variant is None:
            variant = {v.n_round_keys: v for v in Variant}.get(len(keys))
            if variant is None:
                raise ValueError(f"No AES variant uses {len(keys)} round keys.")
        return cls(variant, keys)

    @property
    def array(self) -> np.ndarray:
        """Read-only (n_round_keys, 16) uint8 view used by the block cipher."""
        return self._array

    @property
    def total_bits(self) -> int:
        return 8 * ROUND_KEY_BYTES * len(self.keys)

    def to_bytes(self) -> bytes:
        return b"".join(self.keys)

    def to_hex_lines(self) -> Iterator[str]:
        for key in self.keys:
            yield key.hex()

    def __len__(self) -> int:
        return len(self.keys)

    def __getitem__(self, i: int) -> bytes:
        return self.keys[i]

    def __iter__(self) -> Iterator[bytes]:
        return iter(self.keys)
