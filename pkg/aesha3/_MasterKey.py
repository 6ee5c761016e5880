"""
The MasterKey class and the DerivationProfile enum selecting how round keys are
derived from it.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from aesha3._exceptions import MalformedKeyError
from aesha3._Variant import Variant

_LOWER_HEX = re.compile(r"^[0-9a-f]*$")


class DerivationProfile(Enum):
    """
    STANDARD    FIPS-197 key expansion.
    SHA3_FULL   Sponge over the raw key, squeezing whole 1600-bit states.
    SHA3_SHAKE  SHAKE256 of the raw key, rate-only squeeze.
    """

    STANDARD = "standard"
    SHA3_FULL = "sha3-full"
    SHA3_SHAKE = "sha3-shake"

    @property
    def is_sha3(self) -> bool:
        return self is not DerivationProfile.STANDARD

    @classmethod
    def parse(cls, text) -> "DerivationProfile":
        if isinstance(text, cls):
            return text
        normalized = str(text).strip().lower().replace("_", "-")
        for profile in cls:
            if profile.value == normalized or profile.name.lower().replace("_", "-") == normalized:
                return profile
        raise ValueError(
            f"Profile must be one of {', '.join(p.value for p in cls)}. Got {text!r}."
        )


@dataclass(frozen=True)
class MasterKey:
    """
    The secret input of a key schedule: 16, 24 or 32 raw bytes.
    """

    variant: Variant
    data: bytes

    def __post_init__(self) -> None:
        if not isinstance(self.variant, Variant):
            raise TypeError(
                f"variant ({self.variant}) must be a Variant, and cannot be {type(self.variant)}."
            )
        if not isinstance(self.data, (bytes, bytearray)):
            raise TypeError(f"Key data must be bytes, not {type(self.data)}.")
        if len(self.data) != self.variant.key_bytes:
            raise MalformedKeyError(
                f"{self.variant.label()} keys are {self.variant.key_bytes} bytes long. Got {len(self.data)} bytes."
            )
        object.__setattr__(self, "data", bytes(self.data))

    @classmethod
    def from_bytes(cls, data: bytes, variant: Optional[Variant] = None) -> "MasterKey":
        """Builds a key, inferring the variant from the length when not given."""
        if variant is None:
            try:
                variant = Variant.from_key_length(len(data))
            except ValueError as err:
                raise MalformedKeyError(str(err)) from err
        return cls(variant, bytes(data))

    @classmethod
    def from_hex(cls, text: str, variant: Optional[Variant] = None) -> "MasterKey":
        """
        Parses a key written as lowercase hex, 32, 48 or 64 characters.

        Raises
        ------
        MalformedKeyError
            If the text is not lowercase hex or has the wrong length.
        """
        text = text.strip()
        if not _LOWER_HEX.match(text):
            raise MalformedKeyError(
                f"Keys must be lowercase hexadecimal. Got {text[:16]!r}{'...' if len(text) > 16 else ''}."
            )
        if len(text) not in (32, 48, 64):
            raise MalformedKeyError(
                f"Keys must be 32, 48 or 64 hex characters long. Got {len(text)}."
            )
        return cls.from_bytes(bytes.fromhex(text), variant)

    @property
    def bits(self) -> int:
        return 8 * len(self.data)

    def hex(self) -> str:
        return self.data.hex()

    def flip_bit(self, position: int) -> "MasterKey":
        """Returns a copy with bit `position` toggled; bit 0 is the MSB of byte 0."""
        if not 0 <= position < self.bits:
            raise ValueError(f"Bit position must be in [0, {self.bits}). Got {position}.")
        data = bytearray(self.data)
        data[position // 8] ^= 0x80 >> (position % 8)
        return MasterKey(self.variant, bytes(data))

    def __repr__(self) -> str:
        return f"MasterKey({self.variant.label()})"
