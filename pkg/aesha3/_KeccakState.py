"""
Value types for the Keccak-f[1600] sponge: the 5x5 lane state, the sponge geometry
and the squeeze profile.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

LANE_MASK = (1 << 64) - 1
STATE_BYTES = 200
STATE_BITS = 1600


@dataclass(frozen=True)
class KeccakState:
    """
    Immutable 1600-bit Keccak state held as 25 64-bit lanes.

    Lane (x, y) is stored at index x + 5y, which is also its position in the
    FIPS-202 byte serialization: lane (x, y) occupies bytes 8(5y + x) to
    8(5y + x) + 7, little-endian within the lane.
    """

    lanes: Tuple[int, ...] = (0,) * 25

    def __post_init__(self) -> None:
        if len(self.lanes) != 25:
            raise ValueError(
                f"KeccakState needs exactly 25 lanes (1600 bits). Got {len(self.lanes)}."
            )
        for lane in self.lanes:
            if not isinstance(lane, int):
                raise TypeError(f"Lanes must be integers, not {type(lane)}.")
            if lane < 0 or lane > LANE_MASK:
                raise ValueError(f"Lane value {lane:#x} does not fit in 64 bits.")
        object.__setattr__(self, "lanes", tuple(self.lanes))

    @classmethod
    def zero(cls) -> "KeccakState":
        return cls()

    @classmethod
    def from_lanes(cls, lanes: Iterable[int]) -> "KeccakState":
        return cls(tuple(lanes))

    @classmethod
    def from_bytes(cls, data: bytes) -> "KeccakState":
        if len(data) != STATE_BYTES:
            raise ValueError(
                f"A serialized state is {STATE_BYTES} bytes long. Got {len(data)}."
            )
        return cls(
            tuple(
                int.from_bytes(data[8 * i : 8 * i + 8], "little") for i in range(25)
            )
        )

    def to_bytes(self) -> bytes:
        return b"".join(lane.to_bytes(8, "little") for lane in self.lanes)

    def lane(self, x: int, y: int) -> int:
        return self.lanes[(x % 5) + 5 * (y % 5)]

    def hamming_distance(self, other: "KeccakState") -> int:
        return sum(bin(a ^ b).count("1") for a, b in zip(self.lanes, other.lanes))

    def __repr__(self) -> str:
        return f"KeccakState(lane00={self.lanes[0]:#018x}, ...)"


@dataclass(frozen=True)
class SpongeParams:
    """
    Sponge geometry: rate plus capacity must be 1600 bits.

    `domain_suffix` is the delimited suffix byte of FIPS-202, i.e. the domain bits
    followed by the first bit of pad10*1 (0x06 for SHA-3, 0x1F for SHAKE).
    """

    rate_bits: int = 1088
    capacity_bits: int = 512
    domain_suffix: int = 0x1F

    def __post_init__(self) -> None:
        if not isinstance(self.rate_bits, int) or not isinstance(
            self.capacity_bits, int
        ):
            raise TypeError("rate_bits and capacity_bits must be integers.")
        if self.rate_bits + self.capacity_bits != STATE_BITS:
            raise ValueError(
                f"rate_bits + capacity_bits must equal {STATE_BITS}. "
                f"Got {self.rate_bits} + {self.capacity_bits}."
            )
        if not 0 < self.rate_bits < STATE_BITS:
            raise ValueError(
                f"rate_bits must lie strictly between 0 and {STATE_BITS}. Got {self.rate_bits}."
            )
        if self.rate_bits % 8 != 0:
            raise ValueError(f"rate_bits must be a multiple of 8. Got {self.rate_bits}.")
        if not 0 < self.domain_suffix <= 0xFF:
            raise ValueError(
                f"domain_suffix must be a non-zero byte. Got {self.domain_suffix:#x}."
            )

    @property
    def rate_bytes(self) -> int:
        return self.rate_bits // 8


SHA3_256_PARAMS = SpongeParams(rate_bits=1088, capacity_bits=512, domain_suffix=0x06)
SHAKE256_PARAMS = SpongeParams(rate_bits=1088, capacity_bits=512, domain_suffix=0x1F)


class SqueezeProfile(Enum):
    """
    RATE_ONLY reads `rate_bits` per squeeze step, like every standard sponge.
    FULL_STATE reads the whole 1600-bit state per step; its first block is the
    post-absorb state itself.
    """

    RATE_ONLY = "rate-only"
    FULL_STATE = "full-state"
