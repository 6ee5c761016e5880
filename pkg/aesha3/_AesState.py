from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

BLOCK_BYTES = 16


def as_state_array(block: Union[bytes, bytearray, np.ndarray]) -> np.ndarray:
    """Reads a 16-byte block (or an array of them) into a uint8 array."""
    if isinstance(block, np.ndarray):
        arr = block.astype(np.uint8, copy=False)
    else:
        arr = np.frombuffer(bytes(block), dtype=np.uint8)
    if arr.shape[-1] != BLOCK_BYTES:
        raise ValueError(
            f"AES states are {BLOCK_BYTES} bytes long. Got a trailing dimension of {arr.shape[-1]}."
        )
    return arr


@dataclass(frozen=True)
class AesState:
    """
    A single AES state: 16 bytes read as a 4 x 4 matrix, column-major, so byte i of
    the block sits at row i mod 4, column i div 4.

    The round transformations in `aesha3.src._aes_core` work on arrays whose last
    axis is these 16 bytes, which lets ECB mode push every block of a payload
    through a round at once. `apply` runs one of them on a single state.
    """

    data: bytes

    def __post_init__(self) -> None:
        if not isinstance(self.data, (bytes, bytearray)):
            raise TypeError(f"AesState data must be bytes, not {type(self.data)}.")
        if len(self.data) != BLOCK_BYTES:
            raise ValueError(
                f"AesState holds exactly {BLOCK_BYTES} bytes. Got {len(self.data)}."
            )
        object.__setattr__(self, "data", bytes(self.data))

    @classmethod
    def from_block(cls, block: bytes) -> "AesState":
        return cls(bytes(block))

    @classmethod
    def from_matrix(cls, matrix) -> "AesState":
        """Builds a state from a 4 x 4 [row][column] matrix."""
        arr = np.asarray(matrix, dtype=np.uint8)
        if arr.shape != (4, 4):
            raise ValueError(f"Expected a 4 x 4 matrix. Got shape {arr.shape}.")
        return cls(arr.T.tobytes())

    def to_block(self) -> bytes:
        return self.data

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self.data, dtype=np.uint8).copy()

    @property
    def matrix(self) -> np.ndarray:
        """The state as a [row][column] matrix."""
        return self.to_array().reshape(4, 4).T

    def row(self, r: int) -> bytes:
        return bytes(self.matrix[r])

    def column(self, c: int) -> bytes:
        return self.data[4 * c : 4 * c + 4]

    def apply(self, transform: Callable[..., np.ndarray], *args) -> "AesState":
        return AesState(transform(self.to_array(), *args).tobytes())

    def __xor__(self, other: "AesState") -> "AesState":
        return AesState(bytes(a ^ b for a, b in zip(self.data, other.data)))

    def __repr__(self) -> str:
        return f"AesState({self.data.hex()})"
