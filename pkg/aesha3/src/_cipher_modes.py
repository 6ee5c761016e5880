"""
ECB mode with PKCS#7 padding, over in-memory payloads and streamed files.

ECB leaks equal plaintext blocks as equal ciphertext blocks. It is here because the
timing experiment encrypts payloads that way, not as a recommendation.
"""

import logging
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterator, Optional, Union

import numpy as np
from dotenv import dotenv_values

from aesha3._exceptions import (
    InputOutputError,
    MalformedCiphertextError,
    MalformedPaddingError,
    UsageError,
)
from aesha3._MasterKey import DerivationProfile
from aesha3._RoundKeySchedule import RoundKeySchedule
from aesha3._Variant import Variant
from aesha3.src._aes_core import decrypt_blocks, encrypt_blocks

BLOCK_BYTES = 16
DEFAULT_CHUNK_BYTES = 64 * 1024
SIDECAR_SUFFIX = ".meta"

PathLike = Union[str, Path]


def pad(data: bytes) -> bytes:
    """
    PKCS#7: appends n copies of byte n, 1 <= n <= 16. Input that is already a
    whole number of blocks gets a full extra block of 0x10.
    """
    n = BLOCK_BYTES - len(data) % BLOCK_BYTES
    return bytes(data) + bytes([n]) * n


def unpad(data: bytes) -> bytes:
    """
    Strips PKCS#7 padding.

    Raises
    ------
    MalformedPaddingError
        If the length is not a positive multiple of 16, or the last byte is 0,
        larger than 16, or not repeated as many times as its value.
    """
    if not data or len(data) % BLOCK_BYTES:
        raise MalformedPaddingError(
            f"Padded data must be a positive multiple of {BLOCK_BYTES} bytes. Got {len(data)}."
        )
    n = data[-1]
    if not 1 <= n <= BLOCK_BYTES or data[-n:] != bytes([n]) * n:
        raise MalformedPaddingError("Invalid PKCS#7 padding.")
    return bytes(data[:-n])


def _to_blocks(data: bytes) -> np.ndarray:
    return np.frombuffer(data, dtype=np.uint8).reshape(-1, BLOCK_BYTES)


def _encrypt_aligned(data: bytes, sched: RoundKeySchedule) -> bytes:
    if not data:
        return b""
    return encrypt_blocks(_to_blocks(data), sched).tobytes()


def _decrypt_aligned(data: bytes, sched: RoundKeySchedule) -> bytes:
    if not data:
        return b""
    return decrypt_blocks(_to_blocks(data), sched).tobytes()


def _check_ciphertext_length(n: int) -> None:
    if n == 0 or n % BLOCK_BYTES:
        raise MalformedCiphertextError(
            f"Ciphertext length must be a positive multiple of {BLOCK_BYTES} bytes. Got {n}."
        )


def ecb_encrypt(data: bytes, sched: RoundKeySchedule) -> bytes:
    """
    Pads `data` and encrypts every block independently.

    The output is always `len(data) + 16 - len(data) % 16` bytes long, e.g. 1040
    bytes for a 1024-byte payload.
    """
    return _encrypt_aligned(pad(data), sched)


def ecb_decrypt(data: bytes, sched: RoundKeySchedule) -> bytes:
    """
    Decrypts every block and strips the padding.

    Raises
    ------
    MalformedCiphertextError
        If the length is not a positive multiple of 16.
    MalformedPaddingError
        If the decrypted padding is invalid (wrong key, profile or corrupted data).
    """
    _check_ciphertext_length(len(data))
    return unpad(_decrypt_aligned(bytes(data), sched))


def _check_chunk_bytes(chunk_bytes: int) -> None:
    if not isinstance(chunk_bytes, int):
        raise TypeError(f"chunk_bytes must be an integer, not {type(chunk_bytes)}.")
    if chunk_bytes <= 0 or chunk_bytes % BLOCK_BYTES:
        raise ValueError(
            f"chunk_bytes must be a positive multiple of {BLOCK_BYTES}. Got {chunk_bytes}."
        )


def _check_distinct(path: Path, out_path: Path) -> None:
    if out_path.resolve() == path.resolve():
        raise UsageError(f"Output {out_path} is the input file; choose another --out.")


@contextmanager
def _atomic_output(out_path: Path) -> Iterator[BinaryIO]:
    """
    Yields a temporary file next to `out_path` and renames it into place on
    success. On any error the temporary file is removed and `out_path` is left as
    it was.
    """
    fd, tmp = tempfile.mkstemp(dir=out_path.parent, prefix=f".{out_path.name}.", suffix=".part")
    try:
        with os.fdopen(fd, "wb") as fout:
            yield fout
        os.replace(tmp, out_path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def encrypt_file(
    path: PathLike,
    sched: RoundKeySchedule,
    chunk_bytes: int = DEFAULT_CHUNK_BYTES,
    out_path: Optional[PathLike] = None,
    write_metadata: bool = True,
) -> Path:
    """
    Streams `path` through ECB encryption, one chunk in memory at a time.

    Parameters
    ----------
    path : str or Path
        The plaintext file.
    sched : RoundKeySchedule
        Round keys to encrypt with.
    chunk_bytes : int, optional
        Read size, a positive multiple of 16. Defaults to 64 KiB.
    out_path : str or Path, optional
        Ciphertext destination. Defaults to `path` + ".enc".
    write_metadata : bool, optional
        Whether to write the `<out_path>.meta` sidecar. Defaults to True.

    Returns
    -------
    Path
        The ciphertext path. Its contents equal `ecb_encrypt` of the whole file.

    Raises
    ------
    InputOutputError
        If either file cannot be opened, read or written. A failed run leaves no
        partial ciphertext behind.
    UsageError
        If `out_path` is `path` itself.
    """
    _check_chunk_bytes(chunk_bytes)
    path = Path(path)
    out_path = Path(out_path) if out_path is not None else path.with_name(path.name + ".enc")
    _check_distinct(path, out_path)

    try:
        with open(path, "rb") as fin, _atomic_output(out_path) as fout:
            while True:
                chunk = fin.read(chunk_bytes)
                # chunk_bytes is block aligned, so only a short read needs padding;
                # a file ending on a chunk boundary gets its pad block from the empty read
                if len(chunk) == chunk_bytes:
                    fout.write(_encrypt_aligned(chunk, sched))
                else:
                    fout.write(_encrypt_aligned(pad(chunk), sched))
                    break
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), err.filename or str(path)) from err

    if write_metadata:
        write_sidecar(out_path, CipherMetadata.for_schedule(sched))
    logging.info(f"Encrypted {path} -> {out_path}")
    return out_path


def decrypt_file(
    path: PathLike,
    sched: RoundKeySchedule,
    chunk_bytes: int = DEFAULT_CHUNK_BYTES,
    out_path: Optional[PathLike] = None,
) -> Path:
    """
    Streaming inverse of `encrypt_file`; only the final chunk is unpadded.

    Raises
    ------
    MalformedCiphertextError
        If the file size is not a positive multiple of 16.
    MalformedPaddingError
        If the final block does not carry valid padding.
    InputOutputError
        If either file cannot be opened, read or written. A failed run leaves no
        partial plaintext behind.
    UsageError
        If `out_path` is `path` itself.
    """
    _check_chunk_bytes(chunk_bytes)
    path = Path(path)
    if out_path is None:
        out_path = path.with_suffix("") if path.suffix == ".enc" else path.with_name(path.name + ".dec")
    out_path = Path(out_path)
    _check_distinct(path, out_path)

    try:
        _check_ciphertext_length(os.path.getsize(path))
        with open(path, "rb") as fin, _atomic_output(out_path) as fout:
            plain = _decrypt_aligned(fin.read(chunk_bytes), sched)
            while True:
                nxt = fin.read(chunk_bytes)
                if not nxt:
                    fout.write(unpad(plain))
                    break
                fout.write(plain)
                plain = _decrypt_aligned(nxt, sched)
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), err.filename or str(path)) from err

    logging.info(f"Decrypted {path} -> {out_path}")
    return out_path


@dataclass(frozen=True)
class CipherMetadata:
    """What a reader needs to decrypt a ciphertext file, besides the key."""

    variant: Variant
    profile: DerivationProfile
    padding: str = "pkcs7"
    mode: str = "ecb"

    @classmethod
    def for_schedule(cls, sched: RoundKeySchedule) -> "CipherMetadata":
        profile = DerivationProfile.parse(sched.profile or DerivationProfile.STANDARD)
        return cls(sched.variant, profile)

    def to_text(self) -> str:
        return (
            f"variant={self.variant.value}\n"
            f"profile={self.profile.value}\n"
            f"padding={self.padding}\n"
            f"mode={self.mode}\n"
        )


def sidecar_path(cipher_path: PathLike) -> Path:
    cipher_path = Path(cipher_path)
    return cipher_path.with_name(cipher_path.name + SIDECAR_SUFFIX)


def write_sidecar(cipher_path: PathLike, meta: CipherMetadata) -> Path:
    target = sidecar_path(cipher_path)
    try:
        target.write_text(meta.to_text(), encoding="utf-8")
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), str(target)) from err
    return target


def read_sidecar(cipher_path: PathLike) -> Optional[CipherMetadata]:
    """Reads `<cipher_path>.meta`; returns None when there is no sidecar."""
    target = sidecar_path(cipher_path)
    if not target.exists():
        return None
    values = dotenv_values(target)
    try:
        return CipherMetadata(
            variant=Variant.from_bits(values["variant"]),
            profile=DerivationProfile.parse(values["profile"]),
            padding=values.get("padding") or "pkcs7",
            mode=values.get("mode") or "ecb",
        )
    except (KeyError, TypeError, ValueError) as err:
        raise MalformedCiphertextError(f"{target}: unreadable metadata ({err}).") from err
