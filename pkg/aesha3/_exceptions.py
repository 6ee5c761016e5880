"""
Exception types raised by aesha3. Each one carries the exit status the command line
reports for it, so the CLI can map failures without a lookup table.
"""

from typing import Optional


class AeshaError(Exception):
    """Base class for every error raised on purpose by aesha3."""

    exit_code: int = 1


class UsageError(AeshaError):
    """Invalid flag combination or configuration value."""

    exit_code = 2


class InputOutputError(AeshaError):
    """A file could not be read or written."""

    exit_code = 3

    def __init__(self, message: str, path: Optional[str] = None) -> None:
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path


class MalformedKeyError(AeshaError, ValueError):
    """Master key with bad hex, wrong length or an empty key file."""

    exit_code = 4


class MalformedCiphertextError(AeshaError, ValueError):
    """Ciphertext whose length is not a positive multiple of the block size."""

    exit_code = 4


class MalformedPaddingError(AeshaError, ValueError):
    """Decrypted data whose PKCS#7 suffix is invalid."""

    exit_code = 4
