"""
Subkey providers: the FIPS-197 key expansion and the SHA-3 sponge derivation.

Both turn a `MasterKey` into a `RoundKeySchedule` and are interchangeable under
the block cipher. `provider_for` returns the provider for a `DerivationProfile`.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

from aesha3._exceptions import InputOutputError, MalformedKeyError
from aesha3._KeccakState import SHAKE256_PARAMS, SpongeParams, SqueezeProfile
from aesha3._MasterKey import DerivationProfile, MasterKey
from aesha3._RoundKeySchedule import RoundKeySchedule
from aesha3._Variant import Variant
from aesha3.src._gf import SBOX, xtime
from aesha3.src._keccak import absorb, shake256_native, shake256_xof, squeeze

_SBOX = SBOX.tolist()


def _round_constants(n: int) -> List[int]:
    rcon, value = [], 0x01
    for _ in range(n):
        rcon.append(value)
        value = xtime(value)
    return rcon


RCON = _round_constants(10)
SPONGE_BACKENDS = ("pure", "native")


def _sub_word(word: int) -> int:
    return (
        (_SBOX[(word >> 24) & 0xFF] << 24)
        | (_SBOX[(word >> 16) & 0xFF] << 16)
        | (_SBOX[(word >> 8) & 0xFF] << 8)
        | _SBOX[word & 0xFF]
    )


def _rot_word(word: int) -> int:
    return ((word << 8) | (word >> 24)) & 0xFFFFFFFF


def subkey_bits_required(variant: Union[Variant, int, str]) -> int:
    """
    Total round-key bits a variant consumes: 1408, 1664 or 1920.

    Examples
    --------
    >>> subkey_bits_required(Variant.A192)
    1664
    """
    return Variant.from_bits(variant).subkey_bits


def expand_key_words(mk: MasterKey) -> List[int]:
    """The 44, 52 or 60 expanded 32-bit words w[0..] of FIPS-197."""
    nk = mk.variant.key_words
    total = 4 * mk.variant.n_round_keys
    words = [int.from_bytes(mk.data[4 * i : 4 * i + 4], "big") for i in range(nk)]
    for i in range(nk, total):
        temp = words[i - 1]
        if i % nk == 0:
            temp = _sub_word(_rot_word(temp)) ^ (RCON[i // nk - 1] << 24)
        elif nk > 6 and i % nk == 4:
            temp = _sub_word(temp)
        words.append(words[i - nk] ^ temp)
    return words


def expand_key_standard(mk: MasterKey) -> RoundKeySchedule:
    """
    FIPS-197 key expansion, grouped four words per round key.

    Parameters
    ----------
    mk : MasterKey
        16, 24 or 32-byte master key.

    Returns
    -------
    RoundKeySchedule
        11, 13 or 15 round keys; round key 0 is the first 128 bits of the master key.
    """
    material = b"".join(w.to_bytes(4, "big") for w in expand_key_words(mk))
    return RoundKeySchedule.from_bytes(
        mk.variant, material, DerivationProfile.STANDARD.value
    )


def derive_subkeys_sha3(
    mk: MasterKey,
    profile: DerivationProfile = DerivationProfile.SHA3_FULL,
    params: Optional[SpongeParams] = None,
    sponge_backend: str = "pure",
) -> RoundKeySchedule:
    """
    Derives every round key from a sponge over the raw master-key bytes.

    Parameters
    ----------
    mk : MasterKey
        The master key. Its bytes are absorbed as they are, with no encoding or salt.
    profile : DerivationProfile, optional
        SHA3_FULL squeezes whole 1600-bit states (Y0 is the post-absorb state, Y1
        the state after one more permutation); SHA3_SHAKE reads the SHAKE256 stream.
    params : Optional[SpongeParams], optional
        Sponge geometry for SHA3_FULL. Defaults to rate 1088 / capacity 512 with
        the 0x1F suffix. SHA3_SHAKE always uses the SHAKE256 geometry.
    sponge_backend : str, optional
        "pure" (default) uses this package's Keccak; "native" computes the
        SHA3_SHAKE stream with the interpreter's built-in SHAKE256.

    Returns
    -------
    RoundKeySchedule
        The squeezed bits cut into consecutive 128-bit keys, first slice first.
        The first key is the whitening key.

    Raises
    ------
    ValueError
        If `profile` is STANDARD, or the backend is unknown or not available for
        the profile.
    """
    profile = DerivationProfile.parse(profile)
    if not profile.is_sha3:
        raise ValueError(
            "derive_subkeys_sha3 only serves the sha3-full and sha3-shake profiles. "
            "Use expand_key_standard for the standard profile."
        )
    if sponge_backend not in SPONGE_BACKENDS:
        raise ValueError(
            f"sponge_backend must be one of {SPONGE_BACKENDS}. Got {sponge_backend!r}."
        )

    n_bits = mk.variant.subkey_bits
    if profile is DerivationProfile.SHA3_FULL:
        if sponge_backend == "native":
            raise ValueError(
                "The native backend cannot read the full sponge state. Use sponge_backend='pure'."
            )
        params = params or SHAKE256_PARAMS
        material = squeeze(
            absorb(mk.data, params), n_bits, params, SqueezeProfile.FULL_STATE
        )
    elif sponge_backend == "native":
        material = shake256_native(mk.data, n_bits)
    else:
        material = shake256_xof(mk.data, n_bits)

    return RoundKeySchedule.from_bytes(mk.variant, material, profile.value)


@dataclass(frozen=True)
class SubkeyProvider:
    """
    A key-schedule backend bound to a profile. Calling it derives a schedule.
    """

    profile: DerivationProfile = DerivationProfile.SHA3_FULL
    params: Optional[SpongeParams] = None
    sponge_backend: str = "pure"

    def __post_init__(self) -> None:
        object.__setattr__(self, "profile", DerivationProfile.parse(self.profile))

    def derive(self, mk: MasterKey) -> RoundKeySchedule:
        if self.profile is DerivationProfile.STANDARD:
            return expand_key_standard(mk)
        return derive_subkeys_sha3(mk, self.profile, self.params, self.sponge_backend)

    def __call__(self, mk: MasterKey) -> RoundKeySchedule:
        return self.derive(mk)

    @property
    def name(self) -> str:
        if self.sponge_backend == "native":
            return f"{self.profile.value}-native"
        return self.profile.value

    def label(self, variant: Variant) -> str:
        return variant.label(sha3=self.profile.is_sha3)


def provider_for(
    profile: Union[DerivationProfile, str], sponge_backend: str = "pure"
) -> SubkeyProvider:
    return SubkeyProvider(DerivationProfile.parse(profile), sponge_backend=sponge_backend)


def derive_schedule(
    mk: MasterKey, profile: Union[DerivationProfile, str] = DerivationProfile.SHA3_FULL
) -> RoundKeySchedule:
    return provider_for(profile).derive(mk)


def read_key_file(
    path: Union[str, Path], variant: Optional[Variant] = None
) -> List[MasterKey]:
    """
    Reads a key file: lowercase hex, one key per line, blank lines ignored.

    Raises
    ------
    InputOutputError
        If the file cannot be read.
    MalformedKeyError
        If the file holds no key, or a line is not a valid key (the message names
        the line).
    """
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as err:
        raise MalformedKeyError(f"{path}: key files must be ASCII hex.") from err
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), str(path)) from err

    keys = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            keys.append(MasterKey.from_hex(line, variant))
        except MalformedKeyError as err:
            raise MalformedKeyError(f"{path}, line {lineno}: {err}") from err
    if not keys:
        raise MalformedKeyError(f"{path}: no key found.")
    logging.debug(f"Read {len(keys)} key(s) from {path}")
    return keys


def write_key_file(path: Union[str, Path], keys: Sequence[MasterKey]) -> Path:
    path = Path(path)
    try:
        path.write_text("".join(f"{k.hex()}\n" for k in keys), encoding="ascii")
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), str(path)) from err
    return path
