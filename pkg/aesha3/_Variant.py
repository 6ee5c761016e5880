from enum import Enum


class Variant(Enum):
    """
    The three AES key sizes. The value is the master-key size in bits.

    Every derived quantity (rounds, number of round keys, total subkey bits) comes
    from the key size alone; round keys are always 128 bits wide.
    """

    A128 = 128
    A192 = 192
    A256 = 256

    @property
    def key_bytes(self) -> int:
        return self.value // 8

    @property
    def key_words(self) -> int:
        """Number of 32-bit words in the master key (Nk)."""
        return self.value // 32

    @property
    def rounds(self) -> int:
        """Number of cipher rounds (Nr): 10, 12 or 14."""
        return self.key_words + 6

    @property
    def n_round_keys(self) -> int:
        """One round key per round plus the whitening key."""
        return self.rounds + 1

    @property
    def subkey_bits(self) -> int:
        return self.n_round_keys * 128

    @classmethod
    def from_bits(cls, bits) -> "Variant":
        """
        Looks a variant up by key size. Accepts ints or strings such as "128",
        "A128" or "aes-128".
        """
        if isinstance(bits, cls):
            return bits
        text = str(bits).strip().upper().replace("AES-", "").lstrip("A")
        try:
            return cls(int(text))
        except ValueError as err:
            raise ValueError(
                f"Variant must be one of 128, 192 or 256. Got {bits!r}."
            ) from err

    @classmethod
    def from_key_length(cls, n_bytes: int) -> "Variant":
        for variant in cls:
            if variant.key_bytes == n_bytes:
                return variant
        raise ValueError(
            f"Master key must be 16, 24 or 32 bytes long. Got {n_bytes} bytes."
        )

    def label(self, sha3: bool = False) -> str:
        return f"{'AESHA3' if sha3 else 'AES'}-{self.value}"
