from ._exceptions import (  # noqa: F401
    AeshaError,
    InputOutputError,
    MalformedCiphertextError,
    MalformedKeyError,
    MalformedPaddingError,
    UsageError,
)
from ._Variant import Variant  # noqa: F401
from ._AesState import AesState  # noqa: F401
from ._KeccakState import KeccakState, SpongeParams, SqueezeProfile  # noqa: F401
from ._MasterKey import DerivationProfile, MasterKey  # noqa: F401
from ._RoundKeySchedule import RoundKeySchedule  # noqa: F401
from .src import (  # noqa: F401
    BenchConfig,
    BenchRecord,
    bench_encrypt_sweep,
    bench_key_schedule,
    compare_providers,
    decrypt_file,
    derive_schedule,
    derive_subkeys_sha3,
    ecb_decrypt,
    ecb_encrypt,
    emit_table,
    encrypt_file,
    expand_key_standard,
    provider_for,
    trend_check,
)
from ._BenchReport import BenchReport  # noqa: F401
