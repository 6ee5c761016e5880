from ._keccak import (  # noqa: F401
    absorb,
    keccak_f,
    sha3_256,
    shake256_native,
    shake256_xof,
    squeeze,
)
from ._gf import gf_mul, xtime  # noqa: F401
from ._aes_core import (  # noqa: F401
    add_round_key,
    decrypt_block,
    decrypt_blocks,
    encrypt_block,
    encrypt_blocks,
    inv_mix_columns,
    inv_shift_rows,
    inv_sub_bytes,
    mix_columns,
    shift_rows,
    sub_bytes,
)
from ._keyschedule import (  # noqa: F401
    SubkeyProvider,
    derive_schedule,
    derive_subkeys_sha3,
    expand_key_standard,
    provider_for,
    read_key_file,
    subkey_bits_required,
    write_key_file,
)
from ._cipher_modes import (  # noqa: F401
    CipherMetadata,
    decrypt_file,
    ecb_decrypt,
    ecb_encrypt,
    encrypt_file,
    pad,
    read_sidecar,
    unpad,
    write_sidecar,
)
from ._randomness import (  # noqa: F401
    AvalancheTable,
    BitSample,
    TestReport,
    Verdict,
    avalanche_matrix,
    compare_providers,
    flip_rate,
    monobit_test,
    runs_test,
)
from ._bench import (  # noqa: F401
    BenchConfig,
    BenchRecord,
    TrendVerdict,
    bench_encrypt_sweep,
    bench_key_schedule,
    efficiency_ratio,
    emit_table,
    plot_data,
    records_from_csv,
    trend_check,
)
from ._config import load_bench_config  # noqa: F401
from ._to_pd import to_pd_df  # noqa: F401
