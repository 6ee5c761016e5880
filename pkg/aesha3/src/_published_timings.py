"""
Reference timings measured on two hosts (Python 3.10).

The figures are kept as reported, including the efficiency column, so they can be
compared with what `efficiency_ratio` recomputes from the two time columns. A few
reported efficiencies do not follow from their own times (e.g. i7 AESHA3-192 at
128 KB) and the RPi AES-256 1 MB times break the column's growth; both are kept
verbatim.
"""

from typing import Dict, List, Tuple

import pandas as pd

from aesha3._MasterKey import DerivationProfile
from aesha3._Variant import Variant
from aesha3.src._bench import KB, BenchRecord, efficiency_ratio

HOSTS = {
    "i7": "Intel Core i7 6th generation CPU, Ubuntu 22.04 LTS",
    "rpi4": "Raspberry Pi 4B 8GB RAM, Raspbian OS",
}

SIZES = tuple(KB * 2**i for i in range(15))

# mean ms per schedule over 10,000 random keys: (standard, sha3)
KEY_SCHEDULE_MS: Dict[str, Dict[int, Tuple[float, float]]] = {
    "i7": {128: (1334.31, 1.21), 192: (1403.26, 1.231), 256: (1442.18, 1.237)},
    "rpi4": {128: (5996.36, 4.55), 192: (6084.61, 4.74), 256: (6205.45, 4.69)},
}

# per size, 1 KB to 16 MB: (standard total ms, sha3 total ms, reported efficiency)
SWEEP_MS: Dict[str, Dict[int, List[Tuple[float, float, float]]]] = {
    "i7": {
        128: [
            (1347.24, 15.68, 85.92),
            (1355.44, 23.69, 57.21),
            (1373.93, 42.29, 32.49),
            (1413.34, 81.60, 17.32),
            (1473.12, 141.49, 10.41),
            (1604.57, 272.77, 5.88),
            (1881.59, 550.00, 3.42),
            (2402.95, 1071.30, 2.24),
            (3388.58, 2056.83, 1.65),
            (5461.41, 4129.83, 1.32),
            (9649.51, 8317.80, 1.16),
            (17779.87, 16448.04, 1.08),
            (35315.09, 33984.14, 1.04),
            (67805.52, 66472.24, 1.02),
            (134256.81, 132920.93, 1.01),
        ],
        192: [
            (1417.22, 19.38, 73.12),
            (1424.68, 26.26, 54.25),
            (1448.18, 49.99, 28.97),
            (1491.14, 92.22, 16.17),
            (1566.51, 168.31, 9.31),
            (1729.70, 330.97, 5.22),
            (2044.98, 646.93, 3.16),
            (2656.92, 1257.83, 2.43),
            (3892.48, 2493.95, 1.56),
            (6398.85, 4999.23, 1.28),
            (12831.64, 11432.31, 1.12),
            (22338.69, 20939.92, 1.06),
            (40327.12, 38924.27, 1.03),
            (80735.64, 79330.45, 1.02),
            (160978.36, 159569.76, 1.01),
        ],
        256: [
            (1464.15, 22.70, 64.5),
            (1476.69, 34.88, 42.33),
            (1509.12, 68.89, 21.91),
            (1548.31, 106.64, 14.52),
            (1665.26, 222.89, 7.47),
            (1861.00, 418.86, 4.44),
            (2225.71, 783.58, 2.84),
            (2903.74, 1462.38, 1.98),
            (4358.85, 2917.59, 1.49),
            (7278.61, 5836.77, 1.25),
            (13094.25, 11653.24, 1.12),
            (24701.81, 23259.94, 1.062),
            (57461.65, 56015.52, 1.025),
            (114207.08, 112728.99, 1.013),
            (219933.49, 218440.19, 1.006),
        ],
    },
    "rpi4": {
        128: [
            (6021.61, 34.22, 175.97),
            (6044.45, 56.67, 106.66),
            (6088.72, 101.13, 60.21),
            (6185.17, 197.83, 31.27),
            (6351.80, 364.67, 17.42),
            (6700.51, 713.00, 9.40),
            (7393.14, 1406.06, 5.26),
            (8790.51, 2803.58, 3.14),
            (11656.09, 5668.24, 2.06),
            (17375.71, 11388.39, 1.53),
            (28641.21, 22653.57, 1.26),
            (51266.41, 45279.09, 1.13),
            (98149.74, 92156.76, 1.07),
            (187024.09, 180998.08, 1.03),
            (368645.63, 362567.91, 1.02),
        ],
        192: [
            (6109.35, 37.62, 162.40),
            (6131.04, 60.83, 100.79),
            (6174.92, 103.58, 59.61),
            (6263.59, 190.93, 32.81),
            (6445.58, 373.80, 17.24),
            (6853.98, 782.73, 8.76),
            (7722.23, 1651.22, 4.68),
            (9437.66, 3366.87, 2.80),
            (12743.25, 6675.07, 1.91),
            (19583.15, 13510.26, 1.45),
            (32821.73, 26749.37, 1.23),
            (59780.93, 53657.67, 1.11),
            (111105.16, 104965.89, 1.06),
            (218761.47, 212593.99, 1.03),
            (415755.80, 409473.02, 1.02),
        ],
        256: [
            (6230.05, 41.73, 149.29),
            (6258.88, 71.06, 88.08),
            (6319.90, 131.98, 47.89),
            (6445.41, 256.86, 25.09),
            (6685.70, 497.24, 13.45),
            (7158.61, 970.84, 7.37),
            (8126.02, 1938.22, 4.19),
            (10078.41, 3891.07, 2.59),
            (13874.86, 7689.83, 1.80),
            (21684.56, 15499.15, 1.40),
            (28572.75, 22384.93, 1.28),
            (67857.84, 61664.73, 1.10),
            (129221.49, 123033.96, 1.05),
            (255063.21, 248797.29, 1.03),
            (499292.89, 493065.41, 1.01),
        ],
    },
}


def _check_host(host: str) -> str:
    if host not in HOSTS:
        raise ValueError(f"host must be one of {', '.join(HOSTS)}. Got {host!r}.")
    return host


def published_records(host: str, profile: DerivationProfile = DerivationProfile.SHA3_FULL) -> List[BenchRecord]:
    """
    The sweep of `host` as `BenchRecord`s. Efficiencies are recomputed from the
    two time columns, not copied from the reported column.
    """
    host = _check_host(host)
    standard = DerivationProfile.STANDARD.value
    records = []
    for i, size in enumerate(SIZES):
        for bits, rows in SWEEP_MS[host].items():
            t_std, t_sha3, _ = rows[i]
            variant = Variant.from_bits(bits)
            records.append(BenchRecord(size, standard, variant, t_std))
            records.append(
                BenchRecord(size, profile.value, variant, t_sha3, efficiency_ratio(t_std, t_sha3))
            )
    return records


def reported_efficiency(host: str) -> pd.DataFrame:
    """The efficiency column as printed, one row per (size, variant)."""
    host = _check_host(host)
    return pd.DataFrame(
        [
            {"size": size, "variant": bits, "efficiency": rows[i][2]}
            for bits, rows in SWEEP_MS[host].items()
            for i, size in enumerate(SIZES)
        ]
    )


def published_key_schedule(host: str) -> pd.DataFrame:
    """Key-schedule means of `host` in the layout `bench_key_schedule` returns."""
    host = _check_host(host)
    rows = []
    for bits, (t_std, t_sha3) in KEY_SCHEDULE_MS[host].items():
        variant = Variant.from_bits(bits)
        for profile, mean_ms in (
            (DerivationProfile.STANDARD, t_std),
            (DerivationProfile.SHA3_FULL, t_sha3),
        ):
            rows.append(
                {
                    "provider": profile.value,
                    "variant": bits,
                    "label": variant.label(sha3=profile.is_sha3),
                    "iterations": 10_000,
                    "mean_ms": mean_ms,
                }
            )
    return pd.DataFrame(rows)
