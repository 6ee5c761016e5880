import itertools
import math

import numpy as np
import pandas as pd
import polars as pl
import pytest

from aesha3._MasterKey import DerivationProfile
from aesha3._Variant import Variant
from aesha3.src import _aes_core, _bench, _cipher_modes
from aesha3.src._bench import (
    DEFAULT_SIZES,
    KB,
    RECORD_COLUMNS,
    TIMED_SECTION,
    BenchConfig,
    BenchRecord,
    bench_encrypt_sweep,
    bench_key_schedule,
    efficiency_ratio,
    emit_key_schedule_table,
    emit_plot_data,
    emit_table,
    format_size,
    key_schedule_table,
    make_payload,
    plot_data,
    records_from_csv,
    sweep_table,
    trend_check,
)
from aesha3.src._keyschedule import SubkeyProvider, expand_key_standard
from aesha3.src._published_timings import (
    SIZES,
    published_key_schedule,
    published_records,
    reported_efficiency,
)

SMALL_SIZES = (1 * KB, 2 * KB, 4 * KB, 8 * KB)


def fake_clock(step_s: float = 0.002):
    """Every call advances 2 ms, so each timed interval is exactly one step."""
    return itertools.count(0.0, step_s).__next__


def constant_ratio_records(ratio: float, sizes=SMALL_SIZES, std_ms=None):
    records = []
    for size in sizes:
        records.append(BenchRecord(size, "standard", Variant.A128, 10.0 * ratio, std_ms=std_ms))
        records.append(
            BenchRecord(size, "sha3-full", Variant.A128, 10.0, efficiency_ratio(10.0 * ratio, 10.0), std_ms=std_ms)
        )
    return records


@pytest.mark.parametrize(
    "t_standard, t_sha3, expected",
    [(1347.24, 15.68, 85.92), (17779.87, 16448.04, 1.08), (5.0, 5.0, 1.0)],
)
def test_efficiency_ratio(t_standard, t_sha3, expected):
    assert round(efficiency_ratio(t_standard, t_sha3), 2) == expected, (
        f"Expected {expected}, got {efficiency_ratio(t_standard, t_sha3)}"
    )


@pytest.mark.parametrize("t_standard, t_sha3", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (math.nan, 1.0)])
def test_efficiency_ratio_rejects_non_positive(t_standard, t_sha3):
    with pytest.raises(ValueError):
        efficiency_ratio(t_standard, t_sha3)


def test_published_aes128_efficiency_reproduces():
    recomputed = {
        r.size: r.efficiency
        for r in published_records("i7")
        if r.variant is Variant.A128 and not r.is_baseline
    }
    reported = reported_efficiency("i7")
    reported = reported[reported["variant"] == 128].set_index("size")["efficiency"]
    for size in SIZES:
        assert abs(recomputed[size] - reported[size]) <= 0.011, (
            f"Expected {reported[size]} at {format_size(size)}, got {recomputed[size]:.4f}"
        )


def test_format_size():
    assert [format_size(s) for s in (512, 1024, 3 * KB, 16 * KB * KB)] == ["512 B", "1 KB", "3 KB", "16 MB"]


def test_default_sizes():
    assert len(DEFAULT_SIZES) == 15, f"Expected 15 sizes, got {len(DEFAULT_SIZES)}"
    assert DEFAULT_SIZES[0] == KB and DEFAULT_SIZES[-1] == 16 * KB * KB


def test_sweep_table_compact_layout():
    table = sweep_table(published_records("i7"))
    assert table.shape == (15, 7), f"Expected 15 x 7, got {table.shape}"
    assert list(table.columns[:3]) == [
        "File Size",
        "Total Time AESHA3-128 (ms)",
        "Efficiency of AESHA3-128 (X)",
    ], f"Got {list(table.columns[:3])}"
    assert table["File Size"].iloc[0] == "1 KB"


def test_sweep_table_wide_layout():
    table = sweep_table(published_records("rpi4"), layout="wide")
    assert table.shape == (15, 10), f"Expected 15 x 10, got {table.shape}"
    assert table.columns[1] == "Total Time AES-128 (ms)", f"Got {table.columns[1]}"
    assert table["Total Time AES-128 (ms)"].iloc[0] == pytest.approx(6021.61)


def test_sweep_table_rejects_unknown_layout():
    with pytest.raises(ValueError):
        sweep_table(published_records("i7"), layout="landscape")


def test_emit_table_markdown():
    md = emit_table(published_records("i7"))
    lines = md.strip().splitlines()
    assert len(lines) == 17, f"Expected header, rule and 15 rows, got {len(lines)}"
    assert lines[0].count("|") == 8, "Expected 7 columns"
    assert "85.92" in lines[2], f"Expected the 1 KB efficiency in {lines[2]}"


def test_emit_table_rejects_empty_and_unknown_format():
    with pytest.raises(ValueError):
        emit_table([])
    with pytest.raises(ValueError):
        emit_table(published_records("i7"), format="xlsx")


def test_csv_round_trip():
    records = published_records("i7")
    parsed = records_from_csv(emit_table(records, format="csv"))
    assert parsed == records, "Expected the CSV to parse back to the same records"


def test_csv_header():
    csv = emit_table(published_records("i7"), format="csv")
    assert csv.splitlines()[0] == ",".join(RECORD_COLUMNS), f"Got {csv.splitlines()[0]}"


def test_tables_accept_polars_frames():
    records = published_records("i7")
    frame = pl.DataFrame([r.to_dict() for r in records])
    assert sweep_table(frame).shape == (15, 7)


def test_plot_data():
    df = plot_data(published_records("i7"))
    assert len(df) == 45, f"Expected 15 sizes x 3 variants, got {len(df)}"
    assert list(df.columns) == ["size", "variant", "provider", "efficiency"]
    assert emit_plot_data(published_records("i7")).startswith("size,variant,provider,efficiency")


def test_key_schedule_tables():
    table = key_schedule_table(published_key_schedule("i7"), host="i7")
    assert table.loc[0, "AES-128"] == 1334.31
    assert table.loc[0, "AESHA3-256"] == 1.237
    md = emit_key_schedule_table(published_key_schedule("rpi4"), host="rpi4")
    assert "5996.36" in md


@pytest.mark.parametrize("host", ["i7", "rpi4"])
def test_trend_check_passes_on_published_sweeps(host):
    verdict = trend_check(published_records(host))
    assert verdict.status == "pass", f"Expected pass, got {verdict.status}: {verdict.findings}"
    assert len(verdict.ratios) == 3


def test_trend_check_constant_ratio_passes():
    assert trend_check(constant_ratio_records(1.0)).passed


def test_trend_check_rising_ratio_fails():
    records = constant_ratio_records(1.2)
    last = records[-1]
    records[-2] = BenchRecord(last.size, "standard", Variant.A128, 10.0 * 1.2 * 1.1)
    records[-1] = BenchRecord(last.size, "sha3-full", Variant.A128, 10.0, 1.2 * 1.1)
    verdict = trend_check(records)
    assert verdict.status == "fail", f"Expected fail, got {verdict.status}"
    assert any("rose" in f for f in verdict.findings), f"Got {verdict.findings}"


def test_trend_check_ratio_below_one_fails():
    verdict = trend_check(constant_ratio_records(0.8))
    assert verdict.status == "fail", f"Expected fail, got {verdict.status}"


def test_trend_check_noisy_violation_is_inconclusive():
    verdict = trend_check(constant_ratio_records(0.8, std_ms=2.0))
    assert verdict.status == "inconclusive", f"Expected inconclusive, got {verdict.status}"


def test_trend_check_needs_four_sizes():
    with pytest.raises(ValueError):
        trend_check(constant_ratio_records(1.0, sizes=SMALL_SIZES[:3]))


def test_trend_check_needs_sha3_rows():
    with pytest.raises(ValueError):
        trend_check([r for r in constant_ratio_records(1.0) if r.is_baseline])


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"profiles": ["sha3-full"]}, ValueError),
        ({"iterations": 0}, ValueError),
        ({"iterations": 1.5}, TypeError),
        ({"repetitions": 0}, ValueError),
        ({"warmup": -1}, ValueError),
        ({"chunk_bytes": 100}, ValueError),
        ({"sizes": [2048, 1024]}, ValueError),
        ({"sizes": [0, 1024]}, ValueError),
        ({"variants": []}, ValueError),
        ({"variants": [512]}, ValueError),
        ({"sponge_backend": "gpu"}, ValueError),
        ({"sponge_backend": "native"}, ValueError),
        ({"profiles": ["standard", "sha3-shake", "sha3-full"], "sponge_backend": "native"}, ValueError),
        ({"clock": 3}, TypeError),
    ],
)
def test_bench_config_validation(kwargs, error):
    with pytest.raises(error):
        BenchConfig(**kwargs)


def test_bench_config_normalizes_inputs():
    cfg = BenchConfig(variants=["128", 256], profiles=["standard", "sha3-shake"], sponge_backend="native")
    assert cfg.variants == (Variant.A128, Variant.A256)
    assert cfg.sha3_profiles == (DerivationProfile.SHA3_SHAKE,)
    assert cfg.provider(DerivationProfile.SHA3_SHAKE).name == "sha3-shake-native"
    assert cfg.provider(DerivationProfile.STANDARD).name == "standard"


def test_make_payload_is_reproducible():
    assert make_payload(1024, 7) == make_payload(1024, 7)
    assert make_payload(1024, 7) != make_payload(1024, 8)
    assert len(make_payload(3000, 1)) == 3000


@pytest.fixture
def small_config():
    return BenchConfig(
        variants=[Variant.A128],
        iterations=5,
        sizes=SMALL_SIZES,
        warmup=0,
        seed=123,
        repetitions=1,
        clock=fake_clock(),
    )


def test_key_schedule_mean_with_fake_clock(small_config):
    df = bench_key_schedule(small_config)
    assert len(df) == 2, f"Expected one row per provider, got {len(df)}"
    assert df["mean_ms"].tolist() == pytest.approx([2.0, 2.0]), f"Got {df['mean_ms'].tolist()}"
    assert df["clock_resolution_s"].isna().all(), "Expected no resolution for an injected clock"
    assert (df["seed"] == 123).all()
    assert set(df["label"]) == {"AES-128", "AESHA3-128"}


def test_key_schedule_uses_one_clock_pair_per_iteration(small_config):
    calls = []

    def clock():
        calls.append(1)
        return len(calls) * 0.001

    small_config.clock = clock
    bench_key_schedule(small_config)
    assert len(calls) == 2 * 5 * 2, f"Expected 20 clock reads, got {len(calls)}"


def test_key_schedule_providers_see_the_same_keys(small_config, monkeypatch):
    seen = {}

    def derive(self, mk):
        seen.setdefault(self.profile, []).append(mk)
        return expand_key_standard(mk)

    monkeypatch.setattr(SubkeyProvider, "derive", derive)
    bench_key_schedule(small_config)
    assert seen[DerivationProfile.STANDARD] == seen[DerivationProfile.SHA3_FULL]
    assert len(set(k.data for k in seen[DerivationProfile.STANDARD])) == 5


def test_key_schedule_encrypts_nothing(small_config, monkeypatch):
    def forbidden(*args, **kwargs):
        raise AssertionError("encrypt_blocks called during the key-schedule benchmark")

    for module in (_bench, _cipher_modes, _aes_core):
        monkeypatch.setattr(module, "encrypt_blocks", forbidden)
    bench_key_schedule(small_config)


def test_sweep_with_fake_clock(small_config):
    records = bench_encrypt_sweep(small_config)
    assert len(records) == 8, f"Expected 4 sizes x 2 providers, got {len(records)}"
    assert [r.size for r in records[::2]] == list(SMALL_SIZES)
    for r in records:
        assert r.total_ms == pytest.approx(2.0)
        assert r.efficiency == pytest.approx(1.0)
        assert r.error is None
    assert trend_check(records).passed


def test_sweep_records_failures_and_continues(small_config, monkeypatch):
    real = _bench.make_payload

    def flaky(size, seed):
        if size == 2 * KB:
            raise MemoryError("no room")
        return real(size, seed)

    monkeypatch.setattr(_bench, "make_payload", flaky)
    records = bench_encrypt_sweep(small_config)
    failed = [r for r in records if r.error is not None]
    assert len(failed) == 2 and all(r.size == 2 * KB for r in failed), f"Got {failed}"
    assert all(math.isnan(r.total_ms) for r in failed)
    assert len(records) == 8
    table = sweep_table(records)
    assert math.isnan(table.loc[1, "Total Time AESHA3-128 (ms)"])


def test_timed_sections_hold_the_lock(small_config):
    held = []

    def clock():
        held.append(TIMED_SECTION.locked())
        return len(held) * 0.001

    small_config.clock = clock
    small_config.parallel_payloads = True
    records = bench_encrypt_sweep(small_config)
    assert held and all(held), "Expected every clock read inside the timed section"
    assert [r.size for r in records[::2]] == list(SMALL_SIZES), "Expected records in size order"


def test_sweep_payloads_match_across_providers(small_config, monkeypatch):
    seen = []

    def record(payload, sched, chunk_bytes):
        seen.append((sched.profile, payload))

    monkeypatch.setattr(_bench, "_encrypt_payload", record)
    bench_encrypt_sweep(small_config)
    by_profile = {}
    for profile, payload in seen:
        by_profile.setdefault(profile, []).append(payload)
    assert by_profile["standard"] == by_profile["sha3-full"]


def test_records_frame_round_trip_through_pandas():
    records = constant_ratio_records(1.0)
    df = pd.DataFrame([r.to_dict() for r in records])
    assert emit_table(df, format="csv") == emit_table(records, format="csv")


@pytest.mark.slow
def test_real_sweep_trend_is_not_a_failure():
    cfg = BenchConfig(
        variants=[Variant.A128],
        profiles=["standard", "sha3-shake"],
        sizes=[KB * 2**i for i in range(7)],
        warmup=20,
        seed=1,
        repetitions=5,
        sponge_backend="native",
    )
    records = bench_encrypt_sweep(cfg)
    verdict = trend_check(records)
    assert verdict.status in ("pass", "inconclusive"), f"Got {verdict.status}: {verdict.findings}"
    assert all(r.clock_resolution_s is not None for r in records)
    assert all(np.isfinite(r.total_ms) for r in records)


def test_real_key_schedule_runs():
    cfg = BenchConfig(variants=[Variant.A256], iterations=3, warmup=1, seed=4)
    df = bench_key_schedule(cfg)
    assert (df["mean_ms"] > 0).all()
