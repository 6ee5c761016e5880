import numpy as np
import pandas as pd
import pytest

from aesha3._MasterKey import DerivationProfile, MasterKey
from aesha3._Variant import Variant
from aesha3.src._keyschedule import derive_schedule
from aesha3.src._randomness import (
    REPORT_COLUMNS,
    BitSample,
    TestReport,
    Verdict,
    avalanche_matrix,
    compare_providers,
    flip_rate,
    monobit_test,
    random_master_keys,
    report_to_csv,
    report_to_markdown,
    report_to_text,
    runs_test,
)

POSITIONS = [0, 5, 64, 127]


def test_monobit_known_value():
    sample = BitSample.from_string("1" * 58 + "0" * 42)
    report = monobit_test(sample)
    assert report.statistic == pytest.approx(1.6), f"Expected 1.6, got {report.statistic}"
    assert report.p_value == pytest.approx(0.1096, abs=1e-4), f"Expected ~0.1096, got {report.p_value}"
    assert report.verdict is Verdict.PASS


def test_monobit_all_zero_fails():
    report = monobit_test(BitSample(np.zeros(1000, dtype=np.uint8)))
    assert report.verdict is Verdict.FAIL, f"Expected fail, got {report.verdict}"


def test_alternating_bits_pass_monobit_and_fail_runs():
    sample = BitSample.from_string("01" * 50)
    assert monobit_test(sample).p_value == pytest.approx(1.0)
    runs = runs_test(sample)
    assert runs.statistic == 100, f"Expected 100 runs, got {runs.statistic}"
    assert runs.verdict is Verdict.FAIL, f"Expected fail, got {runs.verdict}"


def test_runs_not_applicable_when_unbalanced():
    report = runs_test(BitSample(np.zeros(200, dtype=np.uint8)))
    assert report.verdict is Verdict.NOT_APPLICABLE, f"Expected not_applicable, got {report.verdict}"
    assert report.p_value is None
    assert report.statistic == 0.0, "Expected the statistic to be the proportion of ones"


def test_runs_passes_on_random_bits():
    bits = np.random.default_rng(2).integers(0, 2, 20000, dtype=np.uint8)
    report = runs_test(BitSample(bits))
    assert report.verdict is not Verdict.NOT_APPLICABLE


@pytest.mark.parametrize("test", [monobit_test, runs_test])
def test_short_samples_are_rejected(test):
    with pytest.raises(ValueError):
        test(BitSample.from_string("01" * 49))


def test_bit_sample_validation():
    with pytest.raises(ValueError):
        BitSample(np.array([], dtype=np.uint8))
    with pytest.raises(ValueError):
        BitSample(np.array([0, 1, 2]))
    with pytest.raises(ValueError):
        BitSample.from_string("012")


def test_bit_sample_from_bytes_msb_first():
    sample = BitSample.from_bytes(b"\x80\x01")
    assert sample.bits.tolist() == [1] + [0] * 14 + [1], f"Got {sample.bits.tolist()}"


def test_bit_sample_from_schedule():
    sched = derive_schedule(MasterKey(Variant.A128, bytes(16)), "sha3-full")
    sample = BitSample.from_schedule(sched)
    assert sample.n == 1408, f"Expected 1408 bits, got {sample.n}"
    assert sample.source == "sha3-full"


def test_report_validates_p_value():
    with pytest.raises(ValueError):
        TestReport("monobit", 1.0, 1.5, Verdict.PASS, 100)


def test_random_master_keys_are_reproducible():
    a = random_master_keys(Variant.A192, 5, seed=9)
    b = random_master_keys(Variant.A192, 5, seed=9)
    assert a == b, "Expected the same seed to give the same keys"
    assert all(k.variant is Variant.A192 for k in a)
    assert random_master_keys(Variant.A192, 5, seed=10) != a


def test_flip_rate_zero_mask():
    mk = MasterKey(Variant.A128, bytes(range(16)))
    assert flip_rate("sha3-full", mk, bytes(16)) == 0.0


def test_flip_rate_mask_length():
    with pytest.raises(ValueError):
        flip_rate("standard", MasterKey(Variant.A128, bytes(16)), bytes(8))


def test_standard_whitening_key_flips_one_bit():
    table = avalanche_matrix("standard", Variant.A128, trials=100, seed=1, positions=POSITIONS)
    np.testing.assert_allclose(table.round_key_rates[:, 0], 1 / 128)
    assert table.round_key_rates.shape == (len(POSITIONS), 11)


def test_sha3_avalanche_within_band():
    table = avalanche_matrix("sha3-full", Variant.A128, trials=100, seed=1, positions=POSITIONS)
    assert 0.45 <= table.mean <= 0.55, f"Expected a flip rate near 0.5, got {table.mean}"
    assert 0.4 <= table.round_key_rates[:, 0].mean() <= 0.6, "Expected rk0 to be well mixed too"


def test_avalanche_does_not_depend_on_workers():
    one = avalanche_matrix("sha3-full", Variant.A128, trials=100, seed=3, positions=[7])
    four = avalanche_matrix("sha3-full", Variant.A128, trials=100, seed=3, positions=[7], workers=4)
    np.testing.assert_array_equal(one.flip_rates, four.flip_rates)


def test_avalanche_frame():
    table = avalanche_matrix("standard", Variant.A128, trials=100, seed=1, positions=POSITIONS)
    df = table.to_frame()
    assert list(df.columns[:3]) == ["position", "flip_rate", "rk0"], f"Got {list(df.columns)}"
    assert len(df) == len(POSITIONS)


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"trials": 99}, ValueError),
        ({"trials": 100.0}, TypeError),
        ({"trials": 100, "positions": [128]}, ValueError),
    ],
)
def test_avalanche_argument_checks(kwargs, error):
    with pytest.raises(error):
        avalanche_matrix("standard", Variant.A128, **kwargs)


@pytest.fixture(scope="module")
def comparison():
    return compare_providers(Variant.A128, trials=100, seed=42, avalanche_positions=POSITIONS)


def test_compare_providers_layout(comparison):
    assert list(comparison.columns) == REPORT_COLUMNS, f"Got {list(comparison.columns)}"
    assert len(comparison) == 12, f"Expected 12 rows, got {len(comparison)}"
    assert set(comparison["provider"]) == {"sha3-full", "standard"}
    assert (comparison["seed"] == 42).all()


def test_compare_providers_is_deterministic(comparison):
    again = compare_providers(Variant.A128, trials=100, seed=42, avalanche_positions=POSITIONS)
    pd.testing.assert_frame_equal(comparison, again)


def test_whitening_distance(comparison):
    rows = comparison[comparison["test"] == "whitening_distance"].set_index("provider")
    assert rows.loc["standard", "statistic"] == 0.0, "Expected rk0 to equal the standard key prefix"
    assert rows.loc["standard", "verdict"] == Verdict.FAIL.value
    assert 54 <= rows.loc["sha3-full", "statistic"] <= 74, f"Got {rows.loc['sha3-full', 'statistic']}"


def test_sha3_avalanche_row_passes(comparison):
    row = comparison[(comparison["test"] == "avalanche") & (comparison["provider"] == "sha3-full")]
    assert row["verdict"].item() == "pass", f"Got {row['verdict'].item()}"


def test_compare_providers_records_a_seed_when_none_given():
    df = compare_providers(
        Variant.A128,
        trials=100,
        providers=[DerivationProfile.STANDARD],
        avalanche_positions=[0],
    )
    assert df["seed"].notna().all(), "Expected the drawn seed to be recorded"


def test_report_renderings(comparison):
    csv = report_to_csv(comparison)
    assert csv.splitlines()[0] == ",".join(REPORT_COLUMNS)
    text = report_to_text(comparison)
    assert "whitening_distance" in text
    md = report_to_markdown(comparison).splitlines()
    assert len(md) == 2 + len(comparison), f"Expected a header, a rule and {len(comparison)} rows"
    first = [c.strip() for c in md[2].strip("|").split("|")]
    assert first[:3] == ["monobit", "sha3-full", "128"], f"Got {md[2]}"


@pytest.mark.slow
@pytest.mark.parametrize("variant", list(Variant))
def test_full_avalanche_for_every_variant(variant):
    table = avalanche_matrix("sha3-full", variant, trials=1000, seed=5, workers=4)
    assert 0.45 <= table.mean <= 0.55, f"Expected a flip rate near 0.5, got {table.mean}"
    assert table.positions.size == 8 * variant.key_bytes


def pass_rates(report: pd.DataFrame, provider: str) -> pd.DataFrame:
    rows = report[(report["provider"] == provider) & report["test"].str.endswith("_pass_rate")]
    return rows.set_index("test")


def test_sha3_schedules_pass_monobit_and_runs_at_97_percent():
    report = compare_providers(
        Variant.A128,
        trials=300,
        seed=8,
        providers=[DerivationProfile.SHA3_FULL],
        avalanche_positions=[0],
    )
    rates = pass_rates(report, "sha3-full")
    assert list(rates.index) == ["monobit_pass_rate", "runs_pass_rate"], f"Got {list(rates.index)}"
    for test, row in rates.iterrows():
        assert row["statistic"] >= 0.97, f"Expected {test} >= 0.97, got {row['statistic']:.3f}"
        assert row["verdict"] == "pass", f"Expected {test} to pass, got {row['verdict']}"


@pytest.mark.slow
@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("profile", ["sha3-full", "sha3-shake", "standard"])
def test_pass_rates_over_1000_schedules(variant, profile):
    report = compare_providers(variant, trials=1000, seed=9, providers=[profile], avalanche_positions=[0, 64])
    for test, row in pass_rates(report, profile).iterrows():
        assert row["statistic"] >= 0.97, f"Expected {test} >= 0.97 for {profile}, got {row['statistic']:.3f}"
