"""
Uniformity and independence checks for round-key schedules.

Two frequency-style tests from the standard statistical suite (monobit and runs)
plus an avalanche measurement, and `compare_providers`, which runs all of them
for two key-schedule providers over the same random master keys.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import erfc, sqrt
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from aesha3._MasterKey import DerivationProfile, MasterKey
from aesha3._RoundKeySchedule import RoundKeySchedule
from aesha3._Variant import Variant
from aesha3.src._keyschedule import SubkeyProvider, provider_for
from aesha3.src._markdown import to_markdown

SIGNIFICANCE = 0.01
MIN_SAMPLE_BITS = 100
MIN_TRIALS = 100
PASS_RATE_THRESHOLD = 0.97
AVALANCHE_BAND = (0.45, 0.55)

REPORT_COLUMNS = [
    "test",
    "provider",
    "variant",
    "n",
    "statistic",
    "p_value",
    "verdict",
    "seed",
]

ProviderLike = Union[SubkeyProvider, DerivationProfile, str, Callable[[MasterKey], RoundKeySchedule]]


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class BitSample:
    """
    A bit string under test, stored as a uint8 array of 0s and 1s.

    Parameters
    ----------
    bits : np.ndarray
        The bits, most significant bit of each source byte first.
    source : str
        Label of the provider that produced the bits.
    """

    bits: np.ndarray
    source: str = ""

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8).ravel()
        if bits.size == 0:
            raise ValueError("A bit sample cannot be empty.")
        if bits.max() > 1:
            raise ValueError("A bit sample may only contain 0 and 1.")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_bytes(cls, data: bytes, source: str = "") -> "BitSample":
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)), source)

    @classmethod
    def from_string(cls, text: str, source: str = "") -> "BitSample":
        """
        Examples
        --------
        >>> BitSample.from_string("0110").n
        4
        """
        if set(text) - {"0", "1"}:
            raise ValueError("Bit strings may only contain '0' and '1'.")
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"), source)

    @classmethod
    def from_schedule(cls, sched: RoundKeySchedule, source: Optional[str] = None) -> "BitSample":
        return cls.from_bytes(sched.to_bytes(), source if source is not None else sched.profile or "")

    @property
    def n(self) -> int:
        return int(self.bits.size)

    @property
    def ones(self) -> int:
        return int(np.count_nonzero(self.bits))


@dataclass(frozen=True)
class TestReport:
    """
    Outcome of one statistical test.

    `p_value` is None when the test does not produce one (pass-rate and avalanche
    summaries, or a runs test whose precondition failed).
    """

    __test__ = False

    test: str
    statistic: float
    p_value: Optional[float]
    verdict: Verdict
    n: int
    provider: str = ""
    variant: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p_value is not None and not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p_value must be in [0, 1]. Got {self.p_value}.")
        if not isinstance(self.verdict, Verdict):
            object.__setattr__(self, "verdict", Verdict(self.verdict))

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> Dict[str, object]:
        return {
            "test": self.test,
            "provider": self.provider,
            "variant": self.variant,
            "n": self.n,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "verdict": self.verdict.value,
            "seed": self.seed,
        }


def _check_sample_size(sample: BitSample, test: str) -> None:
    if sample.n < MIN_SAMPLE_BITS:
        raise ValueError(
            f"The {test} test needs at least {MIN_SAMPLE_BITS} bits. Got {sample.n}."
        )


def monobit_test(sample: BitSample) -> TestReport:
    """
    Frequency test: are ones and zeros equally likely?

    The statistic is |#ones - #zeros| / sqrt(n) and p = erfc(statistic / sqrt(2)).
    The sample passes iff p >= 0.01.

    Examples
    --------
    100 bits with 58 ones give statistic 1.6 and p ~ 0.1096.
    """
    _check_sample_size(sample, "monobit")
    n = sample.n
    s_obs = abs(2 * sample.ones - n) / sqrt(n)
    p_value = erfc(s_obs / sqrt(2))
    verdict = Verdict.PASS if p_value >= SIGNIFICANCE else Verdict.FAIL
    return TestReport("monobit", s_obs, p_value, verdict, n, provider=sample.source)


def runs_test(sample: BitSample) -> TestReport:
    """
    Runs test: is the number of runs of identical bits what a random string gives?

    Only applicable when the proportion of ones is within 2/sqrt(n) of 1/2; otherwise
    the verdict is NOT_APPLICABLE and the statistic is that proportion. When
    applicable the statistic is the run count V and
    p = erfc(|V - 2n pi (1 - pi)| / (2 sqrt(2n) pi (1 - pi))).
    """
    _check_sample_size(sample, "runs")
    n = sample.n
    pi = sample.ones / n
    if abs(pi - 0.5) >= 2 / sqrt(n):
        return TestReport(
            "runs", pi, None, Verdict.NOT_APPLICABLE, n, provider=sample.source
        )

    v_obs = int(np.count_nonzero(np.diff(sample.bits))) + 1
    p_value = erfc(abs(v_obs - 2 * n * pi * (1 - pi)) / (2 * sqrt(2 * n) * pi * (1 - pi)))
    verdict = Verdict.PASS if p_value >= SIGNIFICANCE else Verdict.FAIL
    return TestReport("runs", float(v_obs), p_value, verdict, n, provider=sample.source)


def _as_provider(provider: ProviderLike) -> Callable[[MasterKey], RoundKeySchedule]:
    if isinstance(provider, (DerivationProfile, str)):
        return provider_for(provider)
    return provider


def _provider_name(provider: ProviderLike) -> str:
    if isinstance(provider, (DerivationProfile, str)):
        return DerivationProfile.parse(provider).value
    return getattr(provider, "name", getattr(provider, "__name__", repr(provider)))


def resolve_seed(seed: Optional[int]) -> int:
    """Returns `seed`, or a fresh one to record when none was given."""
    if seed is not None:
        return int(seed)
    return int(np.random.SeedSequence().entropy % 2**32)


def random_master_keys(
    variant: Variant, count: int, seed: Optional[Union[int, Sequence[int]]] = None
) -> List[MasterKey]:
    """`count` master keys drawn from `np.random.default_rng(seed)`."""
    variant = Variant.from_bits(variant)
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, 256, size=(count, variant.key_bytes), dtype=np.uint8)
    return [MasterKey(variant, row.tobytes()) for row in raw]


def _schedule_bits(sched: RoundKeySchedule) -> np.ndarray:
    return np.unpackbits(sched.array, axis=1)


def flip_rate(provider: ProviderLike, mk: MasterKey, mask: bytes) -> float:
    """
    Fraction of schedule bits that change when `mask` is XORed into the key.

    Examples
    --------
    An all-zero mask leaves the key, and therefore the schedule, unchanged:

    >>> flip_rate("sha3-full", mk, bytes(16))
    0.0
    """
    if len(mask) != len(mk.data):
        raise ValueError(f"The mask must be {len(mk.data)} bytes long. Got {len(mask)}.")
    derive = _as_provider(provider)
    flipped = MasterKey(mk.variant, bytes(a ^ b for a, b in zip(mk.data, mask)))
    diff = _schedule_bits(derive(mk)) ^ _schedule_bits(derive(flipped))
    return float(diff.mean())


@dataclass(frozen=True)
class AvalancheTable:
    """
    Flip rates per toggled key bit.

    Attributes
    ----------
    positions : np.ndarray
        The toggled master-key bit positions (bit 0 is the MSB of byte 0).
    flip_rates : np.ndarray
        For each position, the mean fraction of all schedule bits that flipped.
    round_key_rates : np.ndarray
        Shape (len(positions), n_round_keys): the same rate per round key.
    trials : int
        Number of random master keys averaged over.
    """

    positions: np.ndarray
    flip_rates: np.ndarray
    round_key_rates: np.ndarray
    trials: int
    provider: str = ""
    variant: Optional[Variant] = None
    seed: Optional[int] = None

    @property
    def mean(self) -> float:
        return float(self.flip_rates.mean())

    def to_frame(self) -> pd.DataFrame:
        """One row per toggled bit; columns flip_rate and rk0, rk1, ..."""
        df = pd.DataFrame(
            self.round_key_rates,
            columns=[f"rk{i}" for i in range(self.round_key_rates.shape[1])],
        )
        df.insert(0, "flip_rate", self.flip_rates)
        df.insert(0, "position", self.positions)
        return df


def _check_trials(trials: int) -> None:
    if not isinstance(trials, int):
        raise TypeError(f"trials must be an integer, not {type(trials)}.")
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be at least {MIN_TRIALS}. Got {trials}.")


def avalanche_matrix(
    provider: ProviderLike,
    variant: Union[Variant, int, str],
    trials: int,
    seed: Optional[int] = None,
    positions: Optional[Sequence[int]] = None,
    keys: Optional[Sequence[MasterKey]] = None,
    workers: int = 1,
) -> AvalancheTable:
    """
    Measures how many schedule bits flip when one master-key bit is toggled.

    Parameters
    ----------
    provider : SubkeyProvider, DerivationProfile or str
        The key schedule under test.
    variant : Variant
        Key size.
    trials : int
        Number of random master keys, at least 100.
    seed : Optional[int], optional
        Seed for the master keys. Ignored when `keys` is given.
    positions : Optional[Sequence[int]], optional
        Key-bit positions to toggle. Defaults to every bit of the key.
    keys : Optional[Sequence[MasterKey]], optional
        Use these master keys instead of drawing new ones; the first `trials`
        are used.
    workers : int, optional
        Threads to spread trials over. Results do not depend on it.

    Returns
    -------
    AvalancheTable
    """
    _check_trials(trials)
    variant = Variant.from_bits(variant)
    derive = _as_provider(provider)
    positions = np.arange(8 * variant.key_bytes) if positions is None else np.asarray(positions)
    if positions.size and (positions.min() < 0 or positions.max() >= 8 * variant.key_bytes):
        raise ValueError(f"Bit positions must be in [0, {8 * variant.key_bytes}).")
    if keys is None:
        keys = random_master_keys(variant, trials, seed)
    elif len(keys) < trials:
        raise ValueError(f"Need {trials} master keys. Got {len(keys)}.")

    def one_trial(mk: MasterKey) -> np.ndarray:
        base = _schedule_bits(derive(mk))
        counts = np.empty((positions.size, variant.n_round_keys), dtype=np.int64)
        for j, pos in enumerate(positions):
            diff = base ^ _schedule_bits(derive(mk.flip_bit(int(pos))))
            counts[j] = diff.sum(axis=1)
        return counts

    total = np.zeros((positions.size, variant.n_round_keys), dtype=np.int64)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for counts in pool.map(one_trial, keys[:trials]):
                total += counts
    else:
        for mk in keys[:trials]:
            total += one_trial(mk)

    round_key_rates = total / (trials * 128)
    flip_rates = total.sum(axis=1) / (trials * variant.subkey_bits)
    logging.debug(
        f"Avalanche of {_provider_name(provider)} over {trials} trials: mean {flip_rates.mean():.4f}"
    )
    return AvalancheTable(
        positions,
        flip_rates,
        round_key_rates,
        trials,
        _provider_name(provider),
        variant,
        seed,
    )


@dataclass
class _ProviderTally:
    """Running sums for one provider; additions commute, so trial order is irrelevant."""

    monobit_passes: int = 0
    runs_passes: int = 0
    whitening_distance: int = 0
    samples: List[np.ndarray] = field(default_factory=list)


def compare_providers(
    variant: Union[Variant, int, str],
    trials: int,
    seed: Optional[int] = None,
    providers: Sequence[ProviderLike] = (DerivationProfile.SHA3_FULL, DerivationProfile.STANDARD),
    avalanche_positions: Optional[Sequence[int]] = None,
) -> pd.DataFrame:
    """
    Runs every test for each provider on the same random master keys.

    Per provider the report has six rows:

    - monobit / runs: one test over all schedules concatenated;
    - monobit_pass_rate / runs_pass_rate: fraction of individual schedules that
      pass (statistic), pass iff at least 97%;
    - avalanche: mean flip rate (statistic), pass iff in [0.45, 0.55];
    - whitening_distance: mean Hamming distance between round key 0 and the first
      128 master-key bits (statistic), pass iff in [0.45, 0.55] * 128.

    Parameters
    ----------
    variant : Variant
        Key size.
    trials : int
        Number of random master keys, at least 100.
    seed : Optional[int], optional
        RNG seed; a fresh one is drawn and recorded in the report when absent.
    providers : Sequence, optional
        Defaults to the sha3-full and standard profiles.
    avalanche_positions : Optional[Sequence[int]], optional
        Key-bit positions for the avalanche rows. Defaults to every key bit.

    Returns
    -------
    pd.DataFrame
        Columns test, provider, variant, n, statistic, p_value, verdict, seed.
    """
    _check_trials(trials)
    variant = Variant.from_bits(variant)
    seed = resolve_seed(seed)
    keys = random_master_keys(variant, trials, seed)
    low, high = AVALANCHE_BAND

    reports: List[TestReport] = []
    for provider in providers:
        derive = _as_provider(provider)
        name = _provider_name(provider)
        tally = _ProviderTally()
        for mk in keys:
            sched = derive(mk)
            sample = BitSample.from_schedule(sched, name)
            tally.samples.append(sample.bits)
            tally.monobit_passes += monobit_test(sample).passed
            tally.runs_passes += runs_test(sample).passed
            head = np.frombuffer(mk.data[:16], dtype=np.uint8)
            tally.whitening_distance += int(np.unpackbits(head ^ sched.array[0]).sum())

        def row(test, statistic, p_value, verdict, n) -> TestReport:
            return TestReport(test, float(statistic), p_value, verdict, n, name, variant.value, seed)

        combined = BitSample(np.concatenate(tally.samples), name)
        for report in (monobit_test(combined), runs_test(combined)):
            reports.append(row(report.test, report.statistic, report.p_value, report.verdict, report.n))

        for test, passes in (
            ("monobit_pass_rate", tally.monobit_passes),
            ("runs_pass_rate", tally.runs_passes),
        ):
            rate = passes / trials
            verdict = Verdict.PASS if rate >= PASS_RATE_THRESHOLD else Verdict.FAIL
            reports.append(row(test, rate, None, verdict, trials))

        aval = avalanche_matrix(provider, variant, trials, positions=avalanche_positions, keys=keys)
        verdict = Verdict.PASS if low <= aval.mean <= high else Verdict.FAIL
        reports.append(row("avalanche", aval.mean, None, verdict, trials * aval.positions.size))

        distance = tally.whitening_distance / trials
        verdict = Verdict.PASS if low * 128 <= distance <= high * 128 else Verdict.FAIL
        reports.append(row("whitening_distance", distance, None, verdict, trials))

        logging.info(f"Randomness checks for {name} ({variant.label()}) done over {trials} keys")

    return pd.DataFrame([r.to_dict() for r in reports], columns=REPORT_COLUMNS)


def report_to_csv(report: pd.DataFrame) -> str:
    return report.to_csv(index=False)


def report_to_markdown(report: pd.DataFrame) -> str:
    return to_markdown(report, digits=4)


def report_to_text(report: pd.DataFrame) -> str:
    """Fixed-width rendering for terminals."""
    formatted = report.copy()
    formatted["statistic"] = formatted["statistic"].map(lambda v: f"{v:.4f}")
    formatted["p_value"] = formatted["p_value"].map(
        lambda v: "-" if v is None or pd.isna(v) else f"{v:.4f}"
    )
    return formatted.to_string(index=False)
