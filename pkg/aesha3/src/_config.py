"""
Benchmark configuration from a key=value file, the environment and overrides.

Precedence, highest first: explicit overrides (the CLI flags), the config file,
`AESHA3_SEED` from the environment or a `.env` file, then `BenchConfig` defaults.
"""

import logging
import os
import re
import warnings
from pathlib import Path
from typing import Dict, List, Optional, Union

from dotenv import dotenv_values, find_dotenv, load_dotenv

from aesha3._exceptions import InputOutputError, UsageError
from aesha3.src._bench import BenchConfig

SEED_ENV_VAR = "AESHA3_SEED"

_UNITS = {"": 1, "B": 1, "KB": 1024, "K": 1024, "MB": 1024**2, "M": 1024**2}
_SIZE = re.compile(r"^\s*(\d+)\s*([KMB]*)\s*$", re.IGNORECASE)

CONFIG_KEYS = (
    "variants",
    "profiles",
    "iterations",
    "sizes",
    "warmup",
    "seed",
    "repetitions",
    "chunk_bytes",
    "sponge_backend",
    "parallel_payloads",
)


def parse_size(text: Union[str, int]) -> int:
    """
    Parses a byte count with an optional B, KB or MB suffix (powers of 1024).

    Examples
    --------
    >>> parse_size("1KB")
    1024
    >>> parse_size("16 MB")
    16777216
    """
    if isinstance(text, int):
        return text
    match = _SIZE.match(str(text))
    if match is None or match.group(2).upper() not in _UNITS:
        raise UsageError(f"Invalid size {text!r}. Use a number with an optional B, KB or MB suffix.")
    return int(match.group(1)) * _UNITS[match.group(2).upper()]


def parse_sizes(text: str) -> List[int]:
    """
    Parses a size list: comma separated ("1KB,4KB,16KB") or a doubling range
    ("1KB..64KB").
    """
    text = text.strip()
    if ".." in text:
        low, _, high = text.partition("..")
        start, stop = parse_size(low), parse_size(high)
        if start <= 0 or stop < start:
            raise UsageError(f"Invalid size range {text!r}.")
        sizes = []
        while start <= stop:
            sizes.append(start)
            start *= 2
        return sizes
    return [parse_size(part) for part in text.split(",") if part.strip()]


def _parse_list(text: str) -> List[str]:
    return [part.strip() for part in str(text).split(",") if part.strip()]


def _parse_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off", ""):
        return False
    raise UsageError(f"Invalid boolean {text!r}.")


def _parse_int(key: str, text: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError as err:
        raise UsageError(f"{key} must be an integer. Got {text!r}.") from err


_PARSERS = {
    "variants": _parse_list,
    "profiles": _parse_list,
    "iterations": lambda v: _parse_int("iterations", v),
    "sizes": parse_sizes,
    "warmup": lambda v: _parse_int("warmup", v),
    "seed": lambda v: _parse_int("seed", v),
    "repetitions": lambda v: _parse_int("repetitions", v),
    "chunk_bytes": parse_size,
    "sponge_backend": lambda v: str(v).strip(),
    "parallel_payloads": _parse_bool,
}


def read_config_file(path: Union[str, Path]) -> Dict[str, object]:
    """
    Reads a key=value file. Unknown keys raise a SyntaxWarning and are dropped.

    Raises
    ------
    InputOutputError
        If the file does not exist.
    UsageError
        If a value cannot be parsed.
    """
    path = Path(path)
    if not path.is_file():
        raise InputOutputError("config file not found", str(path))

    values = {}
    for key, raw in dotenv_values(path).items():
        key = key.strip().lower()
        if key not in _PARSERS:
            warnings.warn(
                f"Unknown config key {key!r} in {path}. Valid keys: {', '.join(CONFIG_KEYS)}.",
                SyntaxWarning,
                stacklevel=2,
            )
            continue
        if raw is None:
            raise UsageError(f"{path}: {key} has no value.")
        values[key] = _PARSERS[key](raw)
    return values


def seed_from_env() -> Optional[int]:
    """`AESHA3_SEED` from the environment, after loading a `.env` file if present."""
    load_dotenv(find_dotenv(usecwd=True))
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    return _parse_int(SEED_ENV_VAR, raw)


def load_bench_config(
    path: Optional[Union[str, Path]] = None, **overrides: object
) -> BenchConfig:
    """
    Builds a `BenchConfig` from an optional config file and overrides.

    Parameters
    ----------
    path : Optional[str or Path], optional
        key=value file, e.g.::

            iterations=1000
            sizes=1KB..1MB
            variants=128,256

    **overrides
        BenchConfig fields; None values are ignored, so parsed CLI flags can be
        passed as they are.

    Raises
    ------
    UsageError
        If a value is invalid.
    """
    values: Dict[str, object] = read_config_file(path) if path is not None else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    if values.get("seed") is None:
        env_seed = seed_from_env()
        if env_seed is not None:
            values["seed"] = env_seed
            logging.debug(f"Seed {env_seed} taken from {SEED_ENV_VAR}")
    try:
        return BenchConfig(**values)
    except (TypeError, ValueError) as err:
        raise UsageError(str(err)) from err
