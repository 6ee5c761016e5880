"""
The `aesha3` command line: keygen, derive, encrypt, decrypt, bench and analyze.

Exit status: 0 on success, 2 for usage errors, 3 for I/O errors, 4 for malformed
keys, ciphertexts or padding.
"""

import argparse
import logging
import secrets
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from aesha3._BenchReport import BenchReport
from aesha3._exceptions import AeshaError, InputOutputError, UsageError
from aesha3._MasterKey import DerivationProfile, MasterKey
from aesha3._Variant import Variant
from aesha3.src._bench import (
    MIN_TREND_SIZES,
    bench_encrypt_sweep,
    bench_key_schedule,
    emit_key_schedule_table,
    emit_plot_data,
    emit_table,
    trend_check,
)
from aesha3.src._cipher_modes import (
    DEFAULT_CHUNK_BYTES,
    decrypt_file,
    encrypt_file,
    read_sidecar,
)
from aesha3.src._config import load_bench_config, parse_size, parse_sizes, seed_from_env
from aesha3.src._keyschedule import derive_schedule, read_key_file, write_key_file
from aesha3.src._plots import save_plots
from aesha3.src._published_timings import HOSTS, published_key_schedule, published_records
from aesha3.src._randomness import (
    compare_providers,
    random_master_keys,
    report_to_csv,
    report_to_markdown,
    report_to_text,
)

PROG = "aesha3"
DEFAULT_PROFILE = DerivationProfile.SHA3_FULL
VARIANT_CHOICES = ["128", "192", "256"]
PROFILE_CHOICES = [p.value for p in DerivationProfile]
ECB_WARNING = "ECB mode leaks repeated plaintext blocks; use it for benchmarking only."


def _size_arg(text: str) -> int:
    try:
        return parse_size(text)
    except UsageError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _add_key_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--key", help="master key as lowercase hex (32, 48 or 64 characters)")
    group.add_argument("--key-file", type=Path, help="file with one lowercase hex key per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="AES with standard or SHA-3 derived round keys, and its benchmarks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    keygen = sub.add_parser("keygen", help="write random master keys")
    keygen.add_argument("--variant", choices=VARIANT_CHOICES, default="128")
    keygen.add_argument("--count", type=int, default=1)
    keygen.add_argument("--seed", type=int, help="reproducible (non-secret) keys")
    keygen.add_argument("--out", type=Path, help="key file to write (default: stdout)")

    derive = sub.add_parser("derive", help="print a round-key schedule, one key per line")
    _add_key_options(derive)
    derive.add_argument("--variant", choices=VARIANT_CHOICES)
    derive.add_argument("--profile", choices=PROFILE_CHOICES)
    derive.add_argument("--out", type=Path)

    for name, text in (("encrypt", "ECB-encrypt a file"), ("decrypt", "decrypt a file")):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("input", type=Path)
        _add_key_options(cmd)
        cmd.add_argument("--variant", choices=VARIANT_CHOICES)
        cmd.add_argument("--profile", choices=PROFILE_CHOICES)
        cmd.add_argument("--out", type=Path)
        cmd.add_argument("--chunk-bytes", type=_size_arg, default=DEFAULT_CHUNK_BYTES)

    bench = sub.add_parser("bench", help="time key schedules and encryption sweeps")
    bench.add_argument("--variant", choices=VARIANT_CHOICES, nargs="+")
    bench.add_argument("--profile", choices=PROFILE_CHOICES)
    bench.add_argument("--experiment", choices=["all", "key-schedule", "sweep"], default="all")
    bench.add_argument("--sizes", help="e.g. 1KB..16MB or 1KB,4KB,16KB")
    bench.add_argument("--iters", type=int, help="key-schedule iterations")
    bench.add_argument("--warmup", type=int)
    bench.add_argument("--repetitions", type=int)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--sponge-backend", choices=["pure", "native"])
    bench.add_argument("--parallel-payloads", action="store_true", default=None)
    bench.add_argument("--config", type=Path, help="key=value benchmark config file")
    bench.add_argument("--format", choices=["md", "csv"], default="md")
    bench.add_argument("--layout", choices=["compact", "wide"], default="compact")
    bench.add_argument("--out", type=Path)
    bench.add_argument("--plot", type=Path, metavar="DIR", help="write PNG plots to DIR")
    bench.add_argument("--plot-data", type=Path, metavar="FILE")
    bench.add_argument("--pdf", type=Path, metavar="FILE")
    bench.add_argument("--reference", choices=sorted(HOSTS), help="render published timings")

    analyze = sub.add_parser("analyze", help="compare subkey randomness of two profiles")
    analyze.add_argument("--variant", choices=VARIANT_CHOICES, default="128")
    analyze.add_argument("--profile", choices=PROFILE_CHOICES)
    analyze.add_argument("--trials", type=int, default=1000)
    analyze.add_argument("--seed", type=int)
    analyze.add_argument("--format", choices=["md", "csv", "text"], default="md")
    analyze.add_argument("--positions", help="comma separated key-bit positions for avalanche")
    analyze.add_argument("--out", type=Path)
    return parser


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), str(out)) from err
    logging.info(f"Wrote {out}")


def _variant(args: argparse.Namespace) -> Optional[Variant]:
    return Variant.from_bits(args.variant) if args.variant else None


def _load_key(args: argparse.Namespace) -> MasterKey:
    if args.key is None and args.key_file is None:
        raise UsageError("a master key is required: pass --key or --key-file")
    if args.key is not None:
        return MasterKey.from_hex(args.key, _variant(args))
    return read_key_file(args.key_file, _variant(args))[0]


def _profile(args: argparse.Namespace) -> DerivationProfile:
    profile = DerivationProfile.parse(args.profile or DEFAULT_PROFILE)
    source = "" if args.profile else " (default)"
    logging.info(f"Derivation profile: {profile.value}{source}")
    return profile


def _keygen(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise UsageError(f"--count must be at least 1. Got {args.count}.")
    variant = Variant.from_bits(args.variant)
    seed = args.seed if args.seed is not None else seed_from_env()
    if seed is None:
        keys = [MasterKey(variant, secrets.token_bytes(variant.key_bytes)) for _ in range(args.count)]
    else:
        logging.warning("Keys generated from a seed are reproducible and must not protect real data.")
        keys = random_master_keys(variant, args.count, seed)

    if args.out is None:
        _write("".join(f"{k.hex()}\n" for k in keys), None)
    else:
        write_key_file(args.out, keys)
    return 0


def _derive(args: argparse.Namespace) -> int:
    mk = _load_key(args)
    sched = derive_schedule(mk, _profile(args))
    _write("".join(f"{line}\n" for line in sched.to_hex_lines()), args.out)
    return 0


def _encrypt(args: argparse.Namespace) -> int:
    logging.warning(ECB_WARNING)
    mk = _load_key(args)
    sched = derive_schedule(mk, _profile(args))
    encrypt_file(args.input, sched, args.chunk_bytes, args.out)
    return 0


def _decrypt(args: argparse.Namespace) -> int:
    logging.warning(ECB_WARNING)
    mk = _load_key(args)
    meta = read_sidecar(args.input)
    if meta is not None:
        if args.profile and DerivationProfile.parse(args.profile) is not meta.profile:
            raise UsageError(
                f"--profile {args.profile} contradicts the ciphertext metadata ({meta.profile.value})"
            )
        if meta.variant is not mk.variant:
            raise UsageError(
                f"the key is {mk.variant.label()} but the ciphertext was written with {meta.variant.label()}"
            )
        if args.profile is None:
            args.profile = meta.profile.value
    else:
        logging.warning(f"No metadata next to {args.input}; relying on flags and defaults.")

    sched = derive_schedule(mk, _profile(args))
    decrypt_file(args.input, sched, args.chunk_bytes, args.out)
    return 0


def _bench(args: argparse.Namespace) -> int:
    profile = _profile(args)
    if not profile.is_sha3:
        raise UsageError("bench compares the standard schedule with a SHA-3 profile; pick sha3-full or sha3-shake")
    if args.format == "csv" and args.experiment == "all":
        raise UsageError("--format csv needs --experiment key-schedule or --experiment sweep")

    host = "this host"
    if args.reference is not None:
        host = HOSTS[args.reference]
        key_schedule = published_key_schedule(args.reference)
        records = published_records(args.reference, profile)
    else:
        logging.warning(ECB_WARNING)
        cfg = load_bench_config(
            args.config,
            variants=args.variant,
            profiles=(DerivationProfile.STANDARD, profile),
            sizes=parse_sizes(args.sizes) if args.sizes else None,
            iterations=args.iters,
            warmup=args.warmup,
            repetitions=args.repetitions,
            seed=args.seed,
            sponge_backend=args.sponge_backend,
            parallel_payloads=args.parallel_payloads,
        )
        key_schedule = bench_key_schedule(cfg) if args.experiment != "sweep" else None
        records = bench_encrypt_sweep(cfg) if args.experiment != "key-schedule" else None
    if args.experiment == "sweep":
        key_schedule = None
    elif args.experiment == "key-schedule":
        records = None

    trend = None
    if records is not None and len({r.size for r in records}) >= MIN_TREND_SIZES:
        trend = trend_check(records)
        logging.info(f"Trend check: {trend.status}")

    if args.format == "csv":
        text = emit_table(records, "csv") if records is not None else emit_key_schedule_table(key_schedule, "csv")
    else:
        parts = []
        if key_schedule is not None:
            parts.append("## Key-schedule latency (ms)\n\n" + emit_key_schedule_table(key_schedule, "md", host))
        if records is not None:
            parts.append("## Encryption sweep\n\n" + emit_table(records, "md", args.layout))
            if trend is not None:
                findings = "".join(f"- {f}\n" for f in trend.findings)
                parts.append(f"Trend check: {trend.status}\n" + findings)
        text = "\n".join(parts)
    _write(text, args.out)

    if records is not None and args.plot is not None:
        save_plots(records, args.plot)
    if records is not None and args.plot_data is not None:
        _write(emit_plot_data(records), args.plot_data)
    if args.pdf is not None:
        BenchReport.from_results(
            str(args.pdf), records=records, key_schedule=key_schedule, trend=trend, host=host
        ).build()
    return 0


def _parse_positions(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as err:
        raise UsageError(f"--positions must be comma separated integers. Got {text!r}.") from err


def _analyze(args: argparse.Namespace) -> int:
    profile = _profile(args)
    providers = [profile] if profile is DerivationProfile.STANDARD else [profile, DerivationProfile.STANDARD]
    seed = args.seed if args.seed is not None else seed_from_env()
    try:
        report = compare_providers(
            args.variant,
            args.trials,
            seed,
            providers=providers,
            avalanche_positions=_parse_positions(args.positions),
        )
    except (TypeError, ValueError) as err:
        if isinstance(err, AeshaError):
            raise
        raise UsageError(str(err)) from err
    if args.format == "csv":
        text = report_to_csv(report)
    elif args.format == "text":
        text = report_to_text(report) + "\n"
    else:
        text = report_to_markdown(report)
    _write(text, args.out)
    return 0


COMMANDS = {
    "keygen": _keygen,
    "derive": _derive,
    "encrypt": _encrypt,
    "decrypt": _decrypt,
    "bench": _bench,
    "analyze": _analyze,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parses `argv`, runs the subcommand and returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=f"{PROG}: %(levelname)s: %(message)s", force=True)

    try:
        return COMMANDS[args.command](args)
    except AeshaError as err:
        print(f"{PROG}: error: {err}", file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"{PROG}: error: {err}", file=sys.stderr)
        return InputOutputError.exit_code
    except ValueError as err:
        print(f"{PROG}: error: {err}", file=sys.stderr)
        return UsageError.exit_code


def main() -> int:
    return run(sys.argv[1:])
