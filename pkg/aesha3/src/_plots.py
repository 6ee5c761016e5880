"""
Figures for sweep records: total time and efficiency against payload size.

Both functions draw on `ax` when given and return the Axes, so they can be passed
to `BenchReport.plot` through a lambda.
"""

from pathlib import Path
from typing import List, Optional, Union

import matplotlib.pyplot as plt  # type: ignore
from matplotlib.axes import Axes  # type: ignore

from aesha3._exceptions import InputOutputError
from aesha3._MasterKey import DerivationProfile
from aesha3._Variant import Variant
from aesha3.src._bench import RecordsLike, format_size, plot_data, records_to_frame


def _size_axis(ax: Axes, sizes) -> None:
    ax.set_xscale("log", base=2)
    ax.set_xticks(sizes)
    ax.set_xticklabels([format_size(int(s)) for s in sizes], rotation=45, ha="right")
    ax.set_xlabel("File size")


def plot_total_time(records: RecordsLike, ax: Optional[Axes] = None) -> Axes:
    """Total time (ms) per provider and variant, log-log."""
    df = records_to_frame(records)
    if ax is None:
        _, ax = plt.subplots(figsize=(7, 4.5))

    for (provider, variant), group in df.groupby(["provider", "variant"], sort=True):
        group = group.sort_values("size")
        label = Variant.from_bits(variant).label(
            sha3=provider != DerivationProfile.STANDARD.value
        )
        style = "--" if provider == DerivationProfile.STANDARD.value else "-"
        ax.plot(group["size"], group["total_ms"], style, marker="o", label=f"{label} ({provider})")

    ax.set_yscale("log")
    ax.set_ylabel("Total time (ms)")
    _size_axis(ax, sorted(df["size"].unique()))
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    return ax


def plot_efficiency(records: RecordsLike, ax: Optional[Axes] = None) -> Axes:
    """Efficiency (standard time / SHA-3 time) per variant, with the y = 1 line."""
    df = plot_data(records)
    if ax is None:
        _, ax = plt.subplots(figsize=(7, 4.5))

    for (provider, variant), group in df.groupby(["provider", "variant"], sort=True):
        ax.plot(
            group["size"],
            group["efficiency"],
            marker="o",
            label=f"{Variant.from_bits(variant).label(sha3=True)} ({provider})",
        )

    ax.axhline(1.0, color="grey", linewidth=1, linestyle=":")
    ax.set_ylabel("Efficiency (X)")
    _size_axis(ax, sorted(df["size"].unique()))
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    return ax


def save_plots(
    records: RecordsLike, out_dir: Union[str, Path], prefix: str = "aesha3", dpi: int = 150
) -> List[Path]:
    """Writes `<prefix>_total_time.png` and `<prefix>_efficiency.png` to `out_dir`."""
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise InputOutputError(err.strerror or str(err), str(out_dir)) from err

    paths = []
    for name, draw in (("total_time", plot_total_time), ("efficiency", plot_efficiency)):
        ax = draw(records)
        fig = ax.get_figure()
        path = out_dir / f"{prefix}_{name}.png"
        try:
            fig.savefig(path, dpi=dpi, bbox_inches="tight")
        except OSError as err:
            raise InputOutputError(err.strerror or str(err), str(path)) from err
        finally:
            plt.close(fig)
        paths.append(path)
    return paths
