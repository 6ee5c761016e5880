"""
The BenchReport class: a fluent reportlab builder for benchmark and randomness
results.
"""

import copy
import datetime
import io
import math
import warnings
from typing import Callable, List, Optional, Sequence

import matplotlib.pyplot as plt  # type: ignore
import numpy as np
import pandas as pd
from matplotlib.axes import Axes  # type: ignore
from reportlab.lib.colors import black, lightgrey, white  # type: ignore
from reportlab.lib.enums import TA_CENTER  # type: ignore
from reportlab.lib.pagesizes import landscape, letter  # type: ignore
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet  # type: ignore
from reportlab.lib.units import inch  # type: ignore
from reportlab.platypus import (  # type: ignore
    Flowable,
    Image,
    PageBreak,
    Paragraph,
    SimpleDocTemplate,
    Spacer,
    Table,
    TableStyle,
)

from aesha3._exceptions import InputOutputError
from aesha3.src._bench import key_schedule_table, sweep_table
from aesha3.src._plots import plot_efficiency, plot_total_time


def _table_style(font: str = "Helvetica", fontsize: int = 8) -> TableStyle:
    return TableStyle(
        [
            # header row
            ("BACKGROUND", (0, 0), (-1, 0), lightgrey),
            ("TEXTCOLOR", (0, 0), (-1, 0), black),
            ("FONTNAME", (0, 0), (-1, 0), f"{font}-Bold"),
            ("LINEBELOW", (0, 0), (-1, 0), 1, black),
            # body
            ("BACKGROUND", (0, 1), (-1, -1), white),
            ("FONTNAME", (0, 1), (-1, -1), font),
            ("LINEABOVE", (0, 1), (-1, -1), 0.5, black),
            # first column
            ("BACKGROUND", (0, 0), (0, -1), lightgrey),
            ("FONTNAME", (0, 0), (0, -1), f"{font}-Bold"),
            ("FONTSIZE", (0, 0), (-1, -1), fontsize),
            ("ALIGN", (1, 1), (-1, -1), "RIGHT"),
            ("BOX", (0, 0), (-1, -1), 1.5, black),
        ]
    )


def _cell(value: object, digits: int) -> str:
    if isinstance(value, (float, np.floating)):
        return "-" if math.isnan(value) else f"{value:,.{digits}f}"
    if value is None:
        return "-"
    return str(value)


class BenchReport:
    elements: List[Flowable]

    def __init__(
        self,
        filename: str,
        margins: Optional[List[float]] = None,
        pagesize=landscape(letter),
        dpi: int = 200,
    ):
        """
        Creates a BenchReport that collects flowables until `build` writes the pdf.

        Parameters
        ----------
        filename : str
            The pdf file to create.
        margins : Optional[List[float]], optional
            [left, right, top, bottom] in inches. Defaults to 0.5 on every side.
        pagesize : tuple, optional
            Page size in points. Defaults to landscape letter, wide enough for the
            ten-column sweep table.
        dpi : int, optional
            Resolution of embedded plots. Defaults to 200.
        """
        self.filename = filename
        self.pagesize = pagesize
        self.dpi = dpi

        if margins is None:
            margins = [0.5, 0.5, 0.5, 0.5]
        self.doc = SimpleDocTemplate(filename, pagesize=pagesize)
        self.doc.leftMargin = margins[0] * inch
        self.doc.rightMargin = margins[1] * inch
        self.doc.topMargin = margins[2] * inch
        self.doc.bottomMargin = margins[3] * inch

        self.elements: List[Flowable] = []
        self.styles = getSampleStyleSheet()

    def __copy__(self) -> "BenchReport":
        new_report = self.__class__(
            filename=f"{self.filename.replace('.pdf', '')}-COPY.pdf",
            pagesize=self.pagesize,
            dpi=self.dpi,
        )
        new_report.elements = copy.copy(self.elements)
        return new_report

    def copy(self) -> "BenchReport":
        return self.__copy__()

    def set(self, **kwargs) -> "BenchReport":
        """Sets document properties (title, author, margins, ...). Unknown names are ignored with a SyntaxWarning."""
        for k, v in kwargs.items():
            if hasattr(self.doc, k):
                setattr(self.doc, k, v)
            else:
                warnings.warn(
                    f"Attribute {k} is not a valid attribute of the document. Ignoring.",
                    SyntaxWarning,
                    stacklevel=2,
                )
        return self

    def style(self, tag: str, **kwargs) -> "BenchReport":
        """
        Updates the paragraph style `tag` (e.g. "h1", "Normal"). Unknown
        attributes are ignored with a SyntaxWarning.
        """
        for k, v in kwargs.items():
            if hasattr(self.styles.get(tag), k):
                setattr(self.styles.get(tag), k, v)
            else:
                warnings.warn(
                    f"Attribute {k} is not a valid attribute of the stylesheet. Ignoring.",
                    SyntaxWarning,
                    stacklevel=2,
                )
        return self

    def heading(self, level: int, text: str) -> "BenchReport":
        if level not in range(1, 7):
            raise ValueError(f"Level must be between 1 and 6, inclusive. Got {level}.")
        self.elements.append(Paragraph(text, self.styles[f"Heading{level}"]))
        return self

    def h1(self, text: str) -> "BenchReport":
        return self.heading(1, text)

    def h2(self, text: str) -> "BenchReport":
        return self.heading(2, text)

    def h3(self, text: str) -> "BenchReport":
        return self.heading(3, text)

    def p(self, text: str) -> "BenchReport":
        self.elements.append(Paragraph(text, self.styles["Normal"]))
        return self

    def ul(self, items: Sequence[str], bullet_char: str = "•") -> "BenchReport":
        for item in items:
            self.elements.append(Paragraph(f"{bullet_char} {item}", self.styles["Normal"]))
        return self

    def spacer(self, height: float) -> "BenchReport":
        """Vertical space of `height` inches."""
        self.elements.append(Spacer(1, height * inch))
        return self

    def page_break(self) -> "BenchReport":
        self.elements.append(PageBreak())
        return self

    def plot(
        self, func: Callable[[], Axes], width: float = 7, height: float = 4.5
    ) -> "BenchReport":
        """
        Adds the figure drawn by `func`, which returns a matplotlib Axes.

        Examples
        --------
        >>> report.plot(lambda: plot_efficiency(records), 7, 4.5)
        """
        ax = func()
        fig = ax.get_figure()
        buffer = io.BytesIO()
        fig.savefig(buffer, format="png", dpi=self.dpi, bbox_inches="tight")
        plt.close(fig)
        buffer.seek(0)
        self.elements.append(Image(buffer, width * inch, height * inch))
        return self

    def caption(self, text: str, width: float = 7) -> "BenchReport":
        """Centered caption under a plot or table `width` inches wide."""
        page_width = self.pagesize[0] / inch
        side = (page_width - width) / 2
        caption_style = ParagraphStyle(
            "CaptionStyle",
            parent=self.styles["Normal"],
            alignment=TA_CENTER,
            spaceBefore=0,
            spaceAfter=0,
            leftIndent=side * inch,
            rightIndent=side * inch,
            fontSize=9,
        )
        self.elements.append(Paragraph(text, caption_style))
        return self

    def table(
        self,
        df: pd.DataFrame,
        style: Optional[TableStyle] = None,
        index: bool = False,
        digits: int = 2,
    ) -> "BenchReport":
        """
        Adds `df` as a table. Floats are shown with `digits` decimals and NaN as "-".
        """
        if not isinstance(df, pd.DataFrame):
            raise ValueError(f"`df` must be a pandas DataFrame, but got {type(df)}.")

        header = ([""] if index else []) + [str(c) for c in df.columns]
        rows = [
            ([str(i)] if index else []) + [_cell(v, digits) for v in row]
            for i, row in zip(df.index, df.itertuples(index=False))
        ]
        t = Table([header] + rows, repeatRows=1)
        t.setStyle(style if style is not None else _table_style())
        self.elements.append(t)
        return self

    def title(self, text: str) -> "BenchReport":
        self.doc.title = text
        return self

    def author(self, text: str) -> "BenchReport":
        self.doc.author = text
        return self

    def subject(self, text: str) -> "BenchReport":
        self.doc.subject = text
        return self

    def keywords(self, text: str) -> "BenchReport":
        self.doc.keywords = text
        return self

    def build(self) -> str:
        """Writes the pdf and returns its filename."""
        try:
            self.doc.build(self.elements)
        except OSError as err:
            raise InputOutputError(err.strerror or str(err), self.filename) from err
        return self.filename

    @classmethod
    def from_results(
        cls,
        filename: str,
        records=None,
        key_schedule: Optional[pd.DataFrame] = None,
        randomness: Optional[pd.DataFrame] = None,
        trend=None,
        host: str = "this host",
        date: Optional[datetime.date] = None,
    ) -> "BenchReport":
        """
        Lays out whatever results are given: key-schedule latency, the sweep table
        with both plots and the trend verdict, and the randomness comparison.
        """
        date = date or datetime.date.today()
        report = (
            cls(filename)
            .title("AESHA3 benchmark")
            .subject("SHA-3 derived AES round keys")
            .h1("AESHA3 benchmark")
            .p(f"Host: {host}. Generated {date.isoformat()}.")
        )
        if key_schedule is not None:
            report.h2("Key-schedule latency (ms per schedule)").table(
                key_schedule_table(key_schedule, host), digits=4
            )
        if records is not None:
            report.h2("Encryption sweep").table(sweep_table(records, layout="wide"))
            if trend is not None:
                report.p(f"Trend check: <b>{trend.status}</b>")
                if trend.findings:
                    report.ul(trend.findings)
            report.page_break()
            report.plot(lambda: plot_total_time(records)).caption("Total time against file size.")
            report.plot(lambda: plot_efficiency(records)).caption("Efficiency against file size.")
        if randomness is not None:
            report.page_break().h2("Subkey randomness").table(randomness, digits=4)
        return report
