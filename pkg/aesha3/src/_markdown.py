import math

import numpy as np
import pandas as pd


def _cell(value: object, digits: int) -> str:
    if value is None:
        return "-"
    if isinstance(value, (float, np.floating)):
        return "-" if math.isnan(value) else f"{value:.{digits}f}"
    return str(value)


def to_markdown(df: pd.DataFrame, digits: int = 2) -> str:
    """Pipe table with floats rounded to `digits` places and NaN/None shown as "-"."""
    cells = df.astype(object).map(lambda v: _cell(v, digits))
    return cells.to_markdown(index=False, tablefmt="pipe", disable_numparse=True) + "\n"
