"""Reading point sets from files and serializing results.

Input files hold one point per row, comma separated, '.' decimal separator, with an optional header row (a first
row in which no cell is a number). Coordinates are written back with 17 significant digits so a write then read is
lossless.
"""
import io
import json
import logging

import numpy as np
import pandas as pd
from qcelemental.util.serialization import json_dumps, msgpackext_dumps

from .core import Label, PointSet, make_point_set
from .exceptions import DimensionMismatch, ParseError
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

FLOAT_FORMAT = "%.17g"


def _is_number(cell) -> bool:
    try:
        float(cell)
    except (TypeError, ValueError):
        return False
    return True


def _field_counts(path):
    """Number of comma separated fields of every nonblank line"""
    with open(path, encoding="utf-8") as handle:
        return [line.count(",") + 1 for line in handle.read().splitlines() if line.strip()]


def read_points(path, label=Label.EMPIRICAL) -> PointSet:
    """Read a point set from a CSV file

    Raises
    ------
    ParseError
        unreadable file or a cell that is not a number (message names file, row and column)
    DimensionMismatch
        rows with different numbers of columns
    NonFinite, TooSmall
        see :func:`scenval.core.make_point_set`

    """
    try:
        frame = pd.read_csv(
            path, header=None, dtype=str, keep_default_na=False, skip_blank_lines=True, encoding="utf-8"
        )
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path}: file is empty")
    except pd.errors.ParserError as error:
        raise DimensionMismatch(f"{path}: rows have different numbers of columns ({error})")
    except (OSError, UnicodeDecodeError) as error:
        raise ParseError(f"Cannot read {path}: {error}")

    # short rows come back padded with ''
    for row, width in enumerate(_field_counts(path)):
        if width != frame.shape[1]:
            raise DimensionMismatch(f"{path}, row {row + 1}: {width} column(s), expected {frame.shape[1]}")

    first_row = 1
    header = frame.iloc[0].tolist()
    if not any(_is_number(cell) for cell in header):
        logger.debug(f"{path}: treating the first row as a header: {header}")
        frame = frame.iloc[1:]
        first_row = 2

    cells = frame.to_numpy(dtype=object)
    try:
        values = cells.astype(np.float64)
    except ValueError:
        for r, c in np.ndindex(cells.shape):
            if not _is_number(cells[r, c]):
                raise ParseError(
                    f"{path}, row {r + first_row}, column {c + 1}: cannot read {cells[r, c]!r} as a number"
                )
        raise

    return make_point_set(values.reshape(len(cells), frame.shape[1]), label)


def points_to_csv(points: PointSet) -> str:
    return pd.DataFrame(points.points).to_csv(header=False, index=False, float_format=FLOAT_FORMAT)


def write_points(points: PointSet, path):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(points_to_csv(points))


def table_to_csv(rows, columns, comment=None) -> str:
    """CSV text of a list of row dicts, preceded by one '#' comment line when ``comment`` is given"""
    buffer = io.StringIO()
    if comment:
        buffer.write(f"# {comment}\n")
    pd.DataFrame(rows, columns=list(columns)).to_csv(buffer, index=False, float_format=FLOAT_FORMAT)
    return buffer.getvalue()


def to_json(data) -> str:
    """Deterministic JSON text; numpy scalars and arrays become plain numbers and lists"""
    return json.dumps(json.loads(json_dumps(data)), indent=2, sort_keys=True) + "\n"


def to_msgpack(data) -> bytes:
    return msgpackext_dumps(data)
