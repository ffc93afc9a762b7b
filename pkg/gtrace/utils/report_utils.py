"""Rendering of reports: canonical JSON, human-readable tables and CSV."""

import dataclasses
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from sympy import Rational

from gtrace.errors import InvariantError, SpecError
from gtrace.report import CheckReport

JSON = "json"
TABLE = "table"
CSV = "csv"
FORMATS = (JSON, TABLE, CSV)


def to_plain(obj: Any, timings: bool = False) -> Any:
    """
    Convert a report value to JSON data with exact numbers only.

    Objects with ``to_dict`` are expanded, numpy values become ints and lists, and
    rationals become fraction strings.

    :raises InvariantError: On floating point values.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        raise InvariantError(f"floating point value {obj!r} in a report")
    if isinstance(obj, (Rational, Fraction)):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, pd.DataFrame):
        return {
            "columns": [str(c) for c in obj.columns],
            "index": [str(i) for i in obj.index],
            "data": to_plain(obj.values.tolist()),
        }
    if isinstance(obj, CheckReport):
        return to_plain(obj.to_dict(timings=timings), timings)
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict(), timings)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_plain(dataclasses.asdict(obj), timings)
    if isinstance(obj, dict):
        return {str(k): to_plain(v, timings) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_plain(v, timings) for v in items]
    raise InvariantError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any, timings: bool = False) -> str:
    """Sorted keys, two-space indent and a final newline."""
    return json.dumps(to_plain(obj, timings), sort_keys=True, indent=2) + "\n"


def witness_hash(matrix) -> str:
    """SHA-256 of the canonical JSON of a witness matrix."""
    text = json.dumps(to_plain(np.asarray(matrix, dtype=np.int64)), separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _cell(value: Any) -> Any:
    return json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value


def _frame(plain: Any) -> pd.DataFrame:
    if isinstance(plain, list):
        rows = [r if isinstance(r, dict) else {"value": r} for r in plain]
        return pd.DataFrame.from_records([{k: _cell(v) for k, v in r.items()} for r in rows])
    if isinstance(plain, dict):
        return pd.DataFrame({"key": list(plain), "value": [_cell(v) for v in plain.values()]})
    return pd.DataFrame({"value": [plain]})


def render(obj: Any, fmt: str = JSON, timings: bool = False) -> str:
    """
    Render a report.

    :param obj: Report value: a data frame, an object with ``to_dict`` or plain data.
    :param fmt: ``json``, ``table`` or ``csv``.
    :param timings: Keep ``runtime_ms`` fields.
    """
    if fmt not in FORMATS:
        raise SpecError(f"unknown output format {fmt!r}, expected one of {FORMATS}")
    if fmt == JSON:
        return canonical_json(obj, timings)
    frame = obj if isinstance(obj, pd.DataFrame) else _frame(to_plain(obj, timings))
    if fmt == CSV:
        return frame.to_csv(index=isinstance(obj, pd.DataFrame))
    if frame.empty:
        return "(empty)\n"
    return frame.to_string(index=isinstance(obj, pd.DataFrame)) + "\n"


def emit(
    obj: Any, fmt: str = JSON, out: Optional[Union[str, Path]] = None, timings: bool = False
) -> str:
    """
    Render a report and write it to ``out`` when given.

    :return: The rendered text.
    """
    text = render(obj, fmt, timings)
    if out is not None:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    return text
