"""Run reports for ``happylab solve`` and friends."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from happylab.models import Objective
from happylab.utils import fmt_decimal, fmt_rational

# Order of the CSV columns; rational fields expand into <name> and <name>_decimal.
_RATIONAL_FIELDS = ("value", "lp_value", "exact_value", "approx_ratio", "gap_ratio")


def rational(x: Fraction) -> Dict[str, str]:
    return {"exact": fmt_rational(x), "decimal": fmt_decimal(x)}


def _ratio(num: Optional[Fraction], den: Optional[Fraction]) -> Optional[Fraction]:
    if num is None or den is None or den == 0:
        return None
    return num / den


class RunReport(BaseModel):
    """One solver run: what was solved, how, and the resulting values.

    ``approx_ratio`` is value / exact and ``gap_ratio`` is exact / LP. Each is
    present only when both operands are known and the denominator is non-zero.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    instance: str
    seed: Optional[int] = None
    algorithm: str
    objective: Objective
    value: Fraction
    lp_value: Optional[Fraction] = None
    exact_value: Optional[Fraction] = None
    coloring: Tuple[int, ...] = ()
    wall_time: Optional[float] = None

    @property
    def approx_ratio(self) -> Optional[Fraction]:
        return _ratio(self.value, self.exact_value)

    @property
    def gap_ratio(self) -> Optional[Fraction]:
        return _ratio(self.exact_value, self.lp_value)

    # -----------------------------------------------------------------------
    # Renderings
    # -----------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "instance": self.instance,
            "seed": self.seed,
            "algorithm": self.algorithm,
            "objective": self.objective.value,
        }
        for name in _RATIONAL_FIELDS:
            x = getattr(self, name)
            if x is not None:
                out[name] = rational(x)
        out["coloring"] = list(self.coloring)
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_row(self) -> Dict[str, str]:
        row = {
            "instance": self.instance,
            "seed": "" if self.seed is None else str(self.seed),
            "algorithm": self.algorithm,
            "objective": self.objective.value,
        }
        for name in _RATIONAL_FIELDS:
            x = getattr(self, name)
            row[name] = "" if x is None else fmt_rational(x)
            row[f"{name}_decimal"] = "" if x is None else fmt_decimal(x)
        row["coloring"] = " ".join(str(c) for c in self.coloring)
        row["wall_time"] = "" if self.wall_time is None else f"{self.wall_time:.6f}"
        return row

    def to_csv(self) -> str:
        return rows_to_csv([self.csv_row()])


def rows_to_csv(rows: List[Dict[str, str]]) -> str:
    """Header plus one line per row; columns follow the first row's key order."""
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()
