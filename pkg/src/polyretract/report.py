"""Convergence reports: per-level errors, dyadic orders, and serialization.

A level whose error is below ``ERROR_FLOOR`` (or that was skipped) is
*floored*: it is kept in the report but never used to estimate an order.
"""

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from .errors import DomainError

ERROR_FLOOR = 1e-12
CSV_HEADER = ("level", "t", "n", "error", "order", "floored")


@dataclass
class LevelResult:
    level: int
    t: float
    error: float = None  # None when the level was skipped
    order: float = None
    floored: bool = None

    def __post_init__(self):
        if self.floored is None:
            self.floored = self.error is None or not self.error >= ERROR_FLOOR


@dataclass
class SeriesResult:
    n: int
    levels: list

    def errors(self):
        return [lv.error for lv in self.levels]

    def valid_orders(self):
        """Orders between consecutive unfloored levels, minus the one that ends
        at the last level before the floor (that level carries roundoff)."""
        last = max((i for i, lv in enumerate(self.levels) if not lv.floored), default=-1)
        skip = last if any(lv.floored for lv in self.levels[last + 1:]) else None
        return [
            lv.order
            for i, lv in enumerate(self.levels)
            if lv.order is not None and i != skip
        ]

    def mean_order(self):
        orders = self.valid_orders()
        return sum(orders) / len(orders) if orders else math.nan


@dataclass
class ConvergenceReport:
    config: dict
    results: list
    # Extra per-run data (timings, certificates); not serialized or compared.
    diagnostics: dict = field(default_factory=dict, compare=False, repr=False)

    def series(self, n):
        for s in self.results:
            if s.n == n:
                return s
        raise KeyError(n)

    def mean_orders(self):
        return {s.n: s.mean_order() for s in self.results}

    def to_dict(self):
        return {
            "config": dict(self.config),
            "results": [
                {
                    "n": s.n,
                    "levels": [
                        {
                            "level": lv.level,
                            "t": lv.t,
                            "error": lv.error,
                            "order": lv.order,
                            "floored": lv.floored,
                        }
                        for lv in s.levels
                    ],
                }
                for s in self.results
            ],
        }

    @classmethod
    def from_dict(cls, d):
        results = [
            SeriesResult(
                r["n"],
                [
                    LevelResult(lv["level"], lv["t"], lv["error"], lv["order"], lv["floored"])
                    for lv in r["levels"]
                ],
            )
            for r in d["results"]
        ]
        return cls(dict(d["config"]), results)


def observed_order(errors):
    """Dyadic refinement orders ``log2(e[k-1] / e[k])``."""
    errors = list(errors)
    if len(errors) < 2:
        raise DomainError("need at least two errors")
    if any(not e > 0 for e in errors):
        raise DomainError("errors must be positive")
    return [math.log2(a / b) for a, b in zip(errors[:-1], errors[1:])]


def attach_orders(levels):
    """Fill ``order`` on each level from its predecessor when both are unfloored."""
    prev = None
    for lv in levels:
        lv.order = None
        if prev is not None and not prev.floored and not lv.floored:
            lv.order = observed_order([prev.error, lv.error])[0]
        prev = lv
    return levels


def _g(x):
    return "" if x is None else format(x, ".17g")


def report_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in report.results:
        for lv in s.levels:
            writer.writerow(
                [lv.level, _g(lv.t), s.n, _g(lv.error), _g(lv.order), str(lv.floored).lower()]
            )
    return buf.getvalue()


def report_to_json(report):
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_from_json(text):
    return ConvergenceReport.from_dict(json.loads(text))


def report_to_table(report):
    """Human-readable grid: one row per level, Error/Order column pairs per n."""
    results = report.results
    t0 = results[0].levels[0].t if results and results[0].levels else 1.0
    head = [f"{'t0/t':>6}"]
    for s in results:
        head.append(f"{'n=' + str(s.n) + ' error':>13} {'order':>7}")
    lines = [" | ".join(head)]
    lines.append("-" * len(lines[0]))
    nrows = max((len(s.levels) for s in results), default=0)
    for i in range(nrows):
        row = []
        for s in results:
            if i >= len(s.levels):
                row.append(" " * 21)
                continue
            lv = s.levels[i]
            if not row:
                row.append(f"{t0 / lv.t:>6g}")
            err = "skipped" if lv.error is None else f"{lv.error:.3e}" + ("*" if lv.floored else "")
            order = "" if lv.order is None else f"{lv.order:.3f}"
            row.append(f"{err:>13} {order:>7}")
        lines.append(" | ".join(row))
    means = ", ".join(f"n={s.n}: {s.mean_order():.3f}" for s in results)
    lines.append(f"mean order ({means}); * = below error floor {ERROR_FLOOR:g}")
    return "\n".join(lines) + "\n"


FORMATS = {"csv": report_to_csv, "json": report_to_json, "table": report_to_table}


def emit_report(report, fmt="csv", path=None):
    """Write ``report`` as csv, json or table to ``path`` (stdout if None or '-')."""
    if fmt not in FORMATS:
        raise DomainError(f"unknown format {fmt!r}; expected one of {sorted(FORMATS)}")
    text = FORMATS[fmt](report)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
