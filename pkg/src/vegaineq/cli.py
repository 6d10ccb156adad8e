"""CSV ingestion and the command-line interface."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, engine
from .decomposition import decompose
from .sample import GroupedSample, Sample

_MEASURE_FLAGS = {"gini": "gini", "vega": "vega", "angular-mean": "angular_mean"}


@dataclass(frozen=True)
class DatasetSpec:
    """Where and how to read a delimited dataset."""

    path: str
    value_column: str
    weight_column: str | None = None
    group_column: str | None = None
    missing_policy: str = "error"  # or "drop"
    delimiter: str | None = None  # None: auto-detect comma/tab


class LoadError(ValueError):
    pass


class ColumnError(ValueError):
    """Unknown or ambiguous column selection (a usage problem)."""


def _resolve_column(header: list, name: str) -> int:
    if name in header:
        return header.index(name)
    try:
        idx = int(name)
    except ValueError:
        raise ColumnError("column %r not found in header %s" % (name, header))
    if 0 <= idx < len(header):
        return idx
    raise ColumnError("column index %d out of range" % idx)


def load(spec: DatasetSpec):
    """Read a CSV/TSV into a Sample (or GroupedSample when a group column is set).

    Returns (data, meta) where meta records rows read and dropped.  Under the
    'drop' policy, rows with missing or unparseable numeric cells are skipped
    with a warning; under 'error' they abort the load.
    """
    with open(spec.path, newline="") as fh:
        first = fh.readline()
        if not first:
            raise LoadError("empty file: %s" % spec.path)
        if spec.delimiter is not None:
            delim = spec.delimiter
        else:
            delim = "\t" if ("\t" in first and "," not in first) else ","
        fh.seek(0)
        reader = csv.reader(fh, delimiter=delim)
        header = next(reader)
        vi = _resolve_column(header, spec.value_column)
        wi = _resolve_column(header, spec.weight_column) if spec.weight_column else None
        gi = _resolve_column(header, spec.group_column) if spec.group_column else None

        values, weights, labels = [], [], []
        rows_read = 0
        rows_dropped = 0
        warnings = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            rows_read += 1
            cells = [row[vi]] + ([row[wi]] if wi is not None else [])
            try:
                parsed = [float(cell) for cell in cells]
                if any(not np.isfinite(p) for p in parsed):
                    raise ValueError("non-finite")
            except (ValueError, IndexError):
                if spec.missing_policy == "drop":
                    rows_dropped += 1
                    warnings.append("dropped row %d: unparseable or missing cell" % lineno)
                    continue
                raise LoadError("row %d: unparseable or missing numeric cell" % lineno)
            values.append(parsed[0])
            if wi is not None:
                weights.append(parsed[1])
            if gi is not None:
                labels.append(row[gi])

    if not values:
        raise LoadError("no usable rows in %s" % spec.path)
    sample = Sample(np.array(values), np.array(weights) if weights else None)
    meta = {"rows_read": rows_read, "rows_dropped": rows_dropped, "warnings": warnings}
    if gi is not None:
        return GroupedSample(sample, tuple(labels)), meta
    return sample, meta


def _fmt_float(x: float) -> str:
    s = format(float(x), ".17g")
    if "e" not in s and "." not in s and "n" not in s and "i" not in s:
        s += ".0"
    return s


def _to_json(obj, indent: int = 0) -> str:
    """Serialize with floats at 17 significant digits, keys in insertion order."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            "%s  %s: %s" % (pad, json.dumps(str(k)), _to_json(v, indent + 1))
            for k, v in obj.items()
        )
        return "{\n%s\n%s}" % (items, pad)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join("%s  %s" % (pad, _to_json(v, indent + 1)) for v in obj)
        return "[\n%s\n%s]" % (items, pad)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    return json.dumps(str(obj))


def _report_dict(report) -> dict:
    return {
        "measure": report.measure,
        "value": report.value,
        "population": report.population,
        "mean": report.mean,
        "nonpositive_share": report.nonpositive_share,
        "warnings": list(report.warnings),
    }


def _decomposition_dict(rep) -> dict:
    return {
        "groups": [
            {
                "label": t.label,
                "population": t.population,
                "mean": t.mean,
                "within_index": t.within_index,
                "weight": t.weight,
                "contribution": t.contribution,
                "flagged": t.flagged,
            }
            for t in rep.groups
        ],
        "between_term": rep.between_term,
        "total": rep.total,
        "residual": rep.residual,
    }


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vegaineq",
        description="Inequality indices: Gini, the angular-scaled vega index, "
                    "and the mean angular difference.",
    )
    p.add_argument("--input", required=True, help="input CSV/TSV path")
    p.add_argument("--column", required=True, help="value column (name or index)")
    p.add_argument("--weight-column", help="frequency-weight column")
    p.add_argument("--group-column", help="group label column (enables decomposition)")
    p.add_argument("--measure", action="append", choices=sorted(_MEASURE_FLAGS),
                   help="measure to compute (repeatable; default: gini and vega)")
    p.add_argument("--quantiles", type=int,
                   help="evaluate on a q-bin quantile compression instead of exactly")
    p.add_argument("--threads", type=int, default=1, help="worker threads for pair sums")
    p.add_argument("--strict", action="store_true",
                   help="escalate the nonpositive-majority warning to an error")
    p.add_argument("--missing", choices=["error", "drop"], default="error",
                   help="policy for missing/unparseable cells")
    p.add_argument("--delimiter", choices=[",", "\t"], help="field delimiter override")
    p.add_argument("--output", choices=["json", "table"], default="json")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    """Entry point; returns 0 on success, 1 on data/validation error, 2 on usage error."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    measures = [_MEASURE_FLAGS[m] for m in (args.measure or ["gini", "vega"])]
    spec = DatasetSpec(
        path=args.input,
        value_column=args.column,
        weight_column=args.weight_column,
        group_column=args.group_column,
        missing_policy=args.missing,
        delimiter=args.delimiter,
    )
    try:
        data, meta = load(spec)
    except ColumnError as exc:
        print("usage error: %s" % exc, file=stderr)
        return 2
    except (LoadError, OSError) as exc:
        print("error: %s" % exc, file=stderr)
        return 1

    sample = data.sample if isinstance(data, GroupedSample) else data
    if args.quantiles is not None:
        plan = engine.ComputePlan(mode="quantile", quantiles=args.quantiles,
                                  threads=args.threads)
    else:
        plan = engine.ComputePlan(mode="exact", threads=args.threads)

    doc = {
        "tool": "vegaineq",
        "version": __version__,
        "dataset": {
            "path": spec.path,
            "rows_read": meta["rows_read"],
            "rows_dropped": meta["rows_dropped"],
        },
        "plan": {
            "mode": plan.mode,
            "quantiles": plan.quantiles,
            "threads": plan.threads,
            "chunk": plan.chunk,
        },
        "measures": [],
        "decomposition": None,
    }
    try:
        for measure in measures:
            report = engine.evaluate(sample, measure, plan, strict=args.strict)
            doc["measures"].append(_report_dict(report))
            for w in report.warnings:
                print("warning: %s (%s)" % (w, measure), file=stderr)
        if isinstance(data, GroupedSample) and "vega" in measures:
            doc["decomposition"] = _decomposition_dict(decompose(data, strict=args.strict))
    except ValueError as exc:
        print("error: %s" % exc, file=stderr)
        return 1

    for w in meta["warnings"]:
        print("warning: %s" % w, file=stderr)

    if args.output == "json":
        print(_to_json(doc), file=stdout)
    else:
        print("rows read: %d  dropped: %d" % (meta["rows_read"], meta["rows_dropped"]),
              file=stdout)
        for rep in doc["measures"]:
            print("%-13s %.12g  (n=%g, mean=%.12g)" % (
                rep["measure"], rep["value"], rep["population"], rep["mean"]),
                file=stdout)
        if doc["decomposition"] is not None:
            dec = doc["decomposition"]
            print("decomposition of vega:", file=stdout)
            for t in dec["groups"]:
                print("  group %-10s weight=%.6g within=%s contribution=%.12g" % (
                    t["label"], t["weight"],
                    "undefined" if t["within_index"] is None else "%.12g" % t["within_index"],
                    t["contribution"]), file=stdout)
            print("  between=%.12g total=%.12g residual=%.3g" % (
                dec["between_term"], dec["total"], dec["residual"]), file=stdout)
    return 0


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
