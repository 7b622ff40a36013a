"""Reading raw categorical columns and serializing histograms.

Raw data comes in as one delimited column (file or stdin); histograms go out
as CSV (header ``category,count,origin``) or JSON (``bins`` array plus a
``meta`` block). Numeric serialization uses full round-trip precision so that
write -> read reproduces counts exactly.
"""

from __future__ import annotations

import csv
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any, Iterator

from .core import Histogram, IngestError, NoisyBin, NoisyHistogram, Origin, ValidityError

CSV_HEADER = ("category", "count", "origin")


@dataclass(frozen=True)
class ColumnSelector:
    """Which column of which delimited source to read.

    source "-" means stdin. column is a header name or a 0-based index;
    selecting by name requires a header row.
    """

    source: str | Path
    column: str | int
    has_header: bool = True
    delimiter: str = ","

    def __post_init__(self) -> None:
        if isinstance(self.column, str) and not self.has_header:
            raise ValueError("selecting a column by name requires a header row")
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")


def _open_source(source: str | Path) -> IO[str]:
    if source == "-":
        return sys.stdin
    return open(source, encoding="utf-8", newline="")


def read_histogram(selector: ColumnSelector, drop_values: frozenset[str] = frozenset()) -> Histogram:
    """Count the selected column into a histogram.

    Cells are trimmed; empty cells are skipped (one warning reports how
    many); values in drop_values are skipped silently. Bin order is first
    appearance.
    """
    fh = _open_source(selector.source)
    try:
        reader = csv.reader(fh, delimiter=selector.delimiter)
        index = _resolve_column(reader, selector)
        counts: dict[str, int] = {}
        skipped_empty = 0
        while True:
            try:
                row = next(reader)
            except StopIteration:
                break
            except csv.Error as exc:
                raise IngestError(f"{selector.source}: malformed CSV at line {reader.line_num}: {exc}") from exc
            if not row:
                continue
            if index >= len(row):
                raise IngestError(
                    f"{selector.source}: line {reader.line_num}: expected at least "
                    f"{index + 1} fields, got {len(row)}"
                )
            cell = row[index].strip()
            if cell == "":
                skipped_empty += 1
                continue
            if cell in drop_values:
                continue
            counts[cell] = counts.get(cell, 0) + 1
    finally:
        if fh is not sys.stdin:
            fh.close()
    if skipped_empty:
        warnings.warn(f"{selector.source}: skipped {skipped_empty} empty cells", stacklevel=2)
    return Histogram((label, float(count)) for label, count in counts.items())


def _resolve_column(reader: Iterator[list[str]], selector: ColumnSelector) -> int:
    if not selector.has_header:
        index = selector.column
        assert isinstance(index, int)
        if index < 0:
            raise IngestError(f"column index must be >= 0, got {index}")
        return index
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError(f"{selector.source}: empty input, no header row") from None
    names = [name.strip() for name in header]
    if isinstance(selector.column, int):
        if not 0 <= selector.column < len(names):
            raise IngestError(
                f"{selector.source}: column index {selector.column} out of range; "
                f"available columns: {names}"
            )
        return selector.column
    try:
        return names.index(selector.column)
    except ValueError:
        raise IngestError(
            f"{selector.source}: no column named {selector.column!r}; available columns: {names}"
        ) from None


def _format_count(count: float) -> str:
    return repr(float(count))


def _infer_format(path: str | Path, fmt: str | None) -> str:
    if fmt is not None:
        if fmt not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
        return fmt
    return "json" if str(path).endswith(".json") else "csv"


def write_histogram(
    h: Histogram | NoisyHistogram,
    path: str | Path,
    fmt: str | None = None,
    meta: dict[str, Any] | None = None,
) -> None:
    """Serialize a histogram; format inferred from the path suffix unless given.

    meta (epsilon, rho, n, tau, seed for noisy releases) is recorded in JSON
    output only; CSV carries just the bins.
    """
    fmt = _infer_format(path, fmt)
    out = sys.stdout if path == "-" else open(path, "w", encoding="utf-8", newline="")
    try:
        if fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for label, count, origin in _rows(h):
                writer.writerow((label, _format_count(count), origin))
        else:
            payload: dict[str, Any] = {
                "bins": [
                    {"label": label, "count": float(count), "origin": origin or None}
                    for label, count, origin in _rows(h)
                ],
                "meta": meta or {},
            }
            json.dump(payload, out, ensure_ascii=False, indent=2)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _rows(h: Histogram | NoisyHistogram) -> Iterator[tuple[str, float, str]]:
    if isinstance(h, NoisyHistogram):
        for b in h.bins:
            yield b.label, b.count, b.origin.value
    else:
        for label, count in h.items():
            yield label, count, ""


def load_histogram(path: str | Path, fmt: str | None = None) -> Histogram | NoisyHistogram:
    """Read a histogram written by write_histogram.

    Returns a NoisyHistogram when origins are present, a plain Histogram
    otherwise.
    """
    fmt = _infer_format(path, fmt)
    if fmt == "json":
        with open(path, encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path}: invalid JSON: {exc}") from exc
        bins = payload.get("bins")
        if not isinstance(bins, list):
            raise IngestError(f"{path}: expected a 'bins' array")
        triples = []
        for i, b in enumerate(bins):
            try:
                triples.append((b["label"], float(b["count"]), b.get("origin") or ""))
            except (TypeError, KeyError, ValueError) as exc:
                raise IngestError(f"{path}: bad bin at index {i}: {exc}") from exc
        return _assemble(path, triples)

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty histogram file") from None
        if tuple(header) != CSV_HEADER:
            raise IngestError(f"{path}: expected header {','.join(CSV_HEADER)}, got {header}")
        triples = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise IngestError(f"{path}: line {reader.line_num}: expected 3 fields, got {len(row)}")
            try:
                count = float(row[1])
            except ValueError:
                raise IngestError(f"{path}: line {reader.line_num}: bad count {row[1]!r}") from None
            triples.append((row[0], count, row[2]))
    return _assemble(path, triples)


def _assemble(path: str | Path, triples: list[tuple[str, float, str]]) -> Histogram | NoisyHistogram:
    origins = {origin for _, _, origin in triples}
    try:
        if origins <= {""}:
            return Histogram((label, count) for label, count, _ in triples)
        if "" in origins:
            raise IngestError(f"{path}: mixed blank and non-blank origins")
        return NoisyHistogram(NoisyBin(label, count, Origin(origin)) for label, count, origin in triples)
    except (ValueError, ValidityError) as exc:
        raise IngestError(f"{path}: {exc}") from None
