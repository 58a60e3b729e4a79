"""Record and label CSV I/O.

Two accepted record layouts:

* single-column: one sample value per line, record id taken from the file
  name stem;
* multi-record: header ``record_id,sample_index,value``, rows grouped by id
  and ordered by sample index.

The sampling rate travels out-of-band (CLI flag or dataset config). Labels
are a sidecar CSV with header ``record_id,subject_id,age,sbp,dbp``; all
columns after record_id may be blank.
"""

import csv
import os
from dataclasses import dataclass

import numpy as np

MULTI_RECORD_HEADER = ["record_id", "sample_index", "value"]
LABELS_HEADER = ["record_id", "subject_id", "age", "sbp", "dbp"]


@dataclass(frozen=True)
class RecordLabels:
    subject_id: str | None = None
    age: float | None = None
    sbp: float | None = None
    dbp: float | None = None


def read_records(path) -> list:
    """Read records as a list of (record_id, samples) pairs.

    The layout is sniffed from the first line. Raises ValueError on
    malformed rows, naming the offending line.
    """
    with open(path, "r", encoding="utf-8", newline="") as f:
        first = f.readline()
        f.seek(0)
        if first.strip().replace(" ", "").lower() == ",".join(MULTI_RECORD_HEADER):
            return _read_multi(f, path)
        return _read_single(f, path)


def _read_single(f, path) -> list:
    values = []
    for lineno, line in enumerate(f, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {text!r}") from None
    record_id = os.path.splitext(os.path.basename(str(path)))[0]
    return [(record_id, np.asarray(values, dtype=np.float64))]


def _read_multi(f, path) -> list:
    reader = csv.reader(f)
    next(reader)  # header, already checked
    groups: dict = {}
    order = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 3:
            raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
        rid = row[0].strip()
        try:
            idx = int(row[1])
            val = float(row[2])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad sample row: {row!r}") from None
        if rid not in groups:
            groups[rid] = []
            order.append(rid)
        groups[rid].append((idx, val))
    out = []
    for rid in order:
        pairs = sorted(groups[rid], key=lambda p: p[0])
        out.append((rid, np.asarray([v for _, v in pairs], dtype=np.float64)))
    return out


def write_records(path, records) -> None:
    """Write (record_id, samples) pairs in the multi-record layout."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(MULTI_RECORD_HEADER)
        for rid, samples in records:
            for i, v in enumerate(np.asarray(samples).reshape(-1)):
                writer.writerow([rid, i, repr(float(v))])


def read_labels(path) -> dict:
    """Read the labels sidecar; returns record_id -> RecordLabels."""
    out = {}
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "record_id" not in reader.fieldnames:
            raise ValueError(f"{path}: labels file needs a record_id column")
        for row in reader:
            rid = (row.get("record_id") or "").strip()
            if not rid:
                continue

            def _num(key):
                text = (row.get(key) or "").strip()
                return float(text) if text else None

            subject = (row.get("subject_id") or "").strip() or None
            out[rid] = RecordLabels(subject, _num("age"), _num("sbp"), _num("dbp"))
    return out


def write_labels(path, labels: dict) -> None:
    """Write a record_id -> RecordLabels (or dict) mapping as CSV."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(LABELS_HEADER)
        for rid in sorted(labels):
            lab = labels[rid]
            if isinstance(lab, dict):
                lab = RecordLabels(
                    lab.get("subject_id"), lab.get("age"), lab.get("sbp"), lab.get("dbp")
                )
            writer.writerow([
                rid,
                lab.subject_id or "",
                "" if lab.age is None else f"{lab.age:g}",
                "" if lab.sbp is None else f"{lab.sbp:g}",
                "" if lab.dbp is None else f"{lab.dbp:g}",
            ])
