"""Batch pipeline: records -> segments -> channel-stack tensors + manifest.

Output is deterministic for a given config and seed, independent of worker
count: every segment's tensor path and split label are fixed up front from
the segment list sorted by (record_id, segment_index), and workers only
render pixels to preassigned paths.
"""

import concurrent.futures
import csv
import os
import re
from dataclasses import dataclass, field

import numpy as np

from .imaging import build_channel_stack, stack_to_image, tensor_to_bytes, write_png
from .records import RecordLabels
from .segment import (
    PLATEAU_REL_TOL,
    PLATEAU_RUN_LEN,
    PULSE_TARGET_LEN,
    WINDOW_LEN,
    DEFAULT_MIN_DISTANCE,
    default_min_prominence,
    detect_peaks,
    has_plateau,
    segment_pulses,
    segment_windows,
)
from .series import TimeSeries

SPLITS = ("train", "val", "test")
MANIFEST_FIELDS = [
    "record_id",
    "subject_id",
    "segment_index",
    "tensor_path",
    "age",
    "age_group",
    "sbp",
    "dbp",
    "split",
]

AGE_GROUP_LABELS = ("0-20", "20-30", "30-40", "40+")
_AGE_EDGES = (20.0, 30.0, 40.0)


def age_group(age: float) -> str:
    """Age-group bin: [0,20), [20,30), [30,40), [40,inf); lower-inclusive."""
    if age < 0 or not np.isfinite(age):
        raise ValueError(f"age must be a finite non-negative number, got {age}")
    for label, edge in zip(AGE_GROUP_LABELS, _AGE_EDGES):
        if age < edge:
            return label
    return AGE_GROUP_LABELS[-1]


@dataclass(frozen=True)
class ManifestRow:
    record_id: str
    subject_id: str
    segment_index: int
    tensor_path: str
    age: float | None = None
    age_group: str = ""
    sbp: float | None = None
    dbp: float | None = None
    split: str = ""


class RecordManifest:
    """Ordered manifest rows plus CSV round-trip (UTF-8, LF line endings)."""

    def __init__(self, rows=()):
        self.rows = list(rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def split_counts(self) -> dict:
        counts = {s: 0 for s in SPLITS}
        for row in self.rows:
            counts[row.split] = counts.get(row.split, 0) + 1
        return counts

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(MANIFEST_FIELDS)
            for r in self.rows:
                writer.writerow([
                    r.record_id,
                    r.subject_id,
                    r.segment_index,
                    r.tensor_path,
                    "" if r.age is None else f"{r.age:g}",
                    r.age_group,
                    "" if r.sbp is None else f"{r.sbp:g}",
                    "" if r.dbp is None else f"{r.dbp:g}",
                    r.split,
                ])

    @classmethod
    def read_csv(cls, path) -> "RecordManifest":
        rows = []
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != MANIFEST_FIELDS:
                raise ValueError(f"{path}: unexpected manifest header {reader.fieldnames}")
            for row in reader:
                rows.append(ManifestRow(
                    record_id=row["record_id"],
                    subject_id=row["subject_id"],
                    segment_index=int(row["segment_index"]),
                    tensor_path=row["tensor_path"],
                    age=float(row["age"]) if row["age"] else None,
                    age_group=row["age_group"],
                    sbp=float(row["sbp"]) if row["sbp"] else None,
                    dbp=float(row["dbp"]) if row["dbp"] else None,
                    split=row["split"],
                ))
        return cls(rows)


@dataclass
class DatasetConfig:
    """Everything `build_dataset` needs besides the records themselves."""

    sampling_rate: float
    mode: str = "pulse"  # "pulse" (50-sample beats) or "window" (224-sample windows)
    target_len: int = PULSE_TARGET_LEN
    window_len: int = WINDOW_LEN
    stride: int | None = None
    split_fractions: tuple = (0.662, 0.169, 0.169)
    seed: int = 0
    split_by: str = "segment"  # "segment" mirrors the source pipeline; "subject" avoids leakage
    upscale: int | None = None
    png: bool = False
    workers: int = 1
    min_distance: int = DEFAULT_MIN_DISTANCE
    min_prominence: float | None = None  # None -> 0.3 x IQR per record
    plateau_run_len: int = PLATEAU_RUN_LEN
    plateau_rel_tol: float = PLATEAU_REL_TOL

    def __post_init__(self):
        if self.mode not in ("pulse", "window"):
            raise ValueError(f"mode must be 'pulse' or 'window', got {self.mode!r}")
        if self.split_by not in ("segment", "subject"):
            raise ValueError(f"split_by must be 'segment' or 'subject', got {self.split_by!r}")
        if len(self.split_fractions) != len(SPLITS):
            raise ValueError("split_fractions needs train,val,test entries")
        if any(f < 0 for f in self.split_fractions) or sum(self.split_fractions) <= 0:
            raise ValueError(f"bad split fractions {self.split_fractions}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class DatasetSummary:
    n_records: int = 0
    n_records_skipped: int = 0
    n_segments: int = 0
    n_plateau_rejected: int = 0
    split_counts: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n_records": self.n_records,
            "n_records_skipped": self.n_records_skipped,
            "n_segments": self.n_segments,
            "n_plateau_rejected": self.n_plateau_rejected,
            "split_counts": self.split_counts,
            "warnings": self.warnings,
        }


def proportional_counts(n: int, fractions) -> list:
    """Split n into parts matching the fractions within one row each.

    Largest-remainder apportionment: floors first, then the leftover rows go
    to the largest fractional parts (ties toward earlier splits).
    """
    total = float(sum(fractions))
    quotas = [n * f / total for f in fractions]
    counts = [int(q) for q in quotas]
    order = sorted(range(len(quotas)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in range(n - sum(counts)):
        counts[order[i]] += 1
    return counts


def assign_splits(n: int, fractions, seed: int) -> list:
    """Seeded shuffle of n ordered items into train/val/test labels."""
    counts = proportional_counts(n, fractions)
    perm = np.random.default_rng(seed).permutation(n)
    labels = [""] * n
    pos = 0
    for split, count in zip(SPLITS, counts):
        for i in perm[pos:pos + count]:
            labels[i] = split
        pos += count
    return labels


def _assign_splits_by_subject(subjects: list, fractions, seed: int) -> dict:
    """Whole subjects per split, filled in seeded order until quotas are met.

    ``subjects`` is a list of (subject_id, n_segments). Proportions are
    best-effort at subject granularity.
    """
    order = np.random.default_rng(seed).permutation(len(subjects))
    total = sum(c for _, c in subjects)
    quotas = proportional_counts(total, fractions)
    assignment = {}
    split_idx = 0
    filled = 0
    for k in order:
        sid, count = subjects[k]
        while split_idx < len(SPLITS) - 1 and filled >= quotas[split_idx]:
            split_idx += 1
            filled = 0
        assignment[sid] = SPLITS[split_idx]
        filled += count
    return assignment


_SAFE_ID = re.compile(r"[^A-Za-z0-9._-]")


def _tensor_filename(record_id: str, segment_index: int) -> str:
    return f"{_SAFE_ID.sub('-', record_id)}_{segment_index:05d}.vgt"


def _render_task(args) -> None:
    samples, rate, upscale, png, tensor_path, png_path = args
    stack = build_channel_stack(np.asarray(samples), rate)
    img = stack_to_image(stack, upscale=upscale)
    with open(tensor_path, "wb") as f:
        f.write(tensor_to_bytes(img))
    if png:
        write_png(img, png_path)


def _segment_record(record_id, samples, config, summary):
    """Segment one record per config; returns [] and logs a warning on failure."""
    try:
        series = TimeSeries(samples, config.sampling_rate)
        if config.mode == "pulse":
            prominence = (
                config.min_prominence
                if config.min_prominence is not None
                else default_min_prominence(series)
            )
            peaks = detect_peaks(series, prominence, config.min_distance)
            return segment_pulses(series, peaks, config.target_len, record_id)
        segments = segment_windows(series, config.window_len, config.stride, record_id)
        kept = []
        for seg in segments:
            if has_plateau(seg, config.plateau_run_len, config.plateau_rel_tol):
                summary.n_plateau_rejected += 1
            else:
                kept.append(seg)
        return kept
    except ValueError as exc:
        summary.n_records_skipped += 1
        summary.warnings.append(f"{record_id}: {exc}")
        return []


def build_dataset(records, config: DatasetConfig, out_dir) -> tuple:
    """Run the full pipeline; returns (RecordManifest, DatasetSummary).

    ``records`` is an iterable of (record_id, samples) pairs, optionally
    (record_id, samples, RecordLabels) triples. Tensors land in
    ``out_dir/tensors/``, the manifest in ``out_dir/manifest.csv``;
    manifest paths are relative to ``out_dir``.
    """
    summary = DatasetSummary()
    labelled = []
    for item in records:
        rid, samples = item[0], item[1]
        labels = item[2] if len(item) > 2 else None
        labelled.append((rid, samples, labels or RecordLabels()))
    labelled.sort(key=lambda r: r[0])
    ids = [r[0] for r in labelled]
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise ValueError(f"duplicate record id: {dup}")
    summary.n_records = len(labelled)

    entries = []  # (record_id, segment_index, segment, labels)
    for rid, samples, labels in labelled:
        for seg in _segment_record(rid, samples, config, summary):
            entries.append((rid, seg.window_index, seg, labels))
    if not entries:
        raise ValueError("no segments produced")
    entries.sort(key=lambda e: (e[0], e[1]))
    summary.n_segments = len(entries)

    if config.split_by == "segment":
        split_labels = assign_splits(len(entries), config.split_fractions, config.seed)
    else:
        subject_of = [e[3].subject_id or e[0] for e in entries]
        sizes: dict = {}
        for sid in subject_of:
            sizes[sid] = sizes.get(sid, 0) + 1
        subjects = sorted(sizes.items())
        assignment = _assign_splits_by_subject(subjects, config.split_fractions, config.seed)
        split_labels = [assignment[sid] for sid in subject_of]

    tensor_dir = os.path.join(out_dir, "tensors")
    os.makedirs(tensor_dir, exist_ok=True)

    rows = []
    tasks = []
    for (rid, seg_idx, seg, labels), split in zip(entries, split_labels):
        rel = os.path.join("tensors", _tensor_filename(rid, seg_idx))
        tensor_path = os.path.join(out_dir, rel)
        png_path = tensor_path[:-4] + ".png"
        tasks.append((
            seg.samples,
            config.sampling_rate,
            config.upscale,
            config.png,
            tensor_path,
            png_path,
        ))
        rows.append(ManifestRow(
            record_id=rid,
            subject_id=labels.subject_id or rid,
            segment_index=seg_idx,
            tensor_path=rel,
            age=labels.age,
            age_group="" if labels.age is None else age_group(labels.age),
            sbp=labels.sbp,
            dbp=labels.dbp,
            split=split,
        ))

    if config.workers == 1:
        for task in tasks:
            _render_task(task)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            list(pool.map(_render_task, tasks, chunksize=max(1, len(tasks) // (config.workers * 4))))

    manifest = RecordManifest(rows)
    manifest.write_csv(os.path.join(out_dir, "manifest.csv"))
    summary.split_counts = manifest.split_counts()
    return manifest, summary
