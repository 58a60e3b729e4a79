"""Command-line pipeline driver.

Subcommands: segment, graph, image, dataset, metrics, bench, synth.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bench import bench_segment
from .dataset import DatasetConfig, build_dataset
from .imaging import build_channel_stack, matrix_to_image, stack_to_image, write_png, write_tensor
from .metrics import metrics_json
from .records import read_labels, read_records, write_labels, write_records
from .segment import (
    default_min_prominence,
    detect_peaks,
    has_plateau,
    segment_pulses,
    segment_windows,
)
from .series import TimeSeries
from .synth import synth_records
from .vg import adjacency_to_csv, build_vg_fast, build_vg_oracle, build_vg_slope_weighted


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _parse_split(text):
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated fractions")
    return tuple(parts)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pulsevg", description=__doc__)
    parser.add_argument("--version", action="version", version=f"pulsevg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_records_args(p):
        p.add_argument("--records", required=True, help="records CSV (single or multi layout)")
        p.add_argument("--rate", type=float, required=True, help="sampling rate in Hz")
        p.add_argument("--record", default=None, help="record id to use (default: first)")

    p = sub.add_parser("segment", help="segment records into fixed-length pieces")
    p.add_argument("--records", required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--mode", choices=("pulse", "window"), default="pulse")
    p.add_argument("--target-len", type=int, default=50)
    p.add_argument("--window-len", type=int, default=224)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--min-distance", type=int, default=15)
    p.add_argument("--min-prominence", type=float, default=None)
    p.add_argument("--drop-plateaus", action="store_true")
    p.add_argument("--out", required=True, help="output segments CSV (multi layout)")

    p = sub.add_parser("graph", help="dump a visibility-graph adjacency matrix as CSV")
    add_records_args(p)
    p.add_argument("--weighted", action="store_true", help="slope-weighted instead of binary")
    p.add_argument("--oracle", action="store_true", help="use the reference constructor")
    p.add_argument("--out", required=True)

    p = sub.add_parser("image", help="render a record's three-channel stack to a VGT1 tensor")
    add_records_args(p)
    p.add_argument("--upscale", type=int, default=None)
    p.add_argument("--png", default=None, help="also write a PNG preview here")
    p.add_argument("--gray", action="store_true", help="single-channel binary VG image instead")
    p.add_argument("--out", required=True)

    p = sub.add_parser("dataset", help="batch records into tensors + manifest")
    p.add_argument("--records", required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--mode", choices=("pulse", "window"), default="pulse")
    p.add_argument("--target-len", type=int, default=50)
    p.add_argument("--window-len", type=int, default=224)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--labels", default=None, help="labels sidecar CSV")
    p.add_argument("--split", type=_parse_split, default=(0.662, 0.169, 0.169),
                   help="train,val,test fractions")
    p.add_argument("--split-by", choices=("segment", "subject"), default="segment")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--upscale", type=int, default=None)
    p.add_argument("--png", action="store_true", help="write PNG previews next to tensors")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("metrics", help="waveform MAE and BHS grade from pred/truth CSVs")
    p.add_argument("--pred", required=True, help="predictions CSV, one mmHg value per line")
    p.add_argument("--truth", required=True, help="ground-truth CSV, same length")
    p.add_argument("--out", default=None, help="write metrics JSON here (default: stdout only)")

    p = sub.add_parser("bench", help="per-segment latency micro-benchmark")
    p.add_argument("--segments", type=int, default=1000)
    p.add_argument("--len", type=int, default=224, dest="segment_len")
    p.add_argument("--rate", type=float, default=125.0)
    p.add_argument("--upscale", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None, help="write the report as JSON here")

    p = sub.add_parser("synth", help="generate labelled synthetic PPG records")
    p.add_argument("--records", type=int, default=10, dest="n_records")
    p.add_argument("--duration", type=float, default=6.0)
    p.add_argument("--rate", type=float, default=50.0)
    p.add_argument("--bpm-low", type=float, default=55.0)
    p.add_argument("--bpm-high", type=float, default=95.0)
    p.add_argument("--bpm-classes", default=None,
                   help="comma-separated rates; records alternate classes (e.g. 60,150)")
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="records CSV to write")
    p.add_argument("--labels-out", default=None, help="labels sidecar CSV to write")
    return parser


def _pick_record(records, wanted):
    if wanted is None:
        return records[0]
    for rid, samples in records:
        if rid == wanted:
            return rid, samples
    raise ValueError(f"record {wanted!r} not found")


def _cmd_segment(args) -> int:
    records = read_records(args.records)
    out_rows = []
    n_dropped = 0
    for rid, samples in records:
        series = TimeSeries(samples, args.rate)
        if args.mode == "pulse":
            prominence = (
                args.min_prominence
                if args.min_prominence is not None
                else default_min_prominence(series)
            )
            peaks = detect_peaks(series, prominence, args.min_distance)
            segments = segment_pulses(series, peaks, args.target_len, rid)
        else:
            segments = segment_windows(series, args.window_len, args.stride, rid)
        if args.drop_plateaus:
            kept = [s for s in segments if not has_plateau(s)]
            n_dropped += len(segments) - len(kept)
            segments = kept
        for seg in segments:
            out_rows.append((f"{rid}_{seg.window_index:05d}", seg.samples))
    write_records(args.out, out_rows)
    print(f"wrote {len(out_rows)} segments from {len(records)} records to {args.out}"
          + (f" ({n_dropped} plateau-dropped)" if args.drop_plateaus else ""))
    return 0


def _cmd_graph(args) -> int:
    rid, samples = _pick_record(read_records(args.records), args.record)
    series = TimeSeries(samples, args.rate)
    if args.weighted:
        adj = build_vg_slope_weighted(series)
    elif args.oracle:
        adj = build_vg_oracle(series)
    else:
        adj = build_vg_fast(series)
    adjacency_to_csv(adj, args.out)
    print(f"record {rid}: {adj.n} vertices, {adj.edge_count()} edges -> {args.out}")
    return 0


def _cmd_image(args) -> int:
    rid, samples = _pick_record(read_records(args.records), args.record)
    if args.gray:
        img = matrix_to_image(build_vg_fast(TimeSeries(samples, args.rate)), upscale=args.upscale)
    else:
        img = stack_to_image(build_channel_stack(samples, args.rate), upscale=args.upscale)
    write_tensor(img, args.out)
    if args.png:
        write_png(img, args.png)
    print(f"record {rid}: {img.width}x{img.height}x{img.channels} tensor -> {args.out}")
    return 0


def _cmd_dataset(args) -> int:
    records = read_records(args.records)
    labels = read_labels(args.labels) if args.labels else {}
    triples = [(rid, samples, labels.get(rid)) for rid, samples in records]
    config = DatasetConfig(
        sampling_rate=args.rate,
        mode=args.mode,
        target_len=args.target_len,
        window_len=args.window_len,
        stride=args.stride,
        split_fractions=args.split,
        split_by=args.split_by,
        seed=args.seed,
        upscale=args.upscale,
        png=args.png,
        workers=args.workers,
    )
    manifest, summary = build_dataset(triples, config, args.out)
    print(json.dumps(summary.as_dict(), indent=2))
    return 0


def _read_values(path):
    values = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            text = line.strip()
            if text:
                values.append(float(text))
    return np.asarray(values)


def _cmd_metrics(args) -> int:
    result = metrics_json(_read_values(args.pred), _read_values(args.truth))
    text = json.dumps(result, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    return 0


def _cmd_bench(args) -> int:
    report = bench_segment(
        n_segments=args.segments,
        segment_len=args.segment_len,
        rate=args.rate,
        upscale=args.upscale,
        seed=args.seed,
    )
    text = json.dumps(report.as_dict(), indent=2)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    return 0


def _cmd_synth(args) -> int:
    classes = None
    if args.bpm_classes:
        classes = tuple(float(x) for x in args.bpm_classes.split(","))
    records, labels = synth_records(
        args.n_records,
        args.duration,
        args.rate,
        bpm_range=(args.bpm_low, args.bpm_high),
        bpm_classes=classes,
        noise=args.noise,
        seed=args.seed,
    )
    write_records(args.out, records)
    if args.labels_out:
        write_labels(args.labels_out, labels)
    print(f"wrote {len(records)} synthetic records to {args.out}")
    return 0


_COMMANDS = {
    "segment": _cmd_segment,
    "graph": _cmd_graph,
    "image": _cmd_image,
    "dataset": _cmd_dataset,
    "metrics": _cmd_metrics,
    "bench": _cmd_bench,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"pulsevg {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
