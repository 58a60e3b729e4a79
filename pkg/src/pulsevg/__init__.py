"""pulsevg: visibility-graph encoding of pulse waveforms.

Converts 1-D physiological signals (PPG, arterial pressure) into visibility
graphs and adjacency-matrix images so 2-D models can consume them, plus the
segmentation, dataset-building, benchmarking, and blood-pressure evaluation
machinery around that encoding.
"""

__version__ = "0.1.0"

from .bench import BenchReport, bench_segment
from .dataset import (
    AGE_GROUP_LABELS,
    DatasetConfig,
    DatasetSummary,
    ManifestRow,
    RecordManifest,
    age_group,
    assign_splits,
    build_dataset,
    proportional_counts,
)
from .imaging import (
    ChannelStack,
    ImageTensor,
    build_channel_stack,
    matrix_to_image,
    read_tensor,
    stack_to_image,
    tensor_from_bytes,
    tensor_to_bytes,
    write_png,
    write_tensor,
)
from .metrics import (
    BhsReport,
    extract_sbp_dbp,
    grade_bhs,
    grade_from_percentages,
    mean_absolute_error,
    metrics_json,
)
from .records import RecordLabels, read_labels, read_records, write_labels, write_records
from .segment import (
    PeakList,
    PulseSegment,
    default_min_prominence,
    detect_peaks,
    has_plateau,
    segment_pulses,
    segment_windows,
)
from .series import TimeSeries, as_series, invert_series
from .synth import (
    bp_waveform,
    clipped_sine,
    dicrotic_bump,
    pulse_train,
    smooth_series,
    synth_records,
)
from .vg import (
    AdjacencyMatrix,
    adjacency_to_csv,
    build_vg_fast,
    build_vg_oracle,
    build_vg_slope_weighted,
    build_vg_with_weights,
    slope_weights,
)

__all__ = [
    "AGE_GROUP_LABELS",
    "AdjacencyMatrix",
    "BenchReport",
    "BhsReport",
    "ChannelStack",
    "DatasetConfig",
    "DatasetSummary",
    "ImageTensor",
    "ManifestRow",
    "PeakList",
    "PulseSegment",
    "RecordLabels",
    "RecordManifest",
    "TimeSeries",
    "adjacency_to_csv",
    "age_group",
    "as_series",
    "assign_splits",
    "bench_segment",
    "bp_waveform",
    "build_channel_stack",
    "build_dataset",
    "build_vg_fast",
    "build_vg_oracle",
    "build_vg_slope_weighted",
    "build_vg_with_weights",
    "clipped_sine",
    "default_min_prominence",
    "detect_peaks",
    "dicrotic_bump",
    "extract_sbp_dbp",
    "grade_bhs",
    "grade_from_percentages",
    "has_plateau",
    "invert_series",
    "matrix_to_image",
    "mean_absolute_error",
    "metrics_json",
    "proportional_counts",
    "pulse_train",
    "read_labels",
    "read_records",
    "read_tensor",
    "segment_pulses",
    "segment_windows",
    "slope_weights",
    "smooth_series",
    "stack_to_image",
    "synth_records",
    "tensor_from_bytes",
    "tensor_to_bytes",
    "write_labels",
    "write_png",
    "write_records",
    "write_tensor",
]
