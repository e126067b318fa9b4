"""Location-aware detection and class-aware localization metrics.

Metrics are accumulated over one-second segments (10 label frames). Inside
a segment every (class, track) stream is reduced to one representative DOA,
the circular mean of its frame DOAs. Reference and predicted representatives
of the same class are paired by a minimum total angular distance
assignment; a pair within the distance threshold is a true positive.
"""
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from ..Spatial.geometry import angular_distance_matrix, unit_vectors
from .assignment import minimum_assignment

SEGMENT_FRAMES = 10
DOA_THRESHOLD = 20.0
NO_MATCH_LOCALIZATION_ERROR = 180.0
DEGENERATE_NORM = 1e-12

logger = logging.getLogger('seldkit')


@dataclass(frozen=True)
class MetricsReport:
    er20: float
    f20: float
    le_cd: float
    lr_cd: float
    seld: float
    tp: int
    fp: int
    fn: int
    substitutions: int
    deletions: int
    insertions: int
    n_ref: int
    n_pred: int
    matched: int
    localization_error_sum: float
    segments: int
    no_reference_events: bool = False

    def as_dict(self):
        return asdict(self)


@dataclass
class _Counts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    n_ref: int = 0
    n_pred: int = 0
    matched: int = 0
    localization_error_sum: float = 0.0


def seld_score(er, f, le, lr):
    """Mean of ER, 1 - F, LE / 180 and 1 - LR."""
    return (er + (1.0 - f) + le / 180.0 + (1.0 - lr)) / 4.0


def representative_vector(doas):
    """Circular mean of a stream's DOAs as a unit vector.

    A zero resultant falls back to the stream's first DOA.
    """
    vectors = unit_vectors([d.azimuth for d in doas],
                           [d.elevation for d in doas])
    total = vectors.sum(axis=0)
    norm = np.linalg.norm(total)
    if norm <= DEGENERATE_NORM * len(doas):
        return vectors[0]
    return total / norm


def _representatives(tracks):
    return np.array([representative_vector(tracks[track])
                     for track in sorted(tracks)]).reshape(-1, 3)


def match_class(ref_vectors, pred_vectors, threshold=DOA_THRESHOLD):
    """Assign one class in one segment.

    Returns (true positives, matched distances).
    """
    if len(ref_vectors) == 0 or len(pred_vectors) == 0:
        return 0, []
    cost = angular_distance_matrix(ref_vectors, pred_vectors)
    distances = [float(cost[i, j]) for i, j in minimum_assignment(cost)]
    tp = sum(1 for d in distances if d <= threshold)
    return tp, distances


def segment_metrics(ref, pred, segment_frames=SEGMENT_FRAMES,
                    threshold=DOA_THRESHOLD):
    """Joint detection/localization metrics of `pred` against `ref`.

    Both event lists must share the 100 ms frame clock.
    """
    ref_segments = ref.streams_by_segment(segment_frames)
    pred_segments = pred.streams_by_segment(segment_frames)
    counts = _Counts()
    segments = sorted(set(ref_segments) | set(pred_segments))
    for segment in segments:
        ref_classes = ref_segments.get(segment, {})
        pred_classes = pred_segments.get(segment, {})
        fp_s = fn_s = 0
        for cls in sorted(set(ref_classes) | set(pred_classes)):
            ref_vectors = _representatives(ref_classes.get(cls, {}))
            pred_vectors = _representatives(pred_classes.get(cls, {}))
            tp, distances = match_class(ref_vectors, pred_vectors, threshold)
            n_ref, n_pred = len(ref_vectors), len(pred_vectors)
            counts.tp += tp
            fp_s += n_pred - tp
            fn_s += n_ref - tp
            counts.n_ref += n_ref
            counts.n_pred += n_pred
            counts.matched += len(distances)
            counts.localization_error_sum += sum(distances)
        counts.fp += fp_s
        counts.fn += fn_s
        counts.substitutions += min(fn_s, fp_s)
        counts.deletions += max(0, fn_s - fp_s)
        counts.insertions += max(0, fp_s - fn_s)
    return _report(counts, len(segments))


def _report(counts, n_segments):
    no_reference = counts.n_ref == 0
    if no_reference:
        logger.warning("no reference events: ER is undefined, F set to 0")
        er = math.inf
        f = 0.0
        lr = 0.0
    else:
        er = (counts.substitutions + counts.deletions +
              counts.insertions) / float(counts.n_ref)
        denominator = 2 * counts.tp + counts.fp + counts.fn
        f = 2.0 * counts.tp / denominator
        lr = counts.matched / float(counts.n_ref)
    if counts.matched:
        le = counts.localization_error_sum / counts.matched
    else:
        le = NO_MATCH_LOCALIZATION_ERROR
    return MetricsReport(
        er20=er, f20=f, le_cd=le, lr_cd=lr, seld=seld_score(er, f, le, lr),
        tp=counts.tp, fp=counts.fp, fn=counts.fn,
        substitutions=counts.substitutions, deletions=counts.deletions,
        insertions=counts.insertions, n_ref=counts.n_ref,
        n_pred=counts.n_pred, matched=counts.matched,
        localization_error_sum=counts.localization_error_sum,
        segments=n_segments, no_reference_events=no_reference)
