"""Turn network outputs into event lists and back."""
import numpy as np

from ..Model.crnn import Prediction
from ..Spatial.geometry import DirectionOfArrival, UnitVector3, unit_to_doa
from .events import EventList, EventRecord, events_to_targets

SED_THRESHOLD = 0.5


def decode(pred, threshold=SED_THRESHOLD):
    """One track-0 record per (frame, class) whose SED output > threshold.

    A zero DOA triplet on an active class decodes to (0, 0).
    """
    records = []
    frames, classes = np.nonzero(pred.sed > threshold)
    for frame, cls in zip(frames.tolist(), classes.tolist()):
        x, y, z = pred.doa[frame, 3 * cls:3 * cls + 3]
        if x == 0.0 and y == 0.0 and z == 0.0:
            doa = DirectionOfArrival(0.0, 0.0)
        else:
            doa = unit_to_doa(UnitVector3(x, y, z))
        records.append(EventRecord(frame, cls, 0, doa))
    return EventList(records, pred.n_classes)


def events_to_prediction(events, n_frames=None):
    """A perfect-confidence prediction reproducing `events`."""
    if n_frames is None:
        n_frames = events.num_frames()
    sed, doa = events_to_targets(events, n_frames)
    return Prediction(sed, doa)
