"""Frame-wise event records shared by labels, predictions and metrics."""
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..Errors import SeldDataError
from ..Spatial.geometry import DirectionOfArrival, unit_vectors

NUM_CLASSES = 14


@dataclass(frozen=True)
class EventRecord:
    """One active (class, track) at one 100 ms label frame."""
    frame: int
    cls: int
    track: int
    doa: DirectionOfArrival

    @property
    def key(self):
        return (self.frame, self.cls, self.track)


class EventList(object):
    """Immutable, sorted collection of `EventRecord`s.

    At most one record exists per (frame, class, track).
    """

    def __init__(self, records=(), n_classes=NUM_CLASSES):
        records = sorted(records, key=lambda r: r.key)
        seen = set()
        for record in records:
            if record.frame < 0:
                raise SeldDataError("negative frame %d" % record.frame)
            if not 0 <= record.cls < n_classes:
                raise SeldDataError(
                    "class %d outside [0, %d)" % (record.cls, n_classes))
            if record.key in seen:
                raise SeldDataError(
                    "duplicate record for frame %d, class %d, track %d"
                    % record.key)
            seen.add(record.key)
        self._records = tuple(records)
        self.n_classes = n_classes

    @classmethod
    def from_rows(cls, rows, n_classes=NUM_CLASSES):
        """Build from (frame, class, track, azimuth, elevation) rows."""
        return cls([EventRecord(int(f), int(c), int(t),
                                DirectionOfArrival(az, el))
                    for f, c, t, az, el in rows], n_classes)

    @property
    def records(self):
        return self._records

    def rows(self):
        return [(r.frame, r.cls, r.track, r.doa.azimuth, r.doa.elevation)
                for r in self._records]

    def map_doas(self, function):
        return EventList([EventRecord(r.frame, r.cls, r.track,
                                      function(r.doa))
                          for r in self._records], self.n_classes)

    def num_frames(self):
        """Frames needed to hold every record (last frame + 1)."""
        if not self._records:
            return 0
        return max(r.frame for r in self._records) + 1

    def streams_by_segment(self, segment_frames):
        """Group DOAs as {segment: {class: {track: [doa, ...]}}}."""
        grouped = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
        for r in self._records:
            grouped[r.frame // segment_frames][r.cls][r.track].append(r.doa)
        return grouped

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __eq__(self, other):
        if not isinstance(other, EventList):
            return NotImplemented
        return self._records == other._records

    def __repr__(self):
        return "EventList(%d records)" % len(self._records)


def events_to_targets(events, n_frames):
    """SED activity (frames x classes) and class-major DOA targets.

    The DOA target holds the unit vector of track 0 (or the lowest track
    present) in the x, y, z slots of each active class; inactive slots are 0.
    """
    n_classes = events.n_classes
    sed = np.zeros((n_frames, n_classes))
    doa = np.zeros((n_frames, 3 * n_classes))
    for r in reversed(events.records):
        if r.frame >= n_frames:
            continue
        sed[r.frame, r.cls] = 1.0
        doa[r.frame, 3 * r.cls:3 * r.cls + 3] = unit_vectors(
            r.doa.azimuth, r.doa.elevation)
    return sed, doa
