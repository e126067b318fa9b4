"""Label CSV codec: ``frame,class,track,azimuth,elevation`` integers.

No header, ``\\n`` line endings, rows sorted by (frame, class, track). DOAs
are rounded to the nearest integer degree on write (halves away from zero),
an azimuth that rounds to 180 is written as -180.
"""
import csv
import math

from ..Errors import LabelFormatError, SeldDataError
from ..Evaluation.events import NUM_CLASSES, EventList, EventRecord
from ..Spatial.geometry import DirectionOfArrival

FIELDS = ('frame', 'class', 'track', 'azimuth', 'elevation')
RANGES = {
    'frame': (0, None),
    'class': (0, NUM_CLASSES - 1),
    'track': (0, None),
    'azimuth': (-180, 179),
    'elevation': (-90, 90),
}


def _parse_row(row, line):
    if len(row) != len(FIELDS):
        raise LabelFormatError(
            "malformed row, expected %d fields, found %d"
            % (len(FIELDS), len(row)), line)
    values = []
    for name, text in zip(FIELDS, row):
        try:
            value = int(text.strip())
        except ValueError:
            raise LabelFormatError(
                "malformed %s %r" % (name, text), line) from None
        low, high = RANGES[name]
        if value < low or (high is not None and value > high):
            raise LabelFormatError("%s out of range" % name, line)
        values.append(value)
    return values


def read_labels(path):
    """Parse a label CSV into an `EventList`."""
    records = []
    seen = {}
    with open(path, 'r', newline='') as f:
        for line, row in enumerate(csv.reader(f), start=1):
            if not row or all(not field.strip() for field in row):
                continue
            frame, cls, track, azimuth, elevation = _parse_row(row, line)
            key = (frame, cls, track)
            if key in seen:
                raise LabelFormatError(
                    "duplicate (frame, class, track) %s, first seen at line "
                    "%d" % (key, seen[key]), line)
            seen[key] = line
            records.append(EventRecord(
                frame, cls, track, DirectionOfArrival(azimuth, elevation)))
    return EventList(records)


def round_degree(value):
    return int(math.copysign(math.floor(abs(value) + 0.5), value))


def label_row(record):
    azimuth = round_degree(record.doa.azimuth)
    if azimuth >= 180:
        azimuth -= 360
    return (record.frame, record.cls, record.track, azimuth,
            round_degree(record.doa.elevation))


def write_labels(path, events):
    """Write `events` as a label CSV."""
    if events.n_classes > NUM_CLASSES:
        raise SeldDataError("label files hold at most %d classes"
                            % NUM_CLASSES)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        for record in events:
            writer.writerow(label_row(record))
