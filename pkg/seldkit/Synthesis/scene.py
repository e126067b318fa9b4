"""Synthetic FOA scenes with exact ground truth.

A scene is a sum of plane waves, one per event, each a noise burst or a
sine tone switched on between its onset and offset. Labels are produced on
the 100 ms label grid; a frame is active for an event when the event covers
at least half of it.

Scene descriptions are TOML files::

    duration = 10.0
    seed = 7

    [[events]]
    class = 2
    onset = 1.0
    offset = 2.0
    azimuth = 45
    elevation = 0
    source = "noise-burst"
    gain = 0.25
"""
import logging
import math

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field

import numpy as np

from ..Errors import SceneClippingError, SceneSpecError
from ..Evaluation.events import NUM_CLASSES, EventList, EventRecord
from ..Spatial.geometry import (SAMPLE_RATE, AmbisonicClip,
                                DirectionOfArrival, encode_plane_wave)

LABEL_FRAME_SECONDS = 0.1
SOURCE_KINDS = ('noise-burst', 'tone')
DEFAULT_GAIN = 0.1

logger = logging.getLogger('seldkit')


@dataclass(frozen=True)
class SceneEvent:
    cls: int
    onset: float
    offset: float
    doa: DirectionOfArrival
    source: str = 'noise-burst'
    frequency: float = None
    gain: float = DEFAULT_GAIN
    track: int = 0

    def __post_init__(self):
        if not 0 <= self.cls < NUM_CLASSES:
            raise SceneSpecError("event class %d outside [0, %d]"
                                 % (self.cls, NUM_CLASSES - 1))
        if not 0.0 <= self.onset < self.offset:
            raise SceneSpecError(
                "event onset %.3f s must be >= 0 and before its offset "
                "%.3f s" % (self.onset, self.offset))
        if self.source not in SOURCE_KINDS:
            raise SceneSpecError("unknown source kind %r, expected one of %s"
                                 % (self.source, ', '.join(SOURCE_KINDS)))
        if self.source == 'tone' and not self.frequency:
            raise SceneSpecError("tone events need a frequency")
        if self.gain < 0 or self.track < 0:
            raise SceneSpecError("event gain and track must be non-negative")


@dataclass(frozen=True)
class SceneSpec:
    duration: float
    events: tuple = ()
    seed: int = 0
    sample_rate: int = field(default=SAMPLE_RATE, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'events', tuple(self.events))
        if self.duration <= 0:
            raise SceneSpecError("scene duration must be positive")
        streams = {}
        for event in self.events:
            if event.offset > self.duration:
                raise SceneSpecError(
                    "event offset %.3f s beyond scene duration %.3f s"
                    % (event.offset, self.duration))
            if (event.source == 'tone' and
                    event.frequency >= self.sample_rate / 2.0):
                raise SceneSpecError("tone frequency %.1f Hz above Nyquist"
                                     % event.frequency)
            streams.setdefault((event.cls, event.track), []).append(event)
        for (cls, track), events in streams.items():
            events = sorted(events, key=lambda e: e.onset)
            for before, after in zip(events, events[1:]):
                if after.onset < before.offset:
                    raise SceneSpecError(
                        "events of class %d overlap on track %d at %.3f s"
                        % (cls, track, after.onset))

    @property
    def num_samples(self):
        return int(round(self.duration * self.sample_rate))

    @property
    def num_label_frames(self):
        return int(math.floor(self.duration / LABEL_FRAME_SECONDS + 1e-9))


def _event_from_table(table, index):
    try:
        return SceneEvent(
            cls=int(table['class']),
            onset=float(table['onset']),
            offset=float(table['offset']),
            doa=DirectionOfArrival(float(table.get('azimuth', 0.0)),
                                   float(table.get('elevation', 0.0))),
            source=table.get('source', 'noise-burst'),
            frequency=table.get('frequency'),
            gain=float(table.get('gain', DEFAULT_GAIN)),
            track=int(table.get('track', 0)))
    except KeyError as e:
        raise SceneSpecError("event %d is missing key %s"
                             % (index, e)) from None
    except (TypeError, ValueError) as e:
        raise SceneSpecError("event %d: %s" % (index, e)) from None


def scene_spec_from_dict(params):
    if 'duration' not in params:
        raise SceneSpecError("scene description has no duration")
    events = [_event_from_table(table, i)
              for i, table in enumerate(params.get('events', []))]
    return SceneSpec(duration=float(params['duration']), events=events,
                     seed=int(params.get('seed', 0)))


def load_scene_spec(path):
    """Parse a TOML scene description."""
    try:
        with open(path, 'rb') as f:
            params = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise SceneSpecError("cannot parse %s: %s" % (path, e)) from e
    return scene_spec_from_dict(params)


def _source_signal(event, num_samples, sample_rate, rng):
    if event.source == 'noise-burst':
        return event.gain * rng.uniform(-1.0, 1.0, num_samples)
    t = np.arange(num_samples) / float(sample_rate)
    return event.gain * np.sin(2.0 * np.pi * event.frequency * t)


def active_frames(onset_sample, offset_sample, num_frames, frame_samples):
    """Label frames covered by at least half a frame of the interval."""
    frames = []
    first = onset_sample // frame_samples
    last = min(num_frames - 1, (offset_sample - 1) // frame_samples)
    for frame in range(first, last + 1):
        start = frame * frame_samples
        overlap = (min(offset_sample, start + frame_samples) -
                   max(onset_sample, start))
        if 2 * overlap >= frame_samples:
            frames.append(frame)
    return frames


def synth_scene(spec):
    """Render `spec` into a clip and its reference labels.

    Deterministic for a given seed. Raises `SceneClippingError` when the
    summed scene leaves [-1, 1].
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    samples = np.zeros((4, spec.num_samples))
    frame_samples = int(round(LABEL_FRAME_SECONDS * spec.sample_rate))
    records = []
    for event in spec.events:
        start = int(round(event.onset * spec.sample_rate))
        stop = min(spec.num_samples,
                   int(round(event.offset * spec.sample_rate)))
        if stop <= start:
            continue
        signal = _source_signal(event, stop - start, spec.sample_rate, rng)
        encoded = encode_plane_wave(signal, event.doa, spec.sample_rate)
        samples[:, start:stop] += encoded.samples
        for frame in active_frames(start, stop, spec.num_label_frames,
                                   frame_samples):
            records.append(EventRecord(frame, event.cls, event.track,
                                       event.doa))
    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    if peak > 1.0:
        raise SceneClippingError(
            "scene peaks at %.3f, above full scale; reduce the event gains"
            % peak)
    logger.debug("Synthesized %.1f s scene with %d events"
                 % (spec.duration, len(spec.events)))
    return (AmbisonicClip(samples, spec.sample_rate),
            EventList(records))


def random_scene_spec(duration, n_events, seed, max_length=3.0):
    """A random noise-burst scene whose summed gain cannot clip.

    Same-class events that overlap in time are moved to the next free track.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    gain = min(0.2, 0.9 / max(1, n_events))
    events = []
    for _ in range(n_events):
        cls = int(rng.integers(0, NUM_CLASSES))
        onset = round(float(rng.uniform(0.0, duration - 0.5)), 1)
        length = float(rng.uniform(0.5, max_length))
        offset = round(min(duration, onset + length), 1)
        doa = DirectionOfArrival(int(rng.integers(-180, 180)),
                                 int(rng.integers(-40, 41)))
        track = 0
        while any(e.cls == cls and e.track == track and
                  onset < e.offset and e.onset < offset for e in events):
            track += 1
        events.append(SceneEvent(cls, onset, offset, doa, gain=gain,
                                 track=track))
    return SceneSpec(duration=duration, events=events, seed=seed)
