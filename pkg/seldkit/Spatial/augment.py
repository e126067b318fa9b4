"""Sixteen-pattern FOA spatial augmentation.

Each pattern is an azimuth rotation/reflection combined with an optional
reflection about the xy plane. Because all of them map the first order
directional channels onto each other, a pattern is applied by channel
swapping and sign inversion only, and the DOA labels are transformed by the
same pattern so that audio and labels stay consistent.

Pattern ids are fixed: ``id = op_index + 8 * elevation_flip`` with the
azimuth operations in the order of `AZIMUTH_OPS`. Id 0 is the identity.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..Errors import SeldDataError
from .geometry import AmbisonicClip, DirectionOfArrival

# name, azimuth sign, azimuth offset, (source index, sign) for X' and Y'
AZIMUTH_OPS = (
    ('phi', 1, 0.0, ((0, 1), (1, 1))),
    ('phi+90', 1, 90.0, ((1, -1), (0, 1))),
    ('phi+180', 1, 180.0, ((0, -1), (1, -1))),
    ('phi-90', 1, -90.0, ((1, 1), (0, -1))),
    ('-phi', -1, 0.0, ((0, 1), (1, -1))),
    ('-phi+90', -1, 90.0, ((1, 1), (0, 1))),
    ('-phi+180', -1, 180.0, ((0, -1), (1, 1))),
    ('-phi-90', -1, -90.0, ((1, -1), (0, -1))),
)
NUM_PATTERNS = 2 * len(AZIMUTH_OPS)
IDENTITY_ID = 0

logger = logging.getLogger('seldkit')


@dataclass(frozen=True)
class SpatialPattern:
    """One of the 16 rotation/reflection patterns."""
    op_index: int
    elevation_flip: bool = False

    def __post_init__(self):
        if not 0 <= self.op_index < len(AZIMUTH_OPS):
            raise SeldDataError(
                "azimuth op index %r outside [0, %d)"
                % (self.op_index, len(AZIMUTH_OPS)))
        object.__setattr__(self, 'elevation_flip', bool(self.elevation_flip))

    @classmethod
    def from_id(cls, pattern_id):
        pattern_id = int(pattern_id)
        if not 0 <= pattern_id < NUM_PATTERNS:
            raise SeldDataError(
                "pattern id %d outside [0, %d]"
                % (pattern_id, NUM_PATTERNS - 1))
        return cls(pattern_id % len(AZIMUTH_OPS),
                   pattern_id >= len(AZIMUTH_OPS))

    @property
    def id(self):
        return self.op_index + len(AZIMUTH_OPS) * int(self.elevation_flip)

    @property
    def azimuth_op(self):
        return AZIMUTH_OPS[self.op_index][0]

    @property
    def is_identity(self):
        return self.id == IDENTITY_ID

    def describe(self):
        return "pattern=%d azimuth_op=%s flip=%s" % (
            self.id, self.azimuth_op, self.elevation_flip)

    def __str__(self):
        return self.describe()


def all_patterns():
    return [SpatialPattern.from_id(i) for i in range(NUM_PATTERNS)]


def pattern_channel_map(p):
    """Signed permutation over (X, Y, Z) as a 3x3 integer matrix.

    ``[X', Y', Z'] = M @ [X, Y, Z]``; W is never touched.
    """
    matrix = np.zeros((3, 3), dtype=int)
    for row, (source, sign) in enumerate(AZIMUTH_OPS[p.op_index][3]):
        matrix[row, source] = sign
    matrix[2, 2] = -1 if p.elevation_flip else 1
    return matrix


def pattern_from_channel_map(matrix):
    """Return the pattern whose channel map equals `matrix`."""
    matrix = np.asarray(matrix)
    for p in all_patterns():
        if np.array_equal(pattern_channel_map(p), matrix):
            return p
    raise SeldDataError("channel map is not one of the %d patterns"
                        % NUM_PATTERNS)


def compose(outer, inner):
    """Pattern equivalent to applying `inner` first, then `outer`."""
    return pattern_from_channel_map(
        pattern_channel_map(outer) @ pattern_channel_map(inner))


def inverse(p):
    # signed permutation matrices are orthogonal
    return pattern_from_channel_map(pattern_channel_map(p).T)


def transform_channels(clip, p):
    """Apply `p` sample-wise by channel swapping and sign inversion."""
    if p.is_identity:
        return AmbisonicClip(clip.samples.copy(), clip.sample_rate)
    samples = clip.samples
    directional = samples[1:]
    out = np.empty_like(samples)
    out[0] = samples[0]
    for row, (source, sign) in enumerate(AZIMUTH_OPS[p.op_index][3]):
        out[1 + row] = sign * directional[source]
    out[3] = -samples[3] if p.elevation_flip else samples[3]
    return AmbisonicClip(out, clip.sample_rate)


def transform_doa(d, p):
    _, sign, offset, _ = AZIMUTH_OPS[p.op_index]
    elevation = -d.elevation if p.elevation_flip else d.elevation
    return DirectionOfArrival(sign * d.azimuth + offset, elevation)


def transform_event_list(events, p):
    """Transform every DOA of `events`; frames, classes and tracks stay."""
    return events.map_doas(lambda d: transform_doa(d, p))


def _as_generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def sample_pattern(seed):
    """Draw one of the 15 non-identity patterns uniformly.

    `seed` is either a `numpy.random.Generator` (advanced in place) or
    anything accepted by `numpy.random.PCG64`.
    """
    rng = _as_generator(seed)
    return SpatialPattern.from_id(int(rng.integers(1, NUM_PATTERNS)))


def sample_distinct_patterns(seed, count):
    """Draw `count` distinct non-identity patterns by rejection."""
    if not 0 <= count < NUM_PATTERNS:
        raise SeldDataError(
            "cannot draw %d distinct patterns out of %d"
            % (count, NUM_PATTERNS - 1))
    rng = _as_generator(seed)
    chosen = []
    while len(chosen) < count:
        p = sample_pattern(rng)
        if p not in chosen:
            chosen.append(p)
    return chosen


def augment_pair(clip, events, p):
    """Apply the same pattern to a clip and its labels."""
    logger.info(p.describe())
    return transform_channels(clip, p), transform_event_list(events, p)
