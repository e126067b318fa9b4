"""Direction-of-arrival representations and first order plane wave encoding.

Coordinate convention: x points to the front, y to the left and z up.
Azimuth is counter-clockwise positive and always wrapped into [-180, 180),
elevation lies in [-90, 90]. Ambisonic signals are SN3D normalized, so the
first order directional gains are exactly the direction cosines.
"""
import math
from dataclasses import dataclass

import numpy as np

from ..Errors import DegenerateDirectionError, SeldDataError

SAMPLE_RATE = 24000
NUM_CHANNELS = 4
CHANNEL_NAMES = ('W', 'X', 'Y', 'Z')
UNIT_TOLERANCE = 1e-6
POLE_TOLERANCE = 1e-12


def wrap_azimuth(azimuth):
    """Wrap an azimuth (scalar or array, degrees) into [-180, 180)."""
    wrapped = np.mod(np.asarray(azimuth, dtype=float) + 180.0, 360.0) - 180.0
    # np.mod can return 360 - ulp for tiny negative inputs
    wrapped = np.where(wrapped >= 180.0, wrapped - 360.0, wrapped)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class DirectionOfArrival:
    """Azimuth/elevation pair in degrees."""
    azimuth: float
    elevation: float

    def __post_init__(self):
        elevation = float(self.elevation)
        if not math.isfinite(elevation) or abs(elevation) > 90.0 + 1e-9:
            raise SeldDataError(
                "elevation %r outside [-90, 90]" % (self.elevation,))
        object.__setattr__(self, 'elevation', max(-90.0, min(90.0, elevation)))
        object.__setattr__(self, 'azimuth', wrap_azimuth(float(self.azimuth)))

    def __iter__(self):
        yield self.azimuth
        yield self.elevation


@dataclass(frozen=True)
class UnitVector3:
    """Direction cosines of a DOA."""
    x: float
    y: float
    z: float

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)

    def dot(self, other):
        return self.x * other.x + self.y * other.y + self.z * other.z


@dataclass(frozen=True, eq=False)
class AmbisonicClip:
    """Four channel FOA audio, internal channel order W, X, Y, Z.

    `samples` has shape (4, num_samples).
    """
    samples: np.ndarray
    sample_rate: int = SAMPLE_RATE

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2 or samples.shape[0] != NUM_CHANNELS:
            raise SeldDataError(
                "expected %d channels, found shape %s"
                % (NUM_CHANNELS, samples.shape))
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)

    @property
    def num_samples(self):
        return self.samples.shape[1]

    @property
    def duration(self):
        return self.num_samples / float(self.sample_rate)

    def channel(self, name):
        return self.samples[CHANNEL_NAMES.index(name)]

    def equals(self, other):
        """Bitwise equality of samples and sample rate."""
        return (self.sample_rate == other.sample_rate and
                self.samples.shape == other.samples.shape and
                np.array_equal(self.samples, other.samples))


def doa_to_unit(d):
    az = math.radians(d.azimuth)
    el = math.radians(d.elevation)
    cos_el = math.cos(el)
    return UnitVector3(math.cos(az) * cos_el, math.sin(az) * cos_el,
                       math.sin(el))


def unit_to_doa(v):
    """Inverse of `doa_to_unit`.

    Vectors that are not unit length are normalized first. At the poles the
    azimuth is 0 by convention.
    """
    x, y, z = float(v.x), float(v.y), float(v.z)
    norm = math.hypot(x, y, z)
    if norm == 0.0 or not math.isfinite(norm):
        raise DegenerateDirectionError("degenerate direction")
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        x, y, z = x / norm, y / norm, z / norm
        norm = 1.0
    horizontal = math.hypot(x, y)
    elevation = math.degrees(math.atan2(z, horizontal))
    if horizontal <= POLE_TOLERANCE * norm:
        return DirectionOfArrival(0.0, 90.0 if z > 0 else -90.0)
    return DirectionOfArrival(math.degrees(math.atan2(y, x)), elevation)


def angular_distance(a, b):
    """Great-circle angle between two DOAs in degrees, in [0, 180]."""
    if a == b:
        return 0.0
    e1 = math.radians(a.elevation)
    e2 = math.radians(b.elevation)
    dphi = math.radians(a.azimuth - b.azimuth)
    cos_angle = (math.sin(e1) * math.sin(e2) +
                 math.cos(e1) * math.cos(e2) * math.cos(dphi))
    return math.degrees(math.acos(max(-1.0, min(1.0, cos_angle))))


def unit_vectors(azimuths, elevations):
    """Vectorized `doa_to_unit`; returns an (..., 3) array."""
    az = np.radians(np.asarray(azimuths, dtype=float))
    el = np.radians(np.asarray(elevations, dtype=float))
    cos_el = np.cos(el)
    return np.stack([np.cos(az) * cos_el, np.sin(az) * cos_el, np.sin(el)],
                    axis=-1)


def angular_distance_matrix(vectors_a, vectors_b):
    """Pairwise angles (degrees) between two stacks of unit vectors.

    Uses atan2(|a x b|, a . b), which stays exact for coincident vectors.
    """
    a = np.asarray(vectors_a, dtype=float)[:, np.newaxis, :]
    b = np.asarray(vectors_b, dtype=float)[np.newaxis, :, :]
    cross = np.linalg.norm(np.cross(a, b), axis=-1)
    return np.degrees(np.arctan2(cross, np.sum(a * b, axis=-1)))


def encode_plane_wave(signal, d, sample_rate=SAMPLE_RATE):
    """Encode a mono signal arriving from `d` into a first order clip."""
    signal = np.asarray(signal, dtype=float)
    if signal.ndim != 1:
        raise SeldDataError(
            "expected a mono signal, found shape %s" % (signal.shape,))
    u = doa_to_unit(d)
    gains = np.array([1.0, u.x, u.y, u.z])
    return AmbisonicClip(gains[:, np.newaxis] * signal[np.newaxis, :],
                         sample_rate)
