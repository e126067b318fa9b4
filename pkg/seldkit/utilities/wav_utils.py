"""FOA WAV codec.

On disk channels follow ACN order (W, Y, Z, X) with SN3D normalization;
in memory clips are always (W, X, Y, Z). This module is the only place the
two orders meet.
"""
import logging

import numpy as np
from scipy.io import wavfile

from ..Errors import WavFormatError
from ..Spatial.geometry import NUM_CHANNELS, SAMPLE_RATE, AmbisonicClip

# disk column for each internal channel, and the reverse
ACN_TO_INTERNAL = [0, 3, 1, 2]
INTERNAL_TO_ACN = [0, 2, 3, 1]
PCM16_SCALE = 32768.0
ENCODINGS = ('float', 'pcm16')

logger = logging.getLogger('seldkit')


def read_wav(path, sample_rate=SAMPLE_RATE):
    """Read a 4-channel 16-bit PCM or 32-bit float FOA WAV file."""
    try:
        rate, data = wavfile.read(path)
    except (ValueError, EOFError) as e:
        raise WavFormatError("cannot parse %s as WAV: %s" % (path, e)) from e
    channels = 1 if data.ndim == 1 else data.shape[1]
    if channels != NUM_CHANNELS:
        raise WavFormatError("expected %d channels, found %d"
                             % (NUM_CHANNELS, channels))
    if rate != sample_rate:
        raise WavFormatError("expected sample rate %d, found %d"
                             % (sample_rate, rate))
    if data.dtype == np.int16:
        samples = data.astype(float) / PCM16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(float)
    else:
        raise WavFormatError(
            "unsupported encoding %s, expected 16-bit PCM or 32-bit float"
            % data.dtype)
    return AmbisonicClip(samples[:, ACN_TO_INTERNAL].T, rate)


def write_wav(path, clip, encoding='float'):
    """Write `clip` in ACN order as 32-bit float or 16-bit PCM."""
    data = clip.samples[INTERNAL_TO_ACN].T
    if encoding == 'float':
        data = data.astype(np.float32)
    elif encoding == 'pcm16':
        data = np.clip(np.round(data * PCM16_SCALE),
                       -PCM16_SCALE, PCM16_SCALE - 1).astype(np.int16)
    else:
        raise WavFormatError("unknown encoding %r, expected one of %s"
                             % (encoding, ', '.join(ENCODINGS)))
    wavfile.write(path, clip.sample_rate, np.ascontiguousarray(data))
    logger.debug("Wrote %d samples to %s" % (clip.num_samples, path))
