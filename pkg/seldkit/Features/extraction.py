"""Log-mel and acoustic intensity features for FOA clips.

The STFT uses a 960 point periodic Hann window with a 480 sample hop and no
centering: frame ``t`` covers samples ``[480 t, 480 t + 960)`` and frames
that would overrun the clip are dropped. Both feature families are projected
onto 64 HTK mel bands spanning 0 Hz to Nyquist.

Feature maps are stacked in this order::

    0..3  log-mel of W, X, Y, Z
    4..6  normalized intensity x, y, z
"""
import functools
from dataclasses import dataclass

import librosa
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from ..Errors import ShapeMismatchError, SeldDataError, SignalTooShortError
from ..Spatial.geometry import SAMPLE_RATE, UnitVector3, unit_to_doa

N_FFT = 960
HOP = 480
N_MELS = 64
EPS_FLOOR = 1e-8
FRAMES_PER_LABEL = 5
NUM_MAPS = 7
LOGMEL_MAPS = slice(0, 4)
INTENSITY_MAPS = slice(4, 7)


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """One-sided STFT, shape (4 channels, frames, n_fft // 2 + 1)."""
    coefficients: np.ndarray
    fft_size: int = N_FFT
    frame_hop: int = HOP

    @property
    def num_frames(self):
        return self.coefficients.shape[1]

    @property
    def num_bins(self):
        return self.coefficients.shape[2]


@dataclass(frozen=True, eq=False)
class MelBank:
    """Triangular mel filters, shape (n_mels, n_fft // 2 + 1)."""
    weights: np.ndarray
    center_frequencies: np.ndarray


def num_frames(num_samples, n_fft=N_FFT, hop=HOP):
    if num_samples < n_fft:
        return 0
    return (num_samples - n_fft) // hop + 1


def stft(clip, n_fft=N_FFT, hop=HOP, sample_rate=SAMPLE_RATE):
    if clip.sample_rate != sample_rate:
        raise SeldDataError("expected sample rate %d, found %d"
                            % (sample_rate, clip.sample_rate))
    if clip.num_samples < n_fft:
        raise SignalTooShortError("signal too short")
    window = get_window('hann', n_fft, fftbins=True)
    frames = sliding_window_view(clip.samples, n_fft, axis=-1)[:, ::hop, :]
    return Spectrogram(np.fft.rfft(frames * window, axis=-1), n_fft, hop)


@functools.lru_cache(maxsize=8)
def build_mel_bank(sample_rate=SAMPLE_RATE, n_fft=N_FFT, n_mels=N_MELS):
    """HTK mel filters, triangular in the mel domain, unnormalized peaks."""
    fmax = sample_rate / 2.0
    mel_max = librosa.hz_to_mel(fmax, htk=True)
    mel_points = np.linspace(0.0, mel_max, n_mels + 2)
    bin_mels = librosa.hz_to_mel(
        np.fft.rfftfreq(n_fft, d=1.0 / sample_rate), htk=True)

    lower = mel_points[:-2, np.newaxis]
    center = mel_points[1:-1, np.newaxis]
    upper = mel_points[2:, np.newaxis]
    rising = (bin_mels[np.newaxis, :] - lower) / (center - lower)
    falling = (upper - bin_mels[np.newaxis, :]) / (upper - center)
    weights = np.maximum(0.0, np.minimum(rising, falling))
    weights.setflags(write=False)

    centers = np.asarray(librosa.mel_to_hz(mel_points[1:-1], htk=True))
    centers.setflags(write=False)
    return MelBank(weights, centers)


def _check_bank(spec, bank):
    if bank.weights.shape[1] != spec.num_bins:
        raise ShapeMismatchError("mel bank does not match spectrogram bins",
                                 spec.num_bins, bank.weights.shape[1])


def band_energy(spec, bank):
    """Mel-projected power of the W channel, shape (frames, n_mels)."""
    _check_bank(spec, bank)
    return (np.abs(spec.coefficients[0]) ** 2) @ bank.weights.T


def logmel(spec, bank, eps=EPS_FLOOR):
    """Log mel power per channel, shape (frames, n_mels, 4)."""
    _check_bank(spec, bank)
    power = np.abs(spec.coefficients) ** 2
    return np.log(power @ bank.weights.T + eps).transpose(1, 2, 0)


def intensity(spec, bank, eps=EPS_FLOOR):
    """Mel-band acoustic intensity direction, shape (frames, n_mels, 3).

    Oriented toward the source: a plane wave from the front gives (1, 0, 0).
    """
    _check_bank(spec, bank)
    coefficients = spec.coefficients
    if coefficients.shape[0] != 4:
        raise ShapeMismatchError("intensity needs a 4-channel spectrogram",
                                 4, coefficients.shape[0])
    raw = np.real(np.conj(coefficients[0])[np.newaxis] * coefficients[1:])
    projected = raw @ bank.weights.T
    norm = np.sqrt(np.sum(projected ** 2, axis=0))
    return (projected / (norm + eps)).transpose(1, 2, 0)


def extract_features(clip, bank=None, eps=EPS_FLOOR, n_fft=N_FFT, hop=HOP,
                     n_mels=N_MELS, sample_rate=SAMPLE_RATE):
    """Stack log-mel (4 maps) and intensity (3 maps): frames x 64 x 7."""
    spec = stft(clip, n_fft, hop, sample_rate)
    if bank is None:
        bank = build_mel_bank(sample_rate, n_fft, n_mels)
    return np.concatenate([logmel(spec, bank, eps),
                           intensity(spec, bank, eps)], axis=-1)


def truncate_to_label_frames(features, frames_per_label=FRAMES_PER_LABEL):
    """Drop trailing feature frames so the count is a label-frame multiple."""
    usable = (features.shape[0] // frames_per_label) * frames_per_label
    return features[:usable]


def estimate_doa(spec, bank, min_energy=100 * EPS_FLOOR, eps=EPS_FLOOR):
    """Circular mean of the intensity directions of energetic bins.

    Returns None when no (frame, band) reaches `min_energy`.
    """
    energy = band_energy(spec, bank)
    directions = intensity(spec, bank, eps)
    mask = energy >= min_energy
    if not np.any(mask):
        return None
    total = directions[mask].sum(axis=0)
    return unit_to_doa(UnitVector3(*total))
