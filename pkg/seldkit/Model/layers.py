"""Inference-only layer kernels for the CRNN.

Activations are laid out time-major: (T, F, C) for the convolutional
stack, (T, D) afterwards. Convolution is cross-correlation with "same" zero
padding, the extra pad going to the right/bottom for even kernel extents.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from ..Errors import SeldDataError, ShapeMismatchError

BN_EPS = 1e-5
ACTIVATIONS = ('linear', 'sigmoid', 'tanh', 'relu')

# saturated outputs stay inside the open intervals (0, 1) and (-1, 1)
_SIGMOID_LOW = np.nextafter(0.0, 1.0)
_OPEN_HIGH = np.nextafter(1.0, 0.0)
_TANH_LOW = np.nextafter(-1.0, 0.0)


def same_padding(extent):
    """(before, after) zero padding that keeps the length unchanged."""
    return (extent - 1) // 2, extent // 2


def conv2d_same(x, kernel, bias):
    """2-D cross-correlation with "same" padding.

    Parameters
    ----------
    x : array, shape (T, F, C_in)
    kernel : array, shape (C_out, C_in, K_t, K_f)
    bias : array, shape (C_out,)
    """
    x = np.asarray(x, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    bias = np.asarray(bias, dtype=float)
    if x.ndim != 3:
        raise ShapeMismatchError("conv input must be T x F x C",
                                 3, x.ndim)
    if kernel.ndim != 4:
        raise ShapeMismatchError("conv kernel must be rank 4", 4, kernel.ndim)
    c_out, c_in, k_t, k_f = kernel.shape
    if c_in != x.shape[2]:
        raise ShapeMismatchError("conv input channels", c_in, x.shape[2])
    if bias.shape != (c_out,):
        raise ShapeMismatchError("conv bias", (c_out,), bias.shape)

    n_t, n_f, _ = x.shape
    padded = np.pad(x, (same_padding(k_t), same_padding(k_f), (0, 0)))
    out = np.empty((n_t, n_f, c_out))
    out[...] = bias
    for dt in range(k_t):
        for df in range(k_f):
            out += padded[dt:dt + n_t, df:df + n_f, :] @ kernel[:, :, dt, df].T
    return out


def relu(x):
    return np.maximum(x, 0.0)


def batch_norm_infer(x, gamma, beta, mean, var, eps=BN_EPS):
    """Per-channel (last axis) batch normalization with running stats."""
    x = np.asarray(x, dtype=float)
    channels = x.shape[-1]
    params = [np.asarray(p, dtype=float) for p in (gamma, beta, mean, var)]
    for name, p in zip(('gamma', 'beta', 'mean', 'var'), params):
        if p.shape != (channels,):
            raise ShapeMismatchError("batch-norm %s" % name,
                                     (channels,), p.shape)
    gamma, beta, mean, var = params
    if np.any(var <= 0):
        raise SeldDataError("batch-norm variance must be strictly positive")
    return gamma * (x - mean) / np.sqrt(var + eps) + beta


def maxpool2d(x, pool):
    """Non-overlapping max pooling over the (T, F) axes of a T x F x C map."""
    pt, pf = pool
    n_t, n_f, c = x.shape
    if n_t % pt or n_f % pf:
        raise ShapeMismatchError(
            "max-pool %dx%d needs dims divisible by the pool" % (pt, pf),
            "multiples of (%d, %d)" % (pt, pf), (n_t, n_f))
    return x.reshape(n_t // pt, pt, n_f // pf, pf, c).max(axis=(1, 3))


def activate(x, activation):
    if activation == 'linear':
        return x
    if activation == 'sigmoid':
        return np.clip(expit(x), _SIGMOID_LOW, _OPEN_HIGH)
    if activation == 'tanh':
        return np.clip(np.tanh(x), _TANH_LOW, _OPEN_HIGH)
    if activation == 'relu':
        return relu(x)
    raise SeldDataError("unknown activation %r, expected one of %s"
                        % (activation, ', '.join(ACTIVATIONS)))


def dense(x, w, b, activation='linear'):
    """Time-distributed fully connected layer: activation(x W^T + b)."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    b = np.asarray(b, dtype=float)
    if w.ndim != 2 or x.shape[-1] != w.shape[1]:
        raise ShapeMismatchError("dense input width", w.shape[-1:],
                                 x.shape[-1:])
    if b.shape != (w.shape[0],):
        raise ShapeMismatchError("dense bias", (w.shape[0],), b.shape)
    return activate(x @ w.T + b, activation)


@dataclass(frozen=True, eq=False)
class GruDirectionWeights:
    """Gate weights of one GRU direction (units H, input width D)."""
    wz: np.ndarray
    wr: np.ndarray
    wn: np.ndarray
    uz: np.ndarray
    ur: np.ndarray
    un: np.ndarray
    bz: np.ndarray
    br: np.ndarray
    bn: np.ndarray

    @property
    def units(self):
        return self.uz.shape[0]

    def check(self, input_width):
        units = self.units
        expected = {
            'wz': (units, input_width), 'wr': (units, input_width),
            'wn': (units, input_width), 'uz': (units, units),
            'ur': (units, units), 'un': (units, units),
            'bz': (units,), 'br': (units,), 'bn': (units,),
        }
        for name, shape in expected.items():
            actual = np.shape(getattr(self, name))
            if actual != shape:
                raise ShapeMismatchError("GRU %s" % name, shape, actual)


def gru_direction(x, w):
    """Run one GRU direction over x (T x D) from h_0 = 0."""
    x = np.asarray(x, dtype=float)
    w.check(x.shape[1])
    xz = x @ np.asarray(w.wz, dtype=float).T + w.bz
    xr = x @ np.asarray(w.wr, dtype=float).T + w.br
    xn = x @ np.asarray(w.wn, dtype=float).T + w.bn
    uz = np.asarray(w.uz, dtype=float)
    ur = np.asarray(w.ur, dtype=float)
    un = np.asarray(w.un, dtype=float)
    h = np.zeros(w.units)
    out = np.empty((x.shape[0], w.units))
    for t in range(x.shape[0]):
        z = expit(xz[t] + uz @ h)
        r = expit(xr[t] + ur @ h)
        n = np.tanh(xn[t] + r * (un @ h))
        h = z * h + (1.0 - z) * n
        out[t] = h
    return out


def gru_bidirectional(x, forward_weights, backward_weights):
    """Bidirectional GRU; output T x 2H as (forward || backward)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ShapeMismatchError("GRU input must be T x D", 2, x.ndim)
    fw = gru_direction(x, forward_weights)
    bw = gru_direction(x[::-1], backward_weights)[::-1]
    return np.concatenate([fw, bw], axis=1)
