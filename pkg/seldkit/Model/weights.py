"""Weight sets for the CRNN and their on-disk container form.

Tensor names follow the model manifest (`ModelConfig.manifest`):
``conv{i}.kernel``, ``conv{i}.bias``, ``bn{i}.{gamma,beta,mean,var}``,
``gru{l}.{fw,bw}.{wz,wr,wn,uz,ur,un,bz,br,bn}``, ``sed.{fc1,fc2}.{w,b}`` and
``doa.{fc1,fc2}.{w,b}``, with blocks and layers counted from 1. A weight file
also carries ``manifest.checksum``: the CRC-32 of the manifest split into
two 16-bit halves so it survives float32 storage exactly.
"""
import logging
import zlib
from collections import OrderedDict

import numpy as np

from ..Errors import WeightManifestError
from ..utilities import tensor_container
from .layers import GruDirectionWeights

CHECKSUM_TENSOR = 'manifest.checksum'

logger = logging.getLogger('seldkit')


def manifest_checksum(manifest):
    text = '\n'.join('%s:%s' % (name, 'x'.join(str(d) for d in shape))
                     for name, shape in sorted(manifest.items()))
    return zlib.crc32(text.encode('utf-8')) & 0xFFFFFFFF


def _checksum_tensor(checksum):
    return np.array([checksum >> 16, checksum & 0xFFFF], dtype=np.float32)


class WeightSet(object):
    """Immutable mapping of tensor name to array, checked against a config.

    Parameters
    ----------
    tensors : mapping of str to array
    cfg : Model.crnn.ModelConfig
    """

    def __init__(self, tensors, cfg):
        manifest = cfg.manifest()
        missing = [name for name in manifest if name not in tensors]
        if missing:
            raise WeightManifestError(
                "weight set is missing %d tensors, first: %s"
                % (len(missing), missing[0]))
        unexpected = [name for name in tensors
                      if name not in manifest and name != CHECKSUM_TENSOR]
        if unexpected:
            raise WeightManifestError(
                "unexpected tensor %s in weight set" % unexpected[0])
        self._tensors = OrderedDict()
        for name, shape in manifest.items():
            array = np.array(tensors[name], dtype=float)
            if array.shape != tuple(shape):
                raise WeightManifestError(
                    "tensor %s has shape %s, expected %s"
                    % (name, array.shape, tuple(shape)))
            if not np.all(np.isfinite(array)):
                raise WeightManifestError(
                    "tensor %s holds non-finite values" % name)
            array.setflags(write=False)
            self._tensors[name] = array
        for i in range(1, cfg.n_conv_blocks + 1):
            if np.any(self._tensors['bn%d.var' % i] <= 0):
                raise WeightManifestError(
                    "bn%d.var must be strictly positive" % i)
        self.cfg = cfg

    def __getitem__(self, name):
        return self._tensors[name]

    def __contains__(self, name):
        return name in self._tensors

    def names(self):
        return list(self._tensors.keys())

    def gru_direction(self, layer, direction):
        prefix = 'gru%d.%s.' % (layer, direction)
        return GruDirectionWeights(**{
            key: self._tensors[prefix + key]
            for key in ('wz', 'wr', 'wn', 'uz', 'ur', 'un', 'bz', 'br', 'bn')
        })

    def to_tensors(self):
        tensors = OrderedDict(self._tensors)
        tensors[CHECKSUM_TENSOR] = _checksum_tensor(
            manifest_checksum(self.cfg.manifest()))
        return tensors


def zero_weights(cfg):
    """All-zero weights with unit batch-norm variances."""
    tensors = OrderedDict((name, np.zeros(shape))
                          for name, shape in cfg.manifest().items())
    for i in range(1, cfg.n_conv_blocks + 1):
        tensors['bn%d.var' % i] = np.ones(cfg.conv_channels)
    return WeightSet(tensors, cfg)


def init_random_weights(cfg, seed):
    """Glorot-uniform kernels, zero biases, identity batch-norm.

    Deterministic for a given seed (PCG64).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    tensors = OrderedDict()
    for name, shape in cfg.manifest().items():
        kind = name.rsplit('.', 1)[1]
        if kind in ('kernel', 'w', 'wz', 'wr', 'wn', 'uz', 'ur', 'un'):
            if len(shape) == 4:
                receptive = shape[2] * shape[3]
                fan_in, fan_out = shape[1] * receptive, shape[0] * receptive
            else:
                fan_out, fan_in = shape
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            tensors[name] = rng.uniform(-limit, limit, size=shape)
        elif kind in ('gamma', 'var'):
            tensors[name] = np.ones(shape)
        else:
            tensors[name] = np.zeros(shape)
    return WeightSet(tensors, cfg)


def save_weights(path, weights):
    tensor_container.write_tensors(path, weights.to_tensors())
    logger.info("Saved %d weight tensors to %s"
                % (len(weights.names()), path))


def load_weights(path, cfg):
    """Load and validate a weight container for `cfg`."""
    tensors = tensor_container.read_tensors(path)
    if CHECKSUM_TENSOR not in tensors:
        raise WeightManifestError("%s has no %s tensor"
                                  % (path, CHECKSUM_TENSOR))
    stored = tensors[CHECKSUM_TENSOR]
    expected = _checksum_tensor(manifest_checksum(cfg.manifest()))
    if stored.shape != expected.shape or not np.array_equal(stored,
                                                             expected):
        raise WeightManifestError(
            "manifest checksum mismatch: %s was written for a different "
            "model configuration (filter %dx%d expected)"
            % (path, cfg.filter_time, cfg.filter_freq))
    return WeightSet(tensors, cfg)
