"""Forward pass of the rectangular-filter CRNN.

Per convolutional block: conv (K_t x M, "same") -> ReLU -> batch-norm ->
max-pool; dropout is the identity at inference. The first pool is 5 x 2,
which turns 20 ms feature frames into 100 ms label frames. After the last
block the (T/5, 2, 64) map is flattened frequency-major and fed to two
bidirectional GRU layers, then to the SED (sigmoid) and DOA (tanh) heads.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from ..Errors import LayerExecutionError, SeldDataError, ShapeMismatchError
from . import layers

DEFAULT_POOL_SCHEDULE = ((5, 2), (1, 2), (1, 2), (1, 2), (1, 2))
# (time, frequency) filter shapes compared during architecture selection
FILTER_SHAPES = ((3, 3), (1, 46), (1, 48), (1, 50), (1, 52), (1, 54),
                 (1, 56), (1, 64), (2, 48), (3, 48))

logger = logging.getLogger('seldkit')


@dataclass(frozen=True)
class ModelConfig:
    n_classes: int = 14
    filter_time: int = 1
    filter_freq: int = 48
    conv_channels: int = 64
    n_conv_blocks: int = 5
    pool_schedule: tuple = DEFAULT_POOL_SCHEDULE
    gru_units: int = 128
    n_gru_layers: int = 2
    fc_units: int = 128
    dropout_rate: float = 0.2
    n_mels: int = 64
    n_maps: int = 7
    frames_per_label: int = field(default=5, repr=False)

    def __post_init__(self):
        schedule = tuple(tuple(int(v) for v in pool)
                         for pool in self.pool_schedule)
        object.__setattr__(self, 'pool_schedule', schedule)
        if self.filter_time < 1 or self.filter_freq < 1:
            raise SeldDataError("filter shape must be positive, found %dx%d"
                                % (self.filter_time, self.filter_freq))
        if len(schedule) != self.n_conv_blocks:
            raise SeldDataError(
                "pool schedule has %d entries for %d conv blocks"
                % (len(schedule), self.n_conv_blocks))
        if self.n_mels % self.freq_pool:
            raise SeldDataError(
                "frequency pool product %d does not divide %d mel bands"
                % (self.freq_pool, self.n_mels))
        if self.time_pool != self.frames_per_label:
            raise SeldDataError(
                "time pool product %d must equal %d feature frames per "
                "label frame" % (self.time_pool, self.frames_per_label))

    @classmethod
    def from_params(cls, params):
        """Build from a `default_model_params.json`-style dict."""
        known = {k: v for k, v in params.items()
                 if k in cls.__dataclass_fields__}
        if 'pool_schedule' in known:
            known['pool_schedule'] = tuple(
                tuple(p) for p in known['pool_schedule'])
        return cls(**known)

    @property
    def time_pool(self):
        return int(np.prod([p[0] for p in self.pool_schedule]))

    @property
    def freq_pool(self):
        return int(np.prod([p[1] for p in self.pool_schedule]))

    @property
    def flat_width(self):
        return (self.n_mels // self.freq_pool) * self.conv_channels

    @property
    def doa_width(self):
        return 3 * self.n_classes

    def manifest(self):
        """Ordered mapping of every weight tensor name to its shape."""
        shapes = OrderedDict()
        channels_in = self.n_maps
        c = self.conv_channels
        for i in range(1, self.n_conv_blocks + 1):
            shapes['conv%d.kernel' % i] = (
                c, channels_in, self.filter_time, self.filter_freq)
            shapes['conv%d.bias' % i] = (c,)
            for stat in ('gamma', 'beta', 'mean', 'var'):
                shapes['bn%d.%s' % (i, stat)] = (c,)
            channels_in = c
        width = self.flat_width
        units = self.gru_units
        for layer in range(1, self.n_gru_layers + 1):
            for direction in ('fw', 'bw'):
                prefix = 'gru%d.%s.' % (layer, direction)
                for gate in ('z', 'r', 'n'):
                    shapes[prefix + 'w' + gate] = (units, width)
                for gate in ('z', 'r', 'n'):
                    shapes[prefix + 'u' + gate] = (units, units)
                for gate in ('z', 'r', 'n'):
                    shapes[prefix + 'b' + gate] = (units,)
            width = 2 * units
        for head, out_width in (('sed', self.n_classes),
                                ('doa', self.doa_width)):
            shapes['%s.fc1.w' % head] = (self.fc_units, width)
            shapes['%s.fc1.b' % head] = (self.fc_units,)
            shapes['%s.fc2.w' % head] = (out_width, self.fc_units)
            shapes['%s.fc2.b' % head] = (out_width,)
        return shapes


@dataclass(frozen=True, eq=False)
class Prediction:
    """Network output at label-frame resolution.

    `doa` holds class-major (x, y, z) triplets: columns 3c..3c+2 belong to
    class c.
    """
    sed: np.ndarray
    doa: np.ndarray

    def __post_init__(self):
        if self.sed.ndim != 2 or self.doa.ndim != 2:
            raise ShapeMismatchError("prediction matrices must be rank 2")
        if self.doa.shape != (self.sed.shape[0], 3 * self.sed.shape[1]):
            raise ShapeMismatchError(
                "DOA output width", (self.sed.shape[0], 3 * self.sed.shape[1]),
                self.doa.shape)

    @property
    def num_frames(self):
        return self.sed.shape[0]

    @property
    def n_classes(self):
        return self.sed.shape[1]


def _run_layer(name, function, *args):
    try:
        return function(*args)
    except SeldDataError as e:
        raise LayerExecutionError(e.message, name) from e


def conv_stack(features, weights, cfg):
    """Convolutional blocks plus flatten: (T, n_mels, maps) -> (T/5, D)."""
    features = np.asarray(features, dtype=float)
    if features.ndim != 3 or features.shape[1:] != (cfg.n_mels, cfg.n_maps):
        raise LayerExecutionError(
            "expected features T x %d x %d, found %s"
            % (cfg.n_mels, cfg.n_maps, features.shape), 'input')
    if features.shape[0] % cfg.time_pool:
        raise LayerExecutionError(
            "feature frame count %d is not a multiple of %d"
            % (features.shape[0], cfg.time_pool), 'input')
    x = features
    for i, pool in enumerate(cfg.pool_schedule, start=1):
        x = _run_layer('conv%d' % i, layers.conv2d_same, x,
                       weights['conv%d.kernel' % i],
                       weights['conv%d.bias' % i])
        x = layers.relu(x)
        x = _run_layer('bn%d' % i, layers.batch_norm_infer, x,
                       weights['bn%d.gamma' % i], weights['bn%d.beta' % i],
                       weights['bn%d.mean' % i], weights['bn%d.var' % i])
        x = _run_layer('pool%d' % i, layers.maxpool2d, x, pool)
    return x.reshape(x.shape[0], -1)


def forward(features, weights, cfg):
    """Full CRNN inference on one feature tensor.

    Parameters
    ----------
    features : array, shape (T, 64, 7), T a multiple of 5
    weights : Model.weights.WeightSet
    cfg : ModelConfig

    Returns
    -------
    Prediction with T/5 label frames
    """
    x = conv_stack(features, weights, cfg)
    for layer in range(1, cfg.n_gru_layers + 1):
        x = _run_layer('gru%d' % layer, layers.gru_bidirectional, x,
                       weights.gru_direction(layer, 'fw'),
                       weights.gru_direction(layer, 'bw'))
    heads = {}
    for head, activation in (('sed', 'sigmoid'), ('doa', 'tanh')):
        h = _run_layer('%s.fc1' % head, layers.dense, x,
                       weights['%s.fc1.w' % head], weights['%s.fc1.b' % head],
                       'linear')
        heads[head] = _run_layer('%s.fc2' % head, layers.dense, h,
                                 weights['%s.fc2.w' % head],
                                 weights['%s.fc2.b' % head], activation)
    logger.debug("Forward pass: %d feature frames -> %d label frames"
                 % (features.shape[0], heads['sed'].shape[0]))
    return Prediction(heads['sed'], heads['doa'])
