"""Training-loss formulas, kept as scoring utilities.

SED and DOA branches are scored separately: binary cross-entropy on the
activities and mean squared error on the class-major DOA vectors.
"""
import numpy as np

from ..Errors import ShapeMismatchError
from ..Evaluation.events import events_to_targets

PROB_CLAMP = 1e-7


def _check_shapes(pred, target):
    pred = np.asarray(pred, dtype=float)
    target = np.asarray(target, dtype=float)
    if pred.shape != target.shape:
        raise ShapeMismatchError("loss operands", target.shape, pred.shape)
    return pred, target


def bce_loss(pred, target):
    pred, target = _check_shapes(pred, target)
    p = np.clip(pred, PROB_CLAMP, 1.0 - PROB_CLAMP)
    return float(np.mean(-(target * np.log(p) +
                           (1.0 - target) * np.log(1.0 - p))))


def mse_loss(pred, target):
    pred, target = _check_shapes(pred, target)
    return float(np.mean((pred - target) ** 2))


def seld_losses(prediction, events):
    """(bce, mse) of a prediction against reference events."""
    sed_target, doa_target = events_to_targets(events,
                                               prediction.num_frames)
    return (bce_loss(prediction.sed, sed_target),
            mse_loss(prediction.doa, doa_target))
