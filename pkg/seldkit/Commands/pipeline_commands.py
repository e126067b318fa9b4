import dataclasses
import logging
import os

from ..Errors import SignalTooShortError
from ..Evaluation.decode import decode
from ..Evaluation.metrics import segment_metrics
from ..Evaluation.report import write_report
from ..Features.extraction import extract_features, truncate_to_label_frames
from ..Model.crnn import forward
from ..Model.weights import init_random_weights, load_weights, save_weights
from ..Spatial.augment import (SpatialPattern, all_patterns, augment_pair,
                               sample_pattern)
from ..Synthesis.scene import load_scene_spec, synth_scene
from ..utilities.label_utils import read_labels, write_labels
from ..utilities.tensor_container import read_features, write_features
from ..utilities.wav_utils import read_wav, write_wav

logger = logging.getLogger('seldkit')


def _ensure_directory(path):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(directory):
        os.makedirs(directory)


def augmented_stem(stem, pattern):
    return '%s_p%02d' % (stem, pattern.id)


def synth(spec_path, out_wav, out_labels, seed, pipeline_params):
    """Render a scene description; `seed` overrides the one in the file."""
    spec = load_scene_spec(spec_path)
    if seed is not None:
        spec = dataclasses.replace(spec, seed=seed)
    clip, events = synth_scene(spec)
    _ensure_directory(out_wav)
    _ensure_directory(out_labels)
    write_wav(out_wav, clip, pipeline_params['wav_encoding'])
    write_labels(out_labels, events)
    logger.info("Synthesized %s (%d events, %d label rows)"
                % (out_wav, len(spec.events), len(events)))
    return events


def write_augmented_pair(clip, events, pattern, stem, out_dir, encoding):
    aug_clip, aug_events = augment_pair(clip, events, pattern)
    out_stem = os.path.join(out_dir, augmented_stem(stem, pattern))
    write_wav(out_stem + '.wav', aug_clip, encoding)
    write_labels(out_stem + '.csv', aug_events)
    return out_stem


def augment(in_wav, labels, out_dir, pattern_id, seed, every_pattern,
            pipeline_params):
    """Augment one clip/label pair.

    Returns the output paths without extension.
    """
    clip = read_wav(in_wav, pipeline_params['sample_rate'])
    events = read_labels(labels)
    if every_pattern:
        patterns = [p for p in all_patterns() if not p.is_identity]
    elif pattern_id is not None:
        patterns = [SpatialPattern.from_id(pattern_id)]
    else:
        patterns = [sample_pattern(seed)]
    if not os.path.exists(out_dir):
        os.makedirs(out_dir)
    stem = os.path.splitext(os.path.basename(in_wav))[0]
    return [write_augmented_pair(clip, events, p, stem, out_dir,
                                 pipeline_params['wav_encoding'])
            for p in patterns]


def compute_features(in_wav, pipeline_params):
    clip = read_wav(in_wav, pipeline_params['sample_rate'])
    return extract_features(clip, eps=pipeline_params['eps_floor'],
                            n_fft=pipeline_params['n_fft'],
                            hop=pipeline_params['hop'],
                            n_mels=pipeline_params['n_mels'],
                            sample_rate=pipeline_params['sample_rate'])


def extract(in_wav, out_path, pipeline_params):
    features = compute_features(in_wav, pipeline_params)
    _ensure_directory(out_path)
    write_features(out_path, features)
    logger.info("Extracted %d feature frames from %s"
                % (features.shape[0], in_wav))
    return features.shape


def infer(weights_path, out_labels, in_wav, features_path, threshold,
          pipeline_params, model_config):
    """Run the network and write the decoded predictions."""
    weights = load_weights(weights_path, model_config)
    if features_path is not None:
        features = read_features(features_path)
    else:
        features = compute_features(in_wav, pipeline_params)
    features = truncate_to_label_frames(features,
                                        model_config.frames_per_label)
    if features.shape[0] == 0:
        raise SignalTooShortError(
            "signal too short for one %d-frame label frame"
            % model_config.frames_per_label)
    prediction = forward(features, weights, model_config)
    if threshold is None:
        threshold = pipeline_params['sed_threshold']
    events = decode(prediction, threshold)
    _ensure_directory(out_labels)
    write_labels(out_labels, events)
    logger.info("Predicted %d active (frame, class) pairs over %d label "
                "frames" % (len(events), prediction.num_frames))
    return prediction


def evaluate(ref, pred, report_path, pipeline_params):
    report = segment_metrics(read_labels(ref), read_labels(pred),
                             pipeline_params['segment_frames'],
                             pipeline_params['doa_threshold'])
    if report_path is not None:
        _ensure_directory(report_path)
        write_report(report_path, report)
    return report


def init_weights(out_path, seed, model_config):
    weights = init_random_weights(model_config, seed)
    _ensure_directory(out_path)
    save_weights(out_path, weights)
    return weights
