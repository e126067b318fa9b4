"""Corpus-level augmentation.

Every input file gets its own random stream, spawned from the corpus seed in
sorted input order, so the outputs and the manifest do not depend on how
many workers process the corpus.
"""
import logging
import os

import multiprocess as mp
import numpy as np
import pandas as pd

from ..Errors import OrphanFileError
from ..MPLogger import attach_worker_handlers
from ..Spatial.augment import sample_distinct_patterns
from ..utilities.label_utils import read_labels
from ..utilities.multiprocess_utils import log_child_exception
from ..utilities.wav_utils import read_wav
from .pipeline_commands import augmented_stem, write_augmented_pair

MANIFEST_FILE = 'manifest.csv'
MANIFEST_COLUMNS = ['output', 'input', 'pattern_id']

logger = logging.getLogger('seldkit')


def find_pairs(in_dir):
    """Sorted (stem, wav path, csv path) triples of a corpus directory."""
    wavs = {}
    labels = {}
    for filename in os.listdir(in_dir):
        if filename == MANIFEST_FILE:
            continue
        stem, extension = os.path.splitext(filename)
        if extension.lower() == '.wav':
            wavs[stem] = os.path.join(in_dir, filename)
        elif extension.lower() == '.csv':
            labels[stem] = os.path.join(in_dir, filename)
    for stem in sorted(set(wavs) ^ set(labels)):
        orphan = wavs.get(stem) or labels.get(stem)
        partner = 'label' if stem in wavs else 'audio'
        raise OrphanFileError("%s has no %s partner"
                              % (os.path.basename(orphan), partner))
    return [(stem, wavs[stem], labels[stem]) for stem in sorted(wavs)]


def augment_file(job):
    """Augment one pair; returns its manifest rows."""
    stem, wav_path, label_path, out_dir, per_file, seed_seq, params = job
    patterns = sample_distinct_patterns(seed_seq, per_file)
    if not patterns:
        return []
    clip = read_wav(wav_path, params['sample_rate'])
    events = read_labels(label_path)
    rows = []
    for p in patterns:
        write_augmented_pair(clip, events, p, stem, out_dir,
                             params['wav_encoding'])
        rows.append((augmented_stem(stem, p) + '.wav',
                     os.path.basename(wav_path), p.id))
    return rows


def _augment_file_logged(job):
    try:
        return augment_file(job)
    except Exception:
        log_child_exception(logger, "Failed to augment %s" % job[1])
        raise


def augment_corpus(in_dir, out_dir, per_file, seed, pipeline_params,
                   record_queue=None, log_level_console=logging.INFO):
    """Write `per_file` augmented pairs per input plus a manifest.

    Returns the manifest as a DataFrame sorted by output name.
    """
    pairs = find_pairs(in_dir)
    if not os.path.exists(out_dir):
        os.makedirs(out_dir)
    children = np.random.SeedSequence(seed).spawn(len(pairs))
    jobs = [(stem, wav, csv, out_dir, per_file, child, pipeline_params)
            for (stem, wav, csv), child in zip(pairs, children)]
    num_workers = min(pipeline_params['num_workers'] or 1, len(jobs))
    logger.info("Augmenting %d files x %d patterns with %d workers"
                % (len(jobs), per_file, max(1, num_workers)))
    if num_workers <= 1:
        results = [augment_file(job) for job in jobs]
    else:
        if record_queue is not None:
            pool = mp.Pool(num_workers, initializer=attach_worker_handlers,
                           initargs=(record_queue, log_level_console))
        else:
            pool = mp.Pool(num_workers)
        try:
            results = pool.map(_augment_file_logged, jobs)
        finally:
            # close rather than terminate so worker log records are flushed
            pool.close()
            pool.join()
    rows = [row for result in results for row in result]
    manifest = pd.DataFrame(rows, columns=MANIFEST_COLUMNS)
    manifest = manifest.sort_values('output').reset_index(drop=True)
    manifest.to_csv(os.path.join(out_dir, MANIFEST_FILE), index=False,
                    lineterminator='\n')
    logger.info("Wrote %d augmented pairs to %s" % (len(manifest), out_dir))
    return manifest
