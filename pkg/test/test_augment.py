import itertools
import logging

import numpy as np
import pytest

from ..seldkit.Errors import SeldDataError
from ..seldkit.Evaluation.events import EventList
from ..seldkit.Spatial.augment import (SpatialPattern, all_patterns,
                                       augment_pair, compose, inverse,
                                       pattern_channel_map,
                                       sample_distinct_patterns,
                                       sample_pattern, transform_channels,
                                       transform_doa, transform_event_list)
from ..seldkit.Spatial.geometry import (AmbisonicClip, DirectionOfArrival,
                                        angular_distance, encode_plane_wave)
from .utilities import random_doa, rng_for

PHI_PLUS_90 = SpatialPattern(1, False)
PHI_PLUS_180 = SpatialPattern(2, False)
MINUS_PHI_FLIP = SpatialPattern(4, True)
FLIP_ONLY = SpatialPattern(0, True)


class TestPatterns(object):

    def test_sixteen_distinct_patterns(self):
        patterns = all_patterns()
        assert len(patterns) == 16
        assert len(set(patterns)) == 16
        assert [p.id for p in patterns] == list(range(16))
        assert patterns[0].is_identity
        assert patterns[0] == SpatialPattern(0, False)

    def test_pattern_ids(self):
        assert SpatialPattern.from_id(9) == SpatialPattern(1, True)
        assert SpatialPattern.from_id(7).azimuth_op == '-phi-90'
        with pytest.raises(SeldDataError):
            SpatialPattern.from_id(16)

    @pytest.mark.parametrize('op_index,rows', [
        (0, [[1, 0, 0], [0, 1, 0]]),
        (1, [[0, -1, 0], [1, 0, 0]]),
        (2, [[-1, 0, 0], [0, -1, 0]]),
        (3, [[0, 1, 0], [-1, 0, 0]]),
        (4, [[1, 0, 0], [0, -1, 0]]),
        (5, [[0, 1, 0], [1, 0, 0]]),
        (6, [[-1, 0, 0], [0, 1, 0]]),
        (7, [[0, -1, 0], [-1, 0, 0]]),
    ])
    def test_channel_map_table(self, op_index, rows):
        for flip in (False, True):
            matrix = pattern_channel_map(SpatialPattern(op_index, flip))
            np.testing.assert_array_equal(matrix[:2], rows)
            np.testing.assert_array_equal(matrix[2],
                                          [0, 0, -1 if flip else 1])

    def test_group_laws(self):
        patterns = all_patterns()
        identity = SpatialPattern(0, False)
        clip = AmbisonicClip(rng_for(7).uniform(-1, 1, (4, 64)))
        for p, q in itertools.product(patterns, patterns):
            # closure: compose raises if the product left the set
            composed = compose(p, q)
            expected = transform_channels(transform_channels(clip, q), p)
            assert transform_channels(clip, composed).equals(expected)
        for p in patterns:
            assert compose(p, inverse(p)) == identity
            assert compose(inverse(p), p) == identity
            back = transform_channels(transform_channels(clip, p),
                                      inverse(p))
            assert back.equals(clip)

    def test_images_of_generic_doa_are_distinct(self):
        d = DirectionOfArrival(30, 10)
        images = {(round(i.azimuth, 9), round(i.elevation, 9))
                  for i in (transform_doa(d, p) for p in all_patterns())}
        assert len(images) == 16


class TestTransforms(object):

    def test_transform_doa_examples(self):
        d = transform_doa(DirectionOfArrival(30, 10), PHI_PLUS_90)
        assert (d.azimuth, d.elevation) == (120.0, 10.0)
        d = transform_doa(DirectionOfArrival(150, 0), PHI_PLUS_90)
        assert (d.azimuth, d.elevation) == (-120.0, 0.0)
        d = transform_doa(DirectionOfArrival(30, 10), MINUS_PHI_FLIP)
        assert (d.azimuth, d.elevation) == (-30.0, -10.0)

    def test_identity_is_bitwise(self):
        clip = AmbisonicClip(rng_for(8).uniform(-1, 1, (4, 100)))
        assert transform_channels(clip, SpatialPattern(0)).equals(clip)

    def test_flip_negates_z_only(self):
        samples = rng_for(9).uniform(-1, 1, (4, 100))
        out = transform_channels(AmbisonicClip(samples), FLIP_ONLY).samples
        np.testing.assert_array_equal(out[:3], samples[:3])
        np.testing.assert_array_equal(out[3], -samples[3])

    def test_rotated_plane_wave(self):
        s = rng_for(10).uniform(-1, 1, 500)
        rotated = transform_channels(
            encode_plane_wave(s, DirectionOfArrival(30, 10)), PHI_PLUS_90)
        expected = encode_plane_wave(s, DirectionOfArrival(120, 10))
        np.testing.assert_allclose(rotated.samples, expected.samples,
                                   atol=1e-6)

    def test_commutes_with_encoding(self):
        rng = rng_for(11)
        for _ in range(100):
            d = random_doa(rng, 90.0)
            s = rng.uniform(-1, 1, 256)
            clip = encode_plane_wave(s, d)
            for p in all_patterns():
                left = transform_channels(clip, p).samples
                right = encode_plane_wave(s, transform_doa(d, p)).samples
                assert np.max(np.abs(left - right)) <= 1e-6

    def test_isometry(self):
        rng = rng_for(12)
        for _ in range(200):
            a, b = random_doa(rng, 90.0), random_doa(rng, 90.0)
            for p in all_patterns():
                assert angular_distance(transform_doa(a, p),
                                        transform_doa(b, p)) == \
                    pytest.approx(angular_distance(a, b), abs=1e-9)

    def test_energy_preservation(self):
        samples = rng_for(13).uniform(-1, 1, (4, 1000))
        samples[1] *= 0.3
        clip = AmbisonicClip(samples)
        energy = np.sum(samples ** 2, axis=1)
        for p in all_patterns():
            out = np.sum(transform_channels(clip, p).samples ** 2, axis=1)
            assert out[0] == energy[0]
            assert out[3] == energy[3]
            assert sorted(out[1:3]) == sorted(energy[1:3])

    def test_event_list(self):
        events = EventList.from_rows([(12, 5, 0, 30, 10)])
        out = transform_event_list(events, PHI_PLUS_180)
        assert out.rows() == [(12, 5, 0, -150.0, 10.0)]
        assert len(transform_event_list(EventList(), PHI_PLUS_180)) == 0
        assert transform_event_list(events, SpatialPattern(0)) == events

    def test_augment_pair_logs_pattern(self, caplog):
        clip = AmbisonicClip(np.zeros((4, 10)))
        with caplog.at_level(logging.INFO, logger='seldkit'):
            augment_pair(clip, EventList(), SpatialPattern.from_id(9))
        assert "pattern=9 azimuth_op=phi+90 flip=True" in caplog.text


class TestSampling(object):

    def test_uniform_over_non_identity(self):
        rng = rng_for(14)
        counts = np.zeros(16, dtype=int)
        for _ in range(15000):
            counts[sample_pattern(rng).id] += 1
        assert counts[0] == 0
        assert np.all((counts[1:] >= 800) & (counts[1:] <= 1200))

    def test_identity_never_drawn(self):
        rng = rng_for(15)
        assert all(not sample_pattern(rng).is_identity
                   for _ in range(100000))

    def test_deterministic(self):
        assert sample_pattern(42) == sample_pattern(42)
        assert sample_distinct_patterns(7, 5) == sample_distinct_patterns(7, 5)

    def test_distinct_patterns(self):
        patterns = sample_distinct_patterns(3, 15)
        assert sorted(p.id for p in patterns) == list(range(1, 16))
        assert sample_distinct_patterns(3, 0) == []
        with pytest.raises(SeldDataError):
            sample_distinct_patterns(3, 16)
