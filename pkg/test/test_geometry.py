import math

import numpy as np
import pytest

from ..seldkit.Errors import DegenerateDirectionError, SeldDataError
from ..seldkit.Spatial.geometry import (AmbisonicClip, DirectionOfArrival,
                                        UnitVector3, angular_distance,
                                        angular_distance_matrix, doa_to_unit,
                                        encode_plane_wave, unit_to_doa,
                                        wrap_azimuth)
from .utilities import random_doa, rng_for, unit


class TestDirections(object):

    @pytest.mark.parametrize('doa,expected', [
        ((0, 0), (1, 0, 0)),
        ((90, 0), (0, 1, 0)),
        ((0, 90), (0, 0, 1)),
    ])
    def test_doa_to_unit_axes(self, doa, expected):
        v = doa_to_unit(DirectionOfArrival(*doa))
        np.testing.assert_allclose(v.as_array(), expected, atol=1e-15)

    @pytest.mark.parametrize('vector,expected', [
        ((0, -1, 0), (-90, 0)),
        ((0, 0, -1), (0, -90)),
        ((1, 0, 0), (0, 0)),
    ])
    def test_unit_to_doa_axes(self, vector, expected):
        d = unit_to_doa(UnitVector3(*vector))
        assert d.azimuth == pytest.approx(expected[0], abs=1e-12)
        assert d.elevation == pytest.approx(expected[1], abs=1e-12)

    def test_unit_to_doa_normalizes(self):
        d = unit_to_doa(UnitVector3(0.0, 3.0, 0.0))
        assert (d.azimuth, d.elevation) == (90.0, 0.0)

    @pytest.mark.parametrize('vector,expected', [
        ((1e-200, 0.0, 0.0), (0.0, 0.0)),
        ((1e200, 0.0, 0.0), (0.0, 0.0)),
        ((0.0, 1e-170, 0.0), (90.0, 0.0)),
        ((0.0, 0.0, -1e300), (0.0, -90.0)),
    ])
    def test_unit_to_doa_extreme_magnitudes(self, vector, expected):
        d = unit_to_doa(UnitVector3(*vector))
        assert (d.azimuth, d.elevation) == expected

    def test_zero_vector_is_degenerate(self):
        with pytest.raises(DegenerateDirectionError) as e:
            unit_to_doa(UnitVector3(0.0, 0.0, 0.0))
        assert e.value.message == "degenerate direction"

    def test_round_trip_away_from_poles(self):
        rng = rng_for(1)
        for _ in range(1000):
            d = random_doa(rng, max_elevation=89.0)
            back = unit_to_doa(doa_to_unit(d))
            assert abs(wrap_azimuth(back.azimuth - d.azimuth)) < 1e-9
            assert back.elevation == pytest.approx(d.elevation, abs=1e-9)

    def test_azimuth_wrapping(self):
        assert DirectionOfArrival(180, 0).azimuth == -180.0
        assert DirectionOfArrival(240, 0).azimuth == -120.0
        assert DirectionOfArrival(-190, 0).azimuth == 170.0
        assert DirectionOfArrival(-1e-20, 0).azimuth < 180.0
        np.testing.assert_array_equal(wrap_azimuth([360.0, 540.0, -180.0]),
                                      [0.0, -180.0, -180.0])

    def test_elevation_out_of_range(self):
        with pytest.raises(SeldDataError):
            DirectionOfArrival(0, 91)


class TestAngularDistance(object):

    def test_examples(self):
        a = DirectionOfArrival(30, 10)
        assert angular_distance(a, a) == 0.0
        assert angular_distance(DirectionOfArrival(0, 0),
                                DirectionOfArrival(180, 0)) == \
            pytest.approx(180.0, abs=1e-9)
        assert angular_distance(DirectionOfArrival(0, 45),
                                DirectionOfArrival(180, 45)) == \
            pytest.approx(90.0, abs=1e-9)

    def test_matches_dot_product_oracle(self):
        rng = rng_for(2)
        for _ in range(1000):
            a, b = random_doa(rng, 90.0), random_doa(rng, 90.0)
            dot = max(-1.0, min(1.0, float(unit(a) @ unit(b))))
            expected = math.degrees(math.acos(dot))
            assert angular_distance(a, b) == pytest.approx(expected,
                                                           abs=1e-9)
            assert angular_distance(a, b) == angular_distance(b, a)

    def test_matrix_is_exact_for_coincident_vectors(self):
        rng = rng_for(3)
        vectors = np.array([unit(random_doa(rng)) for _ in range(5)])
        matrix = angular_distance_matrix(vectors, vectors)
        np.testing.assert_array_equal(np.diag(matrix), np.zeros(5))
        assert matrix.shape == (5, 5)
        assert np.all((matrix >= 0) & (matrix <= 180))


class TestPlaneWaveEncoding(object):

    def test_front_impulse(self):
        signal = np.zeros(8)
        signal[3] = 1.0
        clip = encode_plane_wave(signal, DirectionOfArrival(0, 0))
        np.testing.assert_allclose(clip.samples[:, 3], [1, 1, 0, 0],
                                   atol=1e-15)
        assert not np.any(clip.samples[:, :3])

    @pytest.mark.parametrize('doa,gains', [
        ((90, 0), (1, 0, 1, 0)),
        ((0, 90), (1, 0, 0, 1)),
    ])
    def test_axis_gains(self, doa, gains):
        s = rng_for(4).uniform(-1, 1, 100)
        clip = encode_plane_wave(s, DirectionOfArrival(*doa))
        np.testing.assert_array_equal(clip.channel('W'), s)
        for channel, gain in zip('WXYZ', gains):
            np.testing.assert_allclose(clip.channel(channel), gain * s,
                                       atol=1e-15)

    def test_linearity(self):
        rng = rng_for(5)
        d = random_doa(rng)
        s1, s2 = rng.uniform(-0.4, 0.4, (2, 256))
        left = encode_plane_wave(0.5 * s1 + s2, d).samples
        right = (0.5 * encode_plane_wave(s1, d).samples +
                 encode_plane_wave(s2, d).samples)
        np.testing.assert_allclose(left, right, atol=1e-15)

    def test_directional_ratio_is_unit_vector(self):
        rng = rng_for(6)
        for _ in range(50):
            d = random_doa(rng, 90.0)
            s = rng.uniform(0.1, 1.0, 16)
            clip = encode_plane_wave(s, d)
            ratio = clip.samples[1:] / clip.samples[0]
            np.testing.assert_allclose(
                ratio, np.repeat(unit(d)[:, np.newaxis], 16, axis=1),
                atol=1e-9)

    def test_clip_validates_channel_count(self):
        with pytest.raises(SeldDataError):
            AmbisonicClip(np.zeros((2, 10)))

    def test_clip_is_read_only(self):
        clip = AmbisonicClip(np.zeros((4, 10)))
        with pytest.raises(ValueError):
            clip.samples[0, 0] = 1.0
        assert clip.duration == pytest.approx(10 / 24000.0)
