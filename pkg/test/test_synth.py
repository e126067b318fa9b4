import dataclasses

import numpy as np
import pytest

from ..seldkit.Errors import SceneClippingError, SceneSpecError
from ..seldkit.Features.extraction import build_mel_bank, estimate_doa, stft
from ..seldkit.Spatial.augment import (SpatialPattern, transform_channels,
                                       transform_event_list)
from ..seldkit.Spatial.geometry import DirectionOfArrival, angular_distance
from ..seldkit.Synthesis.scene import (SceneEvent, SceneSpec, active_frames,
                                       load_scene_spec, random_scene_spec,
                                       scene_spec_from_dict, synth_scene)
from . import expected
from .seldtest import SeldTest

NOISE = SceneEvent(2, 1.0, 2.0, DirectionOfArrival(45, 0), gain=0.25)
TONE = SceneEvent(5, 1.5, 4.0, DirectionOfArrival(-100, 30), source='tone',
                  frequency=500.0, gain=0.25)


class TestSynthScene(object):

    def test_empty_scene(self):
        clip, events = synth_scene(SceneSpec(10.0))
        assert clip.samples.shape == (4, 240000)
        assert not np.any(clip.samples)
        assert len(events) == 0

    def test_single_event_labels(self):
        clip, events = synth_scene(SceneSpec(10.0, [NOISE], seed=1))
        assert events.rows() == [(frame, 2, 0, 45.0, 0.0)
                                 for frame in range(10, 20)]
        assert not np.any(clip.samples[:, :24000])
        assert not np.any(clip.samples[:, 48000:])
        assert np.any(clip.samples[:, 24000:48000])

    def test_sum_of_events(self):
        both_clip, both = synth_scene(SceneSpec(5.0, [NOISE, TONE], seed=3))
        noise_clip, _ = synth_scene(SceneSpec(5.0, [NOISE], seed=3))
        tone_clip, _ = synth_scene(SceneSpec(5.0, [TONE], seed=3))
        np.testing.assert_allclose(both_clip.samples,
                                   noise_clip.samples + tone_clip.samples,
                                   atol=1e-15)
        assert {r.cls for r in both} == {2, 5}
        assert [r.frame for r in both if r.cls == 5] == list(range(15, 40))

    def test_deterministic(self):
        spec = SceneSpec(3.0, [NOISE], seed=9)
        first, _ = synth_scene(spec)
        second, _ = synth_scene(spec)
        assert first.equals(second)
        other, _ = synth_scene(dataclasses.replace(spec, seed=10))
        assert not other.equals(first)

    def test_clipping(self):
        loud = [SceneEvent(0, 0.0, 1.0, DirectionOfArrival(0, 0), gain=0.9),
                SceneEvent(1, 0.0, 1.0, DirectionOfArrival(0, 0), gain=0.9)]
        with pytest.raises(SceneClippingError) as e:
            synth_scene(SceneSpec(1.0, loud))
        assert "reduce the event gains" in e.value.message

    def test_random_scenes_do_not_clip(self):
        for seed in range(20):
            spec = random_scene_spec(5.0, 6, seed)
            assert len(spec.events) == 6
            clip, events = synth_scene(spec)
            assert np.max(np.abs(clip.samples)) <= 1.0

    def test_single_event_direction(self):
        spec = SceneSpec(2.0, [SceneEvent(7, 0.5, 1.5,
                                          DirectionOfArrival(60, 20),
                                          gain=0.5)], seed=4)
        clip, events = synth_scene(spec)
        bank = build_mel_bank()
        for pattern_id in range(16):
            p = SpatialPattern.from_id(pattern_id)
            moved = transform_event_list(events, p)
            estimate = estimate_doa(stft(transform_channels(clip, p)), bank)
            assert angular_distance(estimate, moved.records[0].doa) <= 0.5


class TestActiveFrames(object):

    @pytest.mark.parametrize('onset,offset,frames', [
        (0, 1200, [0]),
        (0, 1199, []),
        (1200, 4800, [0, 1]),
        (1201, 4800, [1]),
        (0, 24000, list(range(10))),
    ])
    def test_half_frame_rule(self, onset, offset, frames):
        assert active_frames(onset, offset, 10, 2400) == frames

    def test_clamped_to_scene(self):
        assert active_frames(0, 30000, 10, 2400) == list(range(10))


class TestSceneSpec(SeldTest):

    def test_load_toml(self):
        path = self.path('scene.toml')
        with open(path, 'w') as f:
            f.write(expected.scene_toml)
        spec = load_scene_spec(path)
        assert spec.duration == 10.0
        assert spec.seed == 11
        assert spec.events == (NOISE, TONE)
        assert spec.num_samples == 240000
        assert spec.num_label_frames == 100

    def test_bad_toml(self):
        path = self.path('bad.toml')
        with open(path, 'w') as f:
            f.write('duration = [')
        with pytest.raises(SceneSpecError):
            load_scene_spec(path)

    def test_missing_keys(self):
        with pytest.raises(SceneSpecError):
            scene_spec_from_dict({'events': []})
        with pytest.raises(SceneSpecError) as e:
            scene_spec_from_dict({'duration': 5.0,
                                  'events': [{'class': 1, 'onset': 0.0}]})
        assert "missing key" in e.value.message

    def test_overlap_on_track(self):
        first = SceneEvent(3, 0.0, 2.0, DirectionOfArrival(0, 0))
        second = SceneEvent(3, 1.0, 3.0, DirectionOfArrival(90, 0))
        with pytest.raises(SceneSpecError):
            SceneSpec(5.0, [first, second])
        SceneSpec(5.0, [first, dataclasses.replace(second, track=1)])

    @pytest.mark.parametrize('kwargs', [
        dict(cls=14), dict(onset=2.0), dict(source='chirp'),
        dict(source='tone'), dict(gain=-0.1),
    ])
    def test_invalid_events(self, kwargs):
        params = dict(cls=0, onset=1.0, offset=2.0,
                      doa=DirectionOfArrival(0, 0))
        params.update(kwargs)
        with pytest.raises(SceneSpecError):
            SceneEvent(**params)

    def test_event_beyond_duration(self):
        with pytest.raises(SceneSpecError):
            SceneSpec(1.5, [NOISE, TONE])

    def test_tone_above_nyquist(self):
        tone = dataclasses.replace(TONE, frequency=12000.0)
        with pytest.raises(SceneSpecError):
            SceneSpec(5.0, [tone])
