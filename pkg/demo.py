import os
import time

from seldkit import CommandSequence, PipelineManager
from seldkit.Evaluation.report import format_summary
from seldkit.Model.crnn import FILTER_SHAPES, forward
from seldkit.Model.weights import init_random_weights
from seldkit.utilities.tensor_container import read_features

# A one minute scene with five events, two of them overlapping in time
SCENE = """
duration = 60.0
seed = 3

[[events]]
class = 2
onset = 1.0
offset = 4.5
azimuth = 45
elevation = 0
gain = 0.15

[[events]]
class = 7
onset = 3.0
offset = 9.0
azimuth = -120
elevation = 20
source = "tone"
frequency = 880.0
gain = 0.15

[[events]]
class = 11
onset = 15.0
offset = 21.0
azimuth = 170
elevation = -30
gain = 0.15

[[events]]
class = 2
onset = 30.0
offset = 33.0
azimuth = -60
elevation = 10
gain = 0.15

[[events]]
class = 0
onset = 45.0
offset = 52.5
azimuth = 90
elevation = 60
source = "tone"
frequency = 440.0
gain = 0.15
"""

data_dir = os.path.expanduser('~/seldkit-demo/')
if not os.path.exists(data_dir):
    os.makedirs(data_dir)
scene_path = os.path.join(data_dir, 'scene.toml')
with open(scene_path, 'w') as f:
    f.write(SCENE)


def path(name):
    return os.path.join(data_dir, name)


# Loads the default pipeline and model params
pipeline_params, model_params = PipelineManager.load_default_params()
pipeline_params['log_directory'] = data_dir

manager = PipelineManager.PipelineManager(pipeline_params, model_params)

# Render the scene, rotate it with pattern 7 and run the untrained network
# on the rotated clip
sequence = CommandSequence.CommandSequence('demo')
sequence.synth(scene_path, path('scene.wav'), path('scene.csv'), seed=3)
sequence.augment(path('scene.wav'), path('scene.csv'), path('augmented'),
                 pattern=7)
sequence.extract(path('augmented/scene_p07.wav'), path('scene_p07.stf'))
sequence.init_weights(path('weights.stf'), seed=0)
sequence.infer(path('weights.stf'), path('prediction.csv'),
               features=path('scene_p07.stf'))
sequence.evaluate(path('augmented/scene_p07.csv'), path('prediction.csv'),
                  path('report.txt'))
results = manager.execute_command_sequence(sequence)
print(format_summary(results[-1]))

# Forward pass timing for every filter shape with random weights
features = read_features(path('scene_p07.stf'))
for filter_time, filter_freq in FILTER_SHAPES:
    params = dict(model_params, filter_time=filter_time,
                  filter_freq=filter_freq)
    cfg = PipelineManager.build_model_config(pipeline_params, params)
    weights = init_random_weights(cfg, seed=0)
    start = time.time()
    prediction = forward(features[:2995], weights, cfg)
    print("%dx%d: %d label frames in %.2f s"
          % (filter_time, filter_freq, prediction.num_frames,
             time.time() - start))

manager.close()
