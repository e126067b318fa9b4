""" Contains lists of expected data and or rows for tests """

# Published system rows: (name, ER20, F20 %, LE_CD deg, LR_CD %, SELD)
filter_shape_rows = [
    ('Baseline (3x3)', 0.72, 37.4, 22.8, 60.7, 0.47),
    ('1x46', 0.69, 40.1, 21.7, 62.3, 0.45),
    ('1x48', 0.69, 40.3, 20.9, 62.4, 0.45),
    ('1x50', 0.70, 40.4, 21.1, 61.1, 0.45),
    ('1x52', 0.70, 39.9, 21.6, 61.4, 0.45),
    ('1x54', 0.72, 37.1, 21.7, 59.7, 0.47),
    ('1x56', 0.72, 38.2, 21.2, 59.4, 0.47),
    ('1x64', 0.72, 38.1, 23.1, 61.4, 0.46),
    ('2x48', 0.70, 40.6, 20.8, 61.1, 0.45),
    ('3x48', 0.75, 36.0, 23.1, 58.6, 0.48),
]

augmentation_rows = [
    ('Baseline', 0.72, 37.4, 22.8, 60.7, 0.47),
    ('TS', 0.86, 22.8, 27.9, 51.0, 0.57),
    ('PS', 0.86, 22.3, 28.7, 51.0, 0.57),
    ('CR', 0.59, 50.6, 17.6, 66.2, 0.38),
]

perfect_summary = "ER 0.00, F 100.0%, LE 0.0°, LR 100.0%, SELD 0.000"

scene_toml = """
duration = 10.0
seed = 11

[[events]]
class = 2
onset = 1.0
offset = 2.0
azimuth = 45
elevation = 0
gain = 0.25

[[events]]
class = 5
onset = 1.5
offset = 4.0
azimuth = -100
elevation = 30
source = "tone"
frequency = 500.0
gain = 0.25
"""
