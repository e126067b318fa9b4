from .Errors import UsageError


class CommandSequence:
    """A CommandSequence wraps a series of pipeline steps that are run in
    order by one PipelineManager. A sequence that renders a scene, augments
    it and extracts features from the result would be:

    sequence = CommandSequence('scene-01')
    sequence.synth('scene.toml', 'a.wav', 'a.csv', seed=1)
    sequence.augment('a.wav', 'a.csv', 'aug/', pattern=7)
    sequence.extract('aug/a_p07.wav', 'a_p07.stf')
    manager.execute_command_sequence(sequence)

    Commands are stored as tuples of the form (COMMAND, ARG0, ARG1, ...).
    Steps only communicate through the files they read and write, so later
    steps may consume the output paths of earlier ones.
    """

    def __init__(self, name='seld'):
        """Initialize command sequence.

        Parameters
        ----------
        name : string
            label used for this sequence in log messages
        """
        self.name = name
        self.commands = []

    def synth(self, spec_path, out_wav, out_labels, seed=None):
        """ renders a TOML scene description to a WAV file and labels """
        self.commands.append(('SYNTH', spec_path, out_wav, out_labels, seed))

    def augment(self, in_wav, labels, out_dir, pattern=None, seed=None,
                all_patterns=False):
        """ applies one fixed, one random or all 15 non-identity patterns
        to a clip and its labels """
        chosen = sum([pattern is not None, seed is not None,
                      bool(all_patterns)])
        if chosen != 1:
            raise UsageError("augment needs exactly one of a pattern, a seed "
                             "or all patterns")
        command = ('AUGMENT', in_wav, labels, out_dir, pattern, seed,
                   bool(all_patterns))
        self.commands.append(command)

    def augment_corpus(self, in_dir, out_dir, per_file=None, seed=None):
        """ augments every WAV/CSV pair of a directory """
        if seed is None:
            raise UsageError("augment-corpus needs an explicit seed")
        self.commands.append(('AUGMENT_CORPUS', in_dir, out_dir, per_file,
                              seed))

    def extract(self, in_wav, out_path):
        """ writes the feature tensor of a clip to a tensor container """
        self.commands.append(('EXTRACT', in_wav, out_path))

    def infer(self, weights, out_labels, in_wav=None, features=None,
              threshold=None):
        """ runs the network on a clip or on stored features and writes the
        decoded predictions as a label file """
        if (in_wav is None) == (features is None):
            raise UsageError("infer needs exactly one of a WAV file or a "
                             "feature file")
        self.commands.append(('INFER', weights, out_labels, in_wav, features,
                              threshold))

    def evaluate(self, ref, pred, report=None):
        """ scores predicted labels against reference labels """
        self.commands.append(('EVAL', ref, pred, report))

    def init_weights(self, out_path, seed):
        """ writes randomly initialized network weights """
        if seed is None:
            raise UsageError("init-weights needs an explicit seed")
        self.commands.append(('INIT_WEIGHTS', out_path, seed))

    def __len__(self):
        return len(self.commands)
