import copy
import json
import logging
import os

from . import CommandSequence, MPLogger
from .Commands import command_executor
from .Errors import SeldDataError
from .Model.crnn import ModelConfig
from .utilities.multiprocess_utils import default_num_workers
from .utilities.platform_utils import get_configuration_string, get_version


def _load_json(filename):
    with open(os.path.join(os.path.dirname(__file__), filename)) as fp:
        return json.load(fp)


def load_default_params():
    """
    Loads a copy of the default pipeline_params dictionary and a copy of the
    default model_params dictionary.
    """
    pipeline_params = copy.deepcopy(
        _load_json('default_pipeline_params.json'))
    model_params = copy.deepcopy(_load_json('default_model_params.json'))
    return pipeline_params, model_params


def build_model_config(pipeline_params, model_params):
    """`ModelConfig` from the model parameters plus the feature geometry."""
    params = dict(model_params)
    params['n_mels'] = pipeline_params['n_mels']
    params['frames_per_label'] = pipeline_params['frames_per_label']
    return ModelConfig.from_params(params)


class PipelineManager:
    """ User-facing Class for running seldkit pipeline steps

    The PipelineManager owns the MPLogger that serializes log output across
    processes and runs CommandSequences step by step. Corpus commands fan
    out to a worker pool of `num_workers` processes.
    """

    def __init__(self, pipeline_params, model_params, logger_kwargs=None):
        """Initialize the PipelineManager with pipeline and model params

        Parameters
        ----------
        pipeline_params : dict
            Dictionary of pipeline configuration parameters. See the
            default in `default_pipeline_params.json`.
        model_params : dict
            Network configuration parameters. See the default in
            `default_model_params.json`.
        logger_kwargs : dict, optional
            Keyword arguments to pass to MPLogger on initialization.
        """
        # Make paths absolute in pipeline_params
        pipeline_params['log_directory'] = os.path.expanduser(
            pipeline_params['log_directory'])
        pipeline_params['log_file'] = os.path.join(
            pipeline_params['log_directory'], pipeline_params['log_file'])
        if pipeline_params['num_workers'] is None:
            pipeline_params['num_workers'] = default_num_workers()
        self.pipeline_params = pipeline_params
        self.model_params = model_params

        # fail on a bad model configuration before anything runs
        self.model_config = build_model_config(pipeline_params, model_params)

        self.logging_server = MPLogger.MPLogger(
            self.pipeline_params['log_file'],
            self.pipeline_params,
            **(logger_kwargs or {})
        )
        self.logger = logging.getLogger('seldkit')
        self.logger.debug(
            get_configuration_string(
                self.pipeline_params, self.model_params, get_version()
            )
        )

    def _issue_command(self, command):
        self.logger.debug("Executing command %s" % (command[0],))
        try:
            result = command_executor.execute_command(
                command, self.pipeline_params, self.model_config,
                self.logging_server)
        except SeldDataError as e:
            self.logger.debug("Command %s failed: %s"
                              % (command[0], e.message), exc_info=True)
            raise
        self.logger.debug("Finished command %s" % (command[0],))
        return result

    def execute_command_sequence(self, command_sequence):
        """Run every command of `command_sequence` in order.

        Returns the list of command results. The first failing command
        raises and the remaining ones are skipped.
        """
        if not isinstance(command_sequence, CommandSequence.CommandSequence):
            raise TypeError("expected a CommandSequence, found %s"
                            % type(command_sequence).__name__)
        self.logger.debug("Starting sequence %s (%d commands)"
                          % (command_sequence.name, len(command_sequence)))
        return [self._issue_command(command)
                for command in command_sequence.commands]

    def close(self):
        """Flush log records and stop the logging listener"""
        self.logging_server.close()
