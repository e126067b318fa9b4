from ..Errors import UsageError
from . import corpus_commands, pipeline_commands


def execute_command(command, pipeline_params, model_config, logging_server):
    """Executes PipelineManager commands
    commands are of form (COMMAND, ARG0, ARG1, ...)
    """
    if command[0] == 'SYNTH':
        return pipeline_commands.synth(
            spec_path=command[1], out_wav=command[2], out_labels=command[3],
            seed=command[4], pipeline_params=pipeline_params)

    if command[0] == 'AUGMENT':
        return pipeline_commands.augment(
            in_wav=command[1], labels=command[2], out_dir=command[3],
            pattern_id=command[4], seed=command[5], every_pattern=command[6],
            pipeline_params=pipeline_params)

    if command[0] == 'AUGMENT_CORPUS':
        per_file = command[3]
        if per_file is None:
            per_file = pipeline_params['per_file']
        return corpus_commands.augment_corpus(
            in_dir=command[1], out_dir=command[2], per_file=per_file,
            seed=command[4], pipeline_params=pipeline_params,
            record_queue=logging_server.record_queue,
            log_level_console=logging_server.log_level_console)

    if command[0] == 'EXTRACT':
        return pipeline_commands.extract(
            in_wav=command[1], out_path=command[2],
            pipeline_params=pipeline_params)

    if command[0] == 'INFER':
        return pipeline_commands.infer(
            weights_path=command[1], out_labels=command[2], in_wav=command[3],
            features_path=command[4], threshold=command[5],
            pipeline_params=pipeline_params, model_config=model_config)

    if command[0] == 'EVAL':
        return pipeline_commands.evaluate(
            ref=command[1], pred=command[2], report_path=command[3],
            pipeline_params=pipeline_params)

    if command[0] == 'INIT_WEIGHTS':
        return pipeline_commands.init_weights(
            out_path=command[1], seed=command[2], model_config=model_config)

    raise UsageError("unknown command %r" % (command[0],))
