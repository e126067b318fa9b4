"""Command line entry point: synth, augment, extract, infer and eval.

Exit codes: 0 on success, 1 for usage errors, 2 for data or format errors.
"""
import argparse
import sys

from . import CommandSequence, MPLogger, PipelineManager
from .Errors import SeldDataError, UsageError
from .Evaluation.report import format_summary, format_table
from .Spatial.augment import NUM_PATTERNS
from .utilities.wav_utils import ENCODINGS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises `UsageError` instead of exiting with code 2"""

    def error(self, message):
        raise UsageError(message)


def _non_negative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("invalid integer %r" % text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0, found %d" % value)
    return value


def _pattern_count(text):
    value = _non_negative_int(text)
    if value >= NUM_PATTERNS:
        raise argparse.ArgumentTypeError(
            "at most %d distinct non-identity patterns, found %d"
            % (NUM_PATTERNS - 1, value))
    return value


def _positive_int(text):
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument('--log-dir', help="directory of the log file")
    encoding = ArgumentParser(add_help=False)
    encoding.add_argument('--encoding', choices=ENCODINGS,
                          help="WAV sample encoding of written files")
    model = ArgumentParser(add_help=False)
    model.add_argument('--filter-freq', type=_positive_int,
                       help="mel bands spanned by each convolution kernel")
    model.add_argument('--filter-time', type=_positive_int,
                       help="frames spanned by each convolution kernel")

    parser = ArgumentParser(prog='seld', description=__doc__)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND',
                                     parser_class=ArgumentParser)
    commands.required = True

    p = commands.add_parser('synth', parents=[common, encoding],
                            help="render a TOML scene description")
    p.add_argument('--spec', required=True)
    p.add_argument('--out-wav', required=True)
    p.add_argument('--out-labels', required=True)
    p.add_argument('--seed', type=_non_negative_int)

    p = commands.add_parser('augment', parents=[common, encoding],
                            help="apply spatial patterns to one clip")
    p.add_argument('--in', dest='in_wav', required=True)
    p.add_argument('--labels', required=True)
    p.add_argument('--out-dir', required=True)
    choice = p.add_mutually_exclusive_group(required=True)
    choice.add_argument('--pattern', type=int,
                        choices=range(NUM_PATTERNS), metavar='0..15')
    choice.add_argument('--seed', type=_non_negative_int)
    choice.add_argument('--all-patterns', action='store_true')

    p = commands.add_parser('augment-corpus', parents=[common, encoding],
                            help="augment every WAV/CSV pair of a directory")
    p.add_argument('--in-dir', required=True)
    p.add_argument('--out-dir', required=True)
    p.add_argument('--per-file', type=_pattern_count)
    p.add_argument('--seed', type=_non_negative_int, required=True)
    p.add_argument('--workers', type=_positive_int)

    p = commands.add_parser('extract', parents=[common],
                            help="write the feature tensor of a clip")
    p.add_argument('--in', dest='in_wav', required=True)
    p.add_argument('--out', required=True)

    p = commands.add_parser('infer', parents=[common, model],
                            help="predict labels with stored weights")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--in', dest='in_wav')
    source.add_argument('--features')
    p.add_argument('--weights', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--threshold', type=float)

    p = commands.add_parser('eval', parents=[common],
                            help="score predictions against references")
    p.add_argument('--ref', required=True)
    p.add_argument('--pred', required=True)
    p.add_argument('--report')
    p.add_argument('--table', action='store_true',
                   help="also print the metric table with raw counts")

    p = commands.add_parser('init-weights', parents=[common, model],
                            help="write randomly initialized weights")
    p.add_argument('--out', required=True)
    p.add_argument('--seed', type=_non_negative_int, required=True)
    return parser


def build_sequence(args):
    sequence = CommandSequence.CommandSequence(args.command)
    if args.command == 'synth':
        sequence.synth(args.spec, args.out_wav, args.out_labels, args.seed)
    elif args.command == 'augment':
        sequence.augment(args.in_wav, args.labels, args.out_dir,
                         pattern=args.pattern, seed=args.seed,
                         all_patterns=args.all_patterns)
    elif args.command == 'augment-corpus':
        sequence.augment_corpus(args.in_dir, args.out_dir, args.per_file,
                                args.seed)
    elif args.command == 'extract':
        sequence.extract(args.in_wav, args.out)
    elif args.command == 'infer':
        sequence.infer(args.weights, args.out, in_wav=args.in_wav,
                       features=args.features, threshold=args.threshold)
    elif args.command == 'eval':
        sequence.evaluate(args.ref, args.pred, args.report)
    elif args.command == 'init-weights':
        sequence.init_weights(args.out, args.seed)
    return sequence


def apply_overrides(args, pipeline_params, model_params):
    pipeline_params['command'] = args.command
    if args.log_dir:
        pipeline_params['log_directory'] = args.log_dir
    if getattr(args, 'encoding', None):
        pipeline_params['wav_encoding'] = args.encoding
    if getattr(args, 'workers', None):
        pipeline_params['num_workers'] = args.workers
    if getattr(args, 'filter_freq', None):
        model_params['filter_freq'] = args.filter_freq
    if getattr(args, 'filter_time', None):
        model_params['filter_time'] = args.filter_time


def run(args):
    pipeline_params, model_params = PipelineManager.load_default_params()
    apply_overrides(args, pipeline_params, model_params)
    sequence = build_sequence(args)
    manager = PipelineManager.PipelineManager(
        pipeline_params, model_params,
        logger_kwargs=MPLogger.parse_config_from_env())
    try:
        results = manager.execute_command_sequence(sequence)
    finally:
        manager.close()
    if args.command == 'eval':
        report = results[0]
        print(format_summary(report))
        if args.table:
            print(format_table(report))


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        run(args)
    except UsageError as e:
        print("seld: usage error: %s" % e.message, file=sys.stderr)
        return EXIT_USAGE
    except SeldDataError as e:
        print("seld: error: %s" % e.message, file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print("seld: error: %s" % e, file=sys.stderr)
        return EXIT_DATA
    except SystemExit as e:
        return e.code or EXIT_OK
    return EXIT_OK
