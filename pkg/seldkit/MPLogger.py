import logging
import logging.handlers
import os
import sys
import threading

import sentry_sdk
from multiprocess import Queue
from sentry_sdk.integrations.logging import BreadcrumbHandler, EventHandler
from tblib import pickling_support

pickling_support.install()

LOGGER_NAME = 'seldkit'
CONSOLE_FORMAT = '%(module)-20s - %(levelname)-8s - %(message)s'
FILE_FORMAT = ("%(asctime)s - %(processName)-11s[%(threadName)-10s]"
               "- %(module)-20s - %(levelname)-8s: %(message)s")
# These config variable names should name to lowercase kwargs for MPLogger
ENV_CONFIG_VARS = [
    'LOG_LEVEL_CONSOLE',
    'LOG_LEVEL_FILE',
    'LOG_LEVEL_SENTRY_BREADCRUMB',
    'LOG_LEVEL_SENTRY_EVENT'
]
LEVELS = {
    'CRITICAL': logging.CRITICAL,
    'ERROR': logging.ERROR,
    'WARNING': logging.WARNING,
    'INFO': logging.INFO,
    'DEBUG': logging.DEBUG,
    'NOTSET': logging.NOTSET,
}
_SHUTDOWN = None


def _retrive_log_level_from_env(env_var_name):
    """Retrieve log level from `env_var_name`

    Levels from: https://docs.python.org/3/library/logging.html#levels"""
    return LEVELS.get(os.getenv(env_var_name, None))


def parse_config_from_env():
    """Parse the logger config from environment variables"""
    out = dict()
    for env_var_name in ENV_CONFIG_VARS:
        level = _retrive_log_level_from_env(env_var_name)
        if level is not None:
            out[env_var_name.lower()] = level
    return out


def _console_handler(level):
    handler = logging.StreamHandler(sys.stdout)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    return handler


def attach_worker_handlers(record_queue, log_level_console=logging.INFO):
    """Route a worker process' `seldkit` records to the parent's queue.

    Used as a pool initializer. Forked workers inherit the parent's handlers
    and are left alone; spawned workers start without any.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    if any(isinstance(h, logging.handlers.QueueHandler)
           for h in logger.handlers):
        return
    logger.addHandler(_console_handler(log_level_console))
    logger.addHandler(logging.handlers.QueueHandler(record_queue))


class MPLogger(object):
    """Configure seldkit logging across processes.

    Every process logs to the console directly. File and Sentry output is
    serialized through a queue drained by a listener thread in the parent.
    """

    def __init__(self, log_file, run_context=None,
                 log_level_console=logging.INFO,
                 log_level_file=logging.DEBUG,
                 log_level_sentry_breadcrumb=logging.DEBUG,
                 log_level_sentry_event=logging.ERROR):
        self._run_context = run_context
        self._log_level_console = log_level_console
        self._log_level_file = log_level_file
        self._log_level_sentry_breadcrumb = log_level_sentry_breadcrumb
        self._log_level_sentry_event = log_level_sentry_event
        self._record_queue = Queue()
        self._log_file = os.path.expanduser(log_file)

        # Configure sentry (if available)
        self._sentry_dsn = os.getenv('SENTRY_DSN', None)
        if self._sentry_dsn:
            self._initialize_sentry()

        self._initialize_loggers()

    @property
    def record_queue(self):
        return self._record_queue

    @property
    def log_level_console(self):
        return self._log_level_console

    def _initialize_loggers(self):
        """Set up console logging and serialized file logging.

        The logger and queue handler are set to log at the logging.DEBUG
        level and filtering happens at the outputs (console, file, and
        sentry)."""
        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(logging.DEBUG)

        # Remove any previous handlers to avoid registering duplicates
        if len(logger.handlers) > 0:
            logger.handlers = list()

        log_directory = os.path.dirname(self._log_file)
        if log_directory and not os.path.exists(log_directory):
            os.makedirs(log_directory)
        handler = logging.FileHandler(self._log_file)
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handler.setLevel(self._log_level_file)
        self._file_handler = handler

        self._listener = threading.Thread(target=self._start_listener)
        self._listener.daemon = True
        self._listener.start()

        logger.addHandler(_console_handler(self._log_level_console))

        queue_handler = logging.handlers.QueueHandler(self._record_queue)
        queue_handler.setLevel(logging.DEBUG)
        logger.addHandler(queue_handler)

    def _sentry_before_send(self, event, hint):
        """Update sentry events before they are sent

        Note: we want to be very conservative in handling errors here. If this
        method throws an error, Sentry silently discards it and no record is
        sent. It's much better to have Sentry send an unparsed error then no
        error.
        """
        # Add traceback info to fingerprint for logs that contain a traceback
        try:
            event['logentry']['message'] = event['extra']['exception'].strip()
        except KeyError:
            pass
        return event

    def _initialize_sentry(self):
        """Pull the sentry endpoint from the environment"""
        self._breadcrumb_handler = BreadcrumbHandler(
            level=self._log_level_sentry_breadcrumb)
        self._event_handler = EventHandler(
            level=self._log_level_sentry_event)
        sentry_sdk.init(
            dsn=self._sentry_dsn,
            before_send=self._sentry_before_send
        )
        if self._run_context:
            sentry_sdk.set_tag(
                'SELD_COMMAND', self._run_context.get('command', 'UNKNOWN'))

    def _start_listener(self):
        """Drain serialized records until the shutdown sentinel arrives"""
        while True:
            record = self._record_queue.get()
            if record is _SHUTDOWN:
                break
            self._handle_serialized_writes(record)

    def _handle_serialized_writes(self, record):
        """Handle records that must be serialized to the main process

        This is currently records that are written to a file on disk
        and those sent to Sentry.
        """
        if record.levelno >= self._file_handler.level:
            self._file_handler.emit(record)
        if self._sentry_dsn:
            if record.levelno >= self._breadcrumb_handler.level:
                self._breadcrumb_handler.handle(record)
            if record.levelno >= self._event_handler.level:
                self._event_handler.handle(record)

    def close(self):
        self._record_queue.put(_SHUTDOWN)
        self._listener.join()
        self._file_handler.close()
        logger = logging.getLogger(LOGGER_NAME)
        logger.handlers = list()
