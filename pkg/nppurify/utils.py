from contextlib import contextmanager
from functools import wraps
import logging
import time


def cached_property(func):
    """ Wraps a method on a class to make it a property and caches the result the first time it is evaluated
    """
    attr_name = '_cached_prop_' + func.__name__

    @property
    @wraps(func)
    def get(self):
        try:
            return getattr(self, attr_name)
        except AttributeError:
            value = func(self)
            setattr(self, attr_name, value)
            return value

    return get


class Timer(object):
    """ Context manager for logging the time taken by a scan or an estimate
    """

    def __init__(self, log, description):
        self._enabled = log.isEnabledFor(logging.INFO)
        self._log = log
        self._description = description
        self._start_time = None
        self.elapsed_ms = None

    def __enter__(self):
        self._start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed_ms = (time.perf_counter() - self._start_time) * 1.0e3
        if self._enabled:
            self._log.info("%s: Took %.1f ms", self._description, self.elapsed_ms)


def parse_components(text, count=None, name="value"):
    """ Parse a comma separated list of reals such as "1,0.1"

    :param text: The string to parse.
    :param count: Required number of components, or None to accept any number.
    :param name: Name used in error messages.
    :rtype: tuple of float
    """
    try:
        values = tuple(float(part) for part in text.split(','))
    except ValueError:
        raise ValueError("Invalid %s %r, expected comma separated numbers" % (name, text))
    if count is not None and len(values) != count:
        raise ValueError(
            "Invalid %s %r, expected %d comma separated numbers" % (name, text, count))
    return values


@contextmanager
def open_output(path, binary=False):
    """ Open a file for writing, adding the path to any error raised on opening

    Text files are written with '\\n' line endings on every platform.
    """
    try:
        if binary:
            output = open(path, 'wb')
        else:
            output = open(path, 'w', newline='', encoding='ascii')
    except OSError as error:
        raise OSError("Could not open %s for writing: %s" % (path, error.strerror or error)) from error
    with output:
        yield output
