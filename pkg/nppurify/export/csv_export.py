""" CSV tables of orbits and dimension profiles

Files have a header row, comma separators and '\\n' line endings. Numbers use
the shortest decimal representation that reads back to the same double.
"""

import csv
from collections import OrderedDict
import numpy as np

from nppurify.utils import open_output


ORBIT_COLUMNS = ('n', 'a', 'b', 'c', 'd', 'population', 'coherence', 'purity')
PROFILE_COLUMNS = ('concurrence_sq', 'dimension', 'r2')


def format_number(value):
    """ Locale independent shortest round-trip representation of a number
    """
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value) + 0.0
    if not np.isfinite(value):
        return repr(value)
    if value == 0.0 or 1e-4 <= abs(value) < 1e16:
        return np.format_float_positional(value, trim='-')
    return np.format_float_scientific(value, trim='-')


def write_csv(rows, columns, path):
    """ Write rows of numbers under a header

    :param rows: Iterable of sequences with one value per column.
    :param columns: Column names.
    :param path: Path of the file to write.
    """
    with open_output(path) as output:
        writer = csv.writer(output, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(value) for value in row])


def orbit_rows(orbit):
    """ Rows (n, a, b, c, d, population, coherence, purity) of an OrbitRecord
    """
    for n, state in enumerate(orbit.states):
        yield (n, state[0], state[1], state[2], state[3],
               orbit.population[n], orbit.coherence[n], orbit.purity[n])


def write_orbit(orbit, path):
    write_csv(orbit_rows(orbit), ORBIT_COLUMNS, path)


def write_profile(profile, path):
    """ Write a dimension profile as returned by :func:`nppurify.fractal.dim_profile`
    """
    rows = ((value, estimate.dimension, estimate.r2) for value, estimate in profile)
    write_csv(rows, PROFILE_COLUMNS, path)


def read_csv(path):
    """ Read a CSV file written by this module

    :returns: Ordered dictionary from column name to float array.
    """
    with open(path, newline='') as csv_file:
        reader = csv.reader(csv_file)
        columns = next(reader)
        rows = [[float(value) for value in row] for row in reader]
    values = np.array(rows, dtype=np.float64).reshape(len(rows), len(columns))
    return OrderedDict((name, values[:, i]) for i, name in enumerate(columns))
