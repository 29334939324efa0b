""" ASCII PLY point clouds
"""

import numpy as np

from nppurify.export.csv_export import format_number
from nppurify.utils import open_output


def write_ply(points, path):
    """ Write points as an ASCII 1.0 PLY file with float x, y and z properties

    The values keep the shortest round-trip digits of the doubles, so readers
    parsing the text as double lose nothing.

    :param points: Array of shape (n, 3).
    :param path: Path of the file to write.
    :raises ValueError: if any coordinate is not finite.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if not np.isfinite(points).all():
        raise ValueError("Point cloud contains non-finite coordinates")
    with open_output(path) as output:
        output.write("ply\n")
        output.write("format ascii 1.0\n")
        output.write("element vertex %d\n" % len(points))
        for axis in ('x', 'y', 'z'):
            output.write("property float %s\n" % axis)
        output.write("end_header\n")
        for point in points:
            output.write(" ".join(format_number(value) for value in point))
            output.write("\n")
