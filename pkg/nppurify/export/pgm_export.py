""" Binary (P5) PGM rasters

Files have the header ``P5\\n<width> <height>\\n255\\n`` followed by one byte
per pixel, rows from top to bottom.
"""

import numpy as np

from nppurify.log import log_manager
from nppurify.utils import open_output


log = log_manager.get_logger(__name__)

MAX_LEVEL = 255


class ColorMap(object):
    """ Affine map from values in [lo, hi] to gray levels 0 … 255

    A value v has level floor(255·(v − lo)/(hi − lo) + ½) clamped to [0, 255].
    NaN values, and values below marker_below when it is set, get marker_level.
    """

    def __init__(self, lo, hi, marker_level=MAX_LEVEL, marker_below=None):
        if not lo < hi:
            raise ValueError("Color map domain [%r, %r] is empty" % (lo, hi))
        if not 0 <= marker_level <= MAX_LEVEL:
            raise ValueError("Marker level must be a gray level, got %r" % marker_level)
        self.lo = float(lo)
        self.hi = float(hi)
        self.marker_level = int(marker_level)
        self.marker_below = marker_below

    def levels(self, raster):
        """ Gray levels of a raster as uint8
        """
        values = np.asarray(raster, dtype=np.float64)
        with np.errstate(invalid='ignore'):
            scaled = (values - self.lo) / (self.hi - self.lo)
            levels = np.clip(np.floor(scaled * MAX_LEVEL + 0.5), 0, MAX_LEVEL)
            marker = np.isnan(values)
            if self.marker_below is not None:
                marker |= values < self.marker_below
        return np.where(marker, self.marker_level, levels).astype(np.uint8)

    def __repr__(self):
        return "ColorMap(lo=%r, hi=%r, marker_level=%r, marker_below=%r)" % (
            self.lo, self.hi, self.marker_level, self.marker_below)


def purity_colormap():
    """ Purities over [½, 1], unresolved pixels in mid gray
    """
    return ColorMap(0.5, 1.0, marker_level=128)


def cycle_colormap(iters):
    """ Iterations to reach a cycle over [0, N], pixels without a cycle in white
    """
    return ColorMap(0, max(iters, 1), marker_level=MAX_LEVEL, marker_below=0)


def class_colormap():
    """ Decoherence black, purification white, unresolved mid gray
    """
    return ColorMap(0, 1, marker_level=128, marker_below=0)


def write_pgm(raster, colormap, path):
    """ Write a 2D raster as a binary PGM file

    :param raster: Array of shape (height, width).
    :param colormap: ColorMap converting values to gray levels.
    :param path: Path of the file to write.
    :raises ValueError: for an empty or non 2D raster.
    :raises OSError: if the file cannot be written.
    """
    raster = np.asarray(raster)
    if raster.size == 0:
        raise ValueError("empty raster")
    if raster.ndim != 2:
        raise ValueError("Expected a 2D raster, got shape %r" % (raster.shape, ))
    height, width = raster.shape
    levels = colormap.levels(raster)
    header = ("P5\n%d %d\n%d\n" % (width, height, MAX_LEVEL)).encode('ascii')
    with open_output(path, binary=True) as output:
        output.write(header)
        output.write(levels.tobytes())
    log.debug("Wrote %dx%d PGM to %s", width, height, path)


def _header_tokens(data, count):
    """ Read whitespace separated header tokens, skipping comments

    :returns: The tokens and the offset just past the single whitespace byte ending the header.
    """
    tokens = []
    position = 0
    while len(tokens) < count:
        while position < len(data) and data[position:position + 1].isspace():
            position += 1
        if data[position:position + 1] == b'#':
            end = data.find(b'\n', position)
            if end < 0:
                break
            position = end + 1
            continue
        start = position
        while position < len(data) and not data[position:position + 1].isspace():
            position += 1
        if start == position:
            break
        tokens.append(data[start:position])
    if len(tokens) < count:
        raise ValueError("Truncated PGM header")
    return tokens, position + 1


def read_pgm(path):
    """ Read a binary PGM file with maximum value 255

    :returns: uint8 array of shape (height, width).
    :raises ValueError: if the file is not such a PGM file.
    """
    try:
        with open(path, 'rb') as pgm_file:
            data = pgm_file.read()
    except OSError as error:
        raise OSError("Could not read %s: %s" % (path, error.strerror or error)) from error
    tokens, offset = _header_tokens(data, 4)
    if tokens[0] != b'P5':
        raise ValueError("%s is not a binary PGM file" % path)
    try:
        width, height, max_value = (int(token) for token in tokens[1:])
    except ValueError:
        raise ValueError("Invalid PGM header in %s" % path)
    if max_value != MAX_LEVEL:
        raise ValueError("Unsupported PGM maximum value %d in %s" % (max_value, path))
    payload = data[offset:offset + width * height]
    if len(payload) != width * height:
        raise ValueError("PGM file %s is truncated" % path)
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()
