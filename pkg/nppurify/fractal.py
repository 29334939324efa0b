""" Fractal borders between purification and decoherence

Tools to extract the border between the two regimes from a class raster or
voxel field, estimate its box-counting dimension, and explore the border in
three dimensions through the embedding ζ ↦ (Re ζ, Im₁ ζ, −|ζ − Co ζ|).
"""

from collections import namedtuple
import numpy as np
from scipy import stats

from nppurify.log import log_manager
from nppurify.quat import Quaternion, as_quaternion_array
from nppurify.scan import SliceSpec, analyse_orbits, julia_scan, resolve_options
from nppurify.utils import Timer


log = log_manager.get_logger(__name__)

MIN_MARKS = 32

DYADIC_SCHEME = 'dyadic'
EXTENT_SCHEME = 'extent'
BOX_SCHEMES = (DYADIC_SCHEME, EXTENT_SCHEME)
# Under the extent scheme a fitted box size fits this many times along the marked set
EXTENT_BOXES = 8


EmbeddingPoint = namedtuple('EmbeddingPoint', ['x', 'y', 'z'])


def embed_array(x):
    """ (Re ζ, Im₁ ζ, −|ζ − Co ζ|) for every quaternion of a (..., 4) array

    :returns: Array of shape (..., 3).
    """
    x = np.asarray(x, dtype=np.float64)
    return np.stack((x[..., 0], x[..., 1], -np.hypot(x[..., 2], x[..., 3])), axis=-1)


def unembed_array(points):
    """ Aligned states whose embedding is the given (..., 3) array of points

    The state has |z| = √(X² + Y² + Z²), arg z = atan2(Y, X) and mixing angle
    λ = atan2(−Z, √(X² + Y²)). Points on the Z axis give ζ = ȷ|Z|.

    :raises ValueError: if any Z is positive.
    """
    points = np.asarray(points, dtype=np.float64)
    x, y, z = points[..., 0], points[..., 1], points[..., 2]
    if np.any(z > 0.0):
        raise ValueError("Embedding points must have Z <= 0")
    phase = np.arctan2(y, x)
    jk_abs = -z
    return np.stack((x, y, jk_abs * np.cos(phase), jk_abs * np.sin(phase)), axis=-1)


def embed(zeta):
    """ The point (Re ζ, Im₁ ζ, −|ζ − Co ζ|) of a state

    :rtype: EmbeddingPoint
    """
    return EmbeddingPoint(*(float(v) for v in embed_array(as_quaternion_array(Quaternion.coerce(zeta)))))


def unembed(point):
    """ The aligned state embedded at a point with Z <= 0

    :rtype: Quaternion
    """
    return Quaternion.from_array(unembed_array(np.asarray(tuple(point), dtype=np.float64)))


def extract_boundary(classes, symmetric=False):
    """ Mark the cells of a 2D or 3D label array lying on the border between labels

    The default marking is one-sided: a cell is marked when its label
    differs from the next cell along any axis, so only the cell on the lower
    index side of each differing pair is kept and borders come out one cell
    wide. The last cell along an axis is never marked by that axis. With
    symmetric=True both cells of every differing 4-neighbour (6-neighbour in
    3D) pair are marked, which is the "differs from at least one neighbour"
    rule and gives borders two cells wide.

    :param classes: Integer label raster of shape (ny, nx) or a voxel field.
    :rtype: Boolean array of the same shape.
    """
    classes = np.asarray(classes)
    if classes.ndim not in (2, 3):
        raise ValueError("Expected a 2D raster or 3D voxel field, got %d dimensions" % classes.ndim)
    boundary = np.zeros(classes.shape, dtype=bool)
    for axis in range(classes.ndim):
        lower = [slice(None)] * classes.ndim
        upper = [slice(None)] * classes.ndim
        lower[axis] = slice(None, -1)
        upper[axis] = slice(1, None)
        lower = tuple(lower)
        upper = tuple(upper)
        differs = classes[lower] != classes[upper]
        boundary[lower] |= differs
        if symmetric:
            boundary[upper] |= differs
    return boundary


class BoxDimEstimate(object):
    """ Upper box-counting dimension estimated from dyadic box counts

    :ivar scales: Box sizes ε in cells
    :ivar counts: Number of boxes of each size containing a marked cell
    :ivar dimension: Fitted slope of log N(ε) against log(1/ε)
    :ivar r2: Coefficient of determination of the fit
    :ivar range_used: (smallest, largest) box size used by the fit
    :ivar num_points: Number of marked cells
    :ivar degenerate: True when there were too few marked cells to estimate a dimension
    """

    def __init__(self, scales, counts, dimension, r2, range_used, num_points, degenerate=False):
        self.scales = scales
        self.counts = counts
        self.dimension = dimension
        self.r2 = r2
        self.range_used = range_used
        self.num_points = num_points
        self.degenerate = degenerate

    @staticmethod
    def empty(num_points=0):
        """ Estimate reported for sets too small to measure
        """
        return BoxDimEstimate(np.array([], dtype=np.int64), np.array([], dtype=np.int64),
                              0.0, 0.0, None, num_points, degenerate=True)

    def __repr__(self):
        return "BoxDimEstimate(dimension=%r, r2=%r, range_used=%r, num_points=%r, degenerate=%r)" % (
            self.dimension, self.r2, self.range_used, self.num_points, self.degenerate)


def _as_raster(points, shape):
    points = np.asarray(points)
    if points.dtype == bool:
        return points
    if points.ndim != 2 or not np.issubdtype(points.dtype, np.integer):
        raise ValueError("Expected a boolean raster or an (n, dim) array of integer cell indices")
    if shape is None:
        if len(points) == 0:
            raise ValueError("The shape of an empty point set must be given")
        shape = tuple(int(n) + 1 for n in points.max(axis=0))
    raster = np.zeros(shape, dtype=bool)
    raster[tuple(points.T)] = True
    return raster


def count_boxes(raster, size):
    """ Number of size×size (×size) boxes containing at least one marked cell
    """
    padding = [(0, (-n) % size) for n in raster.shape]
    padded = np.pad(raster, padding, mode='constant', constant_values=False)
    blocked_shape = []
    for n in padded.shape:
        blocked_shape.extend((n // size, size))
    occupied = padded.reshape(blocked_shape).any(axis=tuple(range(1, 2 * raster.ndim, 2)))
    return int(np.count_nonzero(occupied))


def marked_extent(raster):
    """ Longest side, in cells, of the bounding box of the marked cells
    """
    raster = np.asarray(raster, dtype=bool)
    if not raster.any():
        return 0
    spans = []
    for axis in range(raster.ndim):
        others = tuple(a for a in range(raster.ndim) if a != axis)
        occupied = np.flatnonzero(raster.any(axis=others))
        spans.append(int(occupied[-1] - occupied[0]) + 1)
    return max(spans)


def box_dim(points, shape=None, scheme=DYADIC_SCHEME):
    """ Estimate the box-counting dimension of a set of marked cells

    Boxes of size 2^k cells are counted for k = 1 … log₂(min side) − 2 and
    the slope of log N(ε) against log(1/ε) is fitted by least squares. When
    four or more scales are available the finest and coarsest are left out
    of the fit.

    The 'extent' scheme further leaves out box sizes that do not fit eight
    times along the longest side of the marked set's bounding box. A compact
    curve is covered by a handful of such boxes whatever its shape, so they
    only flatten the count. At least two scales are always kept.

    :param points: Boolean 2D or 3D raster, or an (n, dim) array of integer cell indices.
    :param shape: Raster shape for a point set, inferred from the largest index when None.
    :param scheme: 'dyadic' or 'extent'.
    :rtype: BoxDimEstimate
    :raises ValueError: with fewer than 32 marked cells, a raster too small for
        two scales or an unknown scheme.
    """
    if scheme not in BOX_SCHEMES:
        raise ValueError("Unknown box-counting scheme %r, expected one of %s" % (scheme, ", ".join(BOX_SCHEMES)))
    raster = _as_raster(points, shape)
    if raster.ndim not in (2, 3):
        raise ValueError("Expected a 2D or 3D set, got %d dimensions" % raster.ndim)
    num_points = int(np.count_nonzero(raster))
    if num_points < MIN_MARKS:
        raise ValueError(
            "Too few marked cells for a box-counting estimate: %d < %d" % (num_points, MIN_MARKS))
    max_power = int(np.floor(np.log2(min(raster.shape)))) - 2
    if max_power < 2:
        raise ValueError("Raster of shape %r is too small for a box-counting estimate" % (raster.shape, ))

    with Timer(log, "Box counting over %d cells" % raster.size):
        scales = 2 ** np.arange(1, max_power + 1)
        counts = np.array([count_boxes(raster, size) for size in scales], dtype=np.int64)
    for size, count in zip(scales, counts):
        log.debug("Box size %d: %d boxes", size, count)

    used = np.ones(len(scales), dtype=bool)
    if len(scales) >= 4:
        used[0] = used[-1] = False
    if scheme == EXTENT_SCHEME:
        extent = marked_extent(raster)
        within = used & (scales * EXTENT_BOXES <= extent)
        if np.count_nonzero(within) >= 2:
            used = within
        else:
            log.debug("Marked set spans %d cells, keeping the dyadic fit range", extent)
    fit = stats.linregress(np.log(1.0 / scales[used]), np.log(counts[used]))
    return BoxDimEstimate(
        scales, counts, float(fit.slope), float(fit.rvalue ** 2),
        (int(scales[used][0]), int(scales[used][-1])), num_points)


class VolumeSpec(object):
    """ A box in embedding coordinates sampled at voxel centers

    Voxel centers are ascending along every axis and fields have shape (nx, ny, nz).
    """

    def __init__(self, x_min=-2.0, x_max=2.0, y_min=-2.0, y_max=2.0, z_min=-2.0, z_max=0.0,
                 nx=64, ny=64, nz=64):
        if not (x_min < x_max and y_min < y_max and z_min < z_max):
            raise ValueError("Invalid volume, every minimum must be below its maximum")
        if z_max > 0.0:
            raise ValueError("The Z range of an embedding volume must lie in (-inf, 0], got z_max=%r" % z_max)
        if min(int(nx), int(ny), int(nz)) < 2:
            raise ValueError("Volume resolution must be at least 2 along every axis")
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.y_min = float(y_min)
        self.y_max = float(y_max)
        self.z_min = float(z_min)
        self.z_max = float(z_max)
        self.nx = int(nx)
        self.ny = int(ny)
        self.nz = int(nz)

    @property
    def shape(self):
        return (self.nx, self.ny, self.nz)

    @staticmethod
    def _centers(lo, hi, n):
        return lo + (hi - lo) * (np.arange(n) + 0.5) / n

    def coordinates(self):
        """ Voxel centers as an array of shape (nx, ny, nz, 3)
        """
        x, y, z = np.meshgrid(
            self._centers(self.x_min, self.x_max, self.nx),
            self._centers(self.y_min, self.y_max, self.ny),
            self._centers(self.z_min, self.z_max, self.nz),
            indexing='ij')
        return np.stack((x, y, z), axis=-1)

    def __repr__(self):
        return "VolumeSpec(x=[%r, %r], y=[%r, %r], z=[%r, %r], shape=%r)" % (
            self.x_min, self.x_max, self.y_min, self.y_max, self.z_min, self.z_max, self.shape)


class BulbResult(object):
    """ Voxelized border between the regimes in embedding coordinates

    :ivar volume: The VolumeSpec
    :ivar classes: Regime labels of shape (nx, ny, nz)
    :ivar boundary: Boolean mask of voxels on the border
    :ivar points: Centers of the border voxels, shape (n, 3)
    """

    def __init__(self, volume, classes, boundary, points):
        self.volume = volume
        self.classes = classes
        self.boundary = boundary
        self.points = points

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "BulbResult(volume=%r, points=%d)" % (self.volume, len(self.points))


def bulb_scan(volume, system, iters=None, options=None):
    """ Classify the states of a volume of embedding points and extract the border

    :param volume: VolumeSpec with Z <= 0.
    :param system: DephasingParams or DuParams.
    :param iters: Number of steps, overriding options.iters when given.
    :param options: ScanOptions, defaults are used when None.
    :rtype: BulbResult
    """
    options = resolve_options(options, iters)
    centers = volume.coordinates()
    initial = unembed_array(centers)
    with Timer(log, "Bulb scan of %dx%dx%d voxels" % volume.shape):
        analysis = analyse_orbits(initial, system, options)
    boundary = extract_boundary(analysis.classes)
    points = centers[boundary]
    log.info("Bulb border has %d voxels", len(points))
    return BulbResult(volume, analysis.classes, boundary, points)


def dim_profile(system, grid, concurrence_sq_values, iters=None, options=None, scheme=EXTENT_SCHEME):
    """ Box-counting dimension of the border on slices of constant squared concurrence

    Slices whose border has fewer than 32 cells give a degenerate estimate with dimension 0.
    Borders of the strongly mixed slices are compact closed curves, which is
    why the fit range follows their extent by default.

    :param system: DephasingParams or DuParams.
    :param grid: GridSpec over the complex part of the initial state.
    :param concurrence_sq_values: Squared concurrences of the slices.
    :param scheme: Box-counting scheme passed to :func:`box_dim`.
    :returns: List of (concurrence_sq, BoxDimEstimate) tuples.
    """
    if scheme not in BOX_SCHEMES:
        raise ValueError("Unknown box-counting scheme %r, expected one of %s" % (scheme, ", ".join(BOX_SCHEMES)))
    options = resolve_options(options, iters)
    profile = []
    for value in concurrence_sq_values:
        if value < 0.0:
            raise ValueError("Squared concurrence must be non-negative, got %r" % value)
        result = julia_scan(grid, SliceSpec.initial_plane(value), system, options=options)
        boundary = extract_boundary(result.classes)
        num_points = int(np.count_nonzero(boundary))
        if num_points < MIN_MARKS:
            log.warning("Border at squared concurrence %g has only %d cells", value, num_points)
            estimate = BoxDimEstimate.empty(num_points)
        else:
            estimate = box_dim(boundary, scheme=scheme)
        log.info("Squared concurrence %g: dimension %.3f", value, estimate.dimension)
        profile.append((float(value), estimate))
    return profile


def profile_dataframe(profile):
    """ Convert a dimension profile to a pandas DataFrame with one row per slice

    :param profile: List of (concurrence_sq, BoxDimEstimate) as returned by :func:`dim_profile`.
    :rtype: pandas.DataFrame
    """
    from nppurify.export import pandas_export
    return pandas_export.from_profile(profile)
