""" Grid scans over planes of initial states and of map parameters

A Julia-type scan fixes the system and varies the initial state over a plane
of complex parts with a fixed squared concurrence. A Mandel-type scan starts
every orbit at ζ₀ = 0 and varies p (dephasing family) or the complex part of
q (du family) instead.

Pixels are processed in blocks of :data:`BLOCK_SIZE` orbits. Blocks do not
depend on the number of worker threads and write to disjoint slices of the
output arrays, so the rasters are identical whatever the degree of
parallelism.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import os
import numpy as np

from nppurify.dynamics import (
    DEFAULT_CYCLE_TOL, DEFAULT_ITERS, DEFAULT_MAX_PERIOD, DEFAULT_THRESHOLD, DEFAULT_WINDOW,
    METRICS, QUATERNION_METRIC, DephasingParams, DuParams, Regime,
    classify_states, detect_cycles, iterate_states)
from nppurify.log import log_manager
from nppurify.quat import make_complex
from nppurify.qubit_state import EPS_P
from nppurify.utils import Timer


log = log_manager.get_logger(__name__)

BLOCK_SIZE = 4096

INITIAL_PLANE = 'initial-plane'
P_PLANE = 'p-plane'
Q_PLANE = 'q-plane'
SLICE_KINDS = (INITIAL_PLANE, P_PLANE, Q_PLANE)


class GridSpec(object):
    """ A rectangular window sampled at pixel centers

    Column i has x = x_min + (x_max − x_min)(i + ½)/nx and row j has
    y = y_max − (y_max − y_min)(j + ½)/ny, so rasters have shape (ny, nx)
    with the first row at the top of the window.
    """

    def __init__(self, x_min=-2.0, x_max=2.0, y_min=-2.0, y_max=2.0, nx=256, ny=256):
        if not x_min < x_max or not y_min < y_max:
            raise ValueError(
                "Invalid window [%r, %r]x[%r, %r], minimum must be below maximum" % (x_min, x_max, y_min, y_max))
        if int(nx) < 2 or int(ny) < 2:
            raise ValueError("Grid resolution must be at least 2x2, got %rx%r" % (nx, ny))
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.y_min = float(y_min)
        self.y_max = float(y_max)
        self.nx = int(nx)
        self.ny = int(ny)

    @property
    def shape(self):
        return (self.ny, self.nx)

    @property
    def size(self):
        return self.nx * self.ny

    def x_centers(self):
        return self.x_min + (self.x_max - self.x_min) * (np.arange(self.nx) + 0.5) / self.nx

    def y_centers(self):
        return self.y_max - (self.y_max - self.y_min) * (np.arange(self.ny) + 0.5) / self.ny

    def coordinates(self):
        """ x and y coordinates of every pixel center as two (ny, nx) arrays
        """
        return np.meshgrid(self.x_centers(), self.y_centers())

    def pixel_center(self, i, j):
        """ Coordinates of the center of column i, row j
        """
        return float(self.x_centers()[i]), float(self.y_centers()[j])

    def describe(self):
        return {
            'x_min': self.x_min, 'x_max': self.x_max, 'y_min': self.y_min, 'y_max': self.y_max,
            'nx': self.nx, 'ny': self.ny}

    def __repr__(self):
        return "GridSpec(x_min=%r, x_max=%r, y_min=%r, y_max=%r, nx=%r, ny=%r)" % (
            self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny)


class SliceSpec(object):
    """ Which plane a grid is laid over

    :ivar kind: 'initial-plane', 'p-plane' or 'q-plane'
    :ivar concurrence_sq: Squared concurrence |ζ₀ − Co ζ₀|² of the initial states (initial-plane)
    :ivar fixed_im2: Im₂(q) held fixed in a q-plane
    :ivar fixed_im3: Im₃(q) held fixed in a q-plane
    """

    def __init__(self, kind=INITIAL_PLANE, concurrence_sq=0.0, fixed_im2=0.0, fixed_im3=0.1):
        if kind not in SLICE_KINDS:
            raise ValueError("Unknown slice kind %r, expected one of %s" % (kind, ", ".join(SLICE_KINDS)))
        if not np.isfinite(concurrence_sq) or concurrence_sq < 0.0:
            raise ValueError("Squared concurrence must be finite and non-negative, got %r" % concurrence_sq)
        self.kind = kind
        self.concurrence_sq = float(concurrence_sq)
        self.fixed_im2 = float(fixed_im2)
        self.fixed_im3 = float(fixed_im3)

    @staticmethod
    def initial_plane(concurrence_sq=0.0):
        return SliceSpec(INITIAL_PLANE, concurrence_sq=concurrence_sq)

    @staticmethod
    def p_plane():
        return SliceSpec(P_PLANE)

    @staticmethod
    def q_plane(fixed_im2=0.0, fixed_im3=0.1):
        return SliceSpec(Q_PLANE, fixed_im2=fixed_im2, fixed_im3=fixed_im3)

    def describe(self):
        return {
            'kind': self.kind, 'concurrence_sq': self.concurrence_sq,
            'fixed_im2': self.fixed_im2, 'fixed_im3': self.fixed_im3}

    def __repr__(self):
        return "SliceSpec(kind=%r, concurrence_sq=%r, fixed_im2=%r, fixed_im3=%r)" % (
            self.kind, self.concurrence_sq, self.fixed_im2, self.fixed_im3)


class ScanOptions(object):
    """ Settings of the per-orbit analysis shared by all scans

    :ivar iters: Number of steps N of every orbit
    :ivar max_period: Largest cycle period looked for
    :ivar cycle_tol: Return tolerance of the cycle detection
    :ivar metric: 'quaternion' or 'density-matrix' distance for cycle detection
    :ivar window: Number of final steps averaged by the classification
    :ivar threshold: Mean purity from which an orbit counts as purified
    :ivar threads: Number of worker threads
    """

    def __init__(self, iters=DEFAULT_ITERS, max_period=DEFAULT_MAX_PERIOD, cycle_tol=DEFAULT_CYCLE_TOL,
                 metric=QUATERNION_METRIC, window=DEFAULT_WINDOW, threshold=DEFAULT_THRESHOLD, threads=None):
        if int(iters) < 0:
            raise ValueError("Number of iterations must be non-negative, got %r" % iters)
        if int(max_period) < 1:
            raise ValueError("Maximum cycle period must be at least 1, got %r" % max_period)
        if not cycle_tol > 0.0:
            raise ValueError("Cycle tolerance must be positive, got %r" % cycle_tol)
        if metric not in METRICS:
            raise ValueError("Unknown cycle metric %r, expected one of %s" % (metric, ", ".join(METRICS)))
        if int(window) < 1:
            raise ValueError("Classification window must be at least 1, got %r" % window)
        if threads is None:
            threads = os.cpu_count() or 1
        if int(threads) < 1:
            raise ValueError("Number of threads must be at least 1, got %r" % threads)
        self.iters = int(iters)
        self.max_period = int(max_period)
        self.cycle_tol = float(cycle_tol)
        self.metric = metric
        self.window = int(window)
        self.threshold = float(threshold)
        self.threads = int(threads)

    def replace(self, **changes):
        """ Copy of these options with some settings changed
        """
        settings = {
            'iters': self.iters, 'max_period': self.max_period, 'cycle_tol': self.cycle_tol,
            'metric': self.metric, 'window': self.window, 'threshold': self.threshold,
            'threads': self.threads}
        settings.update(changes)
        return ScanOptions(**settings)

    def describe(self):
        return {
            'iters': self.iters, 'max_period': self.max_period, 'cycle_tol': self.cycle_tol,
            'metric': self.metric, 'window': self.window, 'threshold': self.threshold}

    def __repr__(self):
        return ("ScanOptions(iters=%r, max_period=%r, cycle_tol=%r, metric=%r, window=%r, threshold=%r, "
                "threads=%r)" % (self.iters, self.max_period, self.cycle_tol, self.metric, self.window,
                                 self.threshold, self.threads))


OrbitAnalysis = namedtuple('OrbitAnalysis', ['purity', 'cycle_entry', 'cycle_period', 'classes', 'final_states'])


class ScanResult(object):
    """ Rasters produced by a scan, all of shape (ny, nx)

    :ivar grid: The scanned GridSpec
    :ivar slice: The SliceSpec of the scan
    :ivar system: The system, with per-pixel parameters for Mandel-type scans
    :ivar options: The ScanOptions used
    :ivar purity: Purity of the final state, NaN for unresolved pixels
    :ivar cycle_entry: Iterations needed to reach a cycle, -1 when none was found
    :ivar cycle_period: Period of the cycle reached, 0 when none was found
    :ivar classes: :class:`~nppurify.dynamics.Regime` values as int8
    :ivar final_states: The states ζ_N, shape (ny, nx, 4)
    """

    def __init__(self, grid, slice_spec, system, options, analysis):
        self.grid = grid
        self.slice = slice_spec
        self.system = system
        self.options = options
        self.purity = analysis.purity
        self.cycle_entry = analysis.cycle_entry
        self.cycle_period = analysis.cycle_period
        self.classes = analysis.classes
        self.final_states = analysis.final_states

    def purification_fraction(self):
        """ Fraction of pixels where purification wins
        """
        return float(np.count_nonzero(self.classes == Regime.PURIFICATION)) / self.classes.size

    def as_hdf(self, path):
        """ Write all rasters to an HDF5 file

        :param path: Path of the file to create.
        :rtype: h5py.File
        """
        from nppurify.export import hdf_export
        return hdf_export.from_scan(self, path)

    def __repr__(self):
        return "ScanResult(grid=%r, slice=%r, system=%r)" % (self.grid, self.slice, self.system)


def analyse_orbits(initial, system, options):
    """ Iterate, detect cycles and classify the orbits of an array of initial states

    :param initial: Initial states of shape (..., 4).
    :param system: DephasingParams or DuParams. Per-orbit parameter arrays
        must be flattened to match the flattened initial states.
    :param options: ScanOptions
    :rtype: OrbitAnalysis with arrays shaped like the leading axes of initial.
    """
    initial = np.asarray(initial, dtype=np.float64)
    shape = initial.shape[:-1]
    flat = initial.reshape(-1, 4)
    count = flat.shape[0]

    purity = np.empty(count)
    cycle_entry = np.empty(count, dtype=np.int64)
    cycle_period = np.empty(count, dtype=np.int64)
    classes = np.empty(count, dtype=np.int8)
    final_states = np.empty((count, 4))

    def process_block(start):
        block = slice(start, min(start + BLOCK_SIZE, count))
        block_system = system.select(block)
        states, diverged_at = iterate_states(flat[block], block_system, options.iters)
        entry, period = detect_cycles(
            states, diverged_at, options.max_period, options.cycle_tol, options.metric)
        labels, final_purity = classify_states(states, diverged_at, options.window, options.threshold)
        purity[block] = final_purity
        cycle_entry[block] = entry
        cycle_period[block] = period
        classes[block] = labels
        final_states[block] = states[-1]
        log.debug("Analysed orbits %d to %d", block.start, block.stop)

    starts = range(0, count, BLOCK_SIZE)
    if options.threads == 1 or len(starts) == 1:
        for start in starts:
            process_block(start)
    else:
        with ThreadPoolExecutor(max_workers=options.threads) as executor:
            # Consume the results so exceptions from blocks propagate
            for _ in executor.map(process_block, starts):
                pass

    return OrbitAnalysis(
        purity.reshape(shape),
        cycle_entry.reshape(shape),
        cycle_period.reshape(shape),
        classes.reshape(shape),
        final_states.reshape(shape + (4, )))


def julia_initial_states(grid, concurrence_sq):
    """ Initial states ζ₀ = w + (√C/|w|)·w·ȷ over the pixel centers w = x + ıy

    These have Co ζ₀ = w and |ζ₀ − Co ζ₀|² = C. At w = 0 the state is ȷ√C.

    :returns: Array of shape (ny, nx, 4).
    """
    x, y = grid.coordinates()
    root = np.sqrt(concurrence_sq)
    w_abs = np.hypot(x, y)
    aligned = w_abs > EPS_P
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(aligned, root / w_abs, 0.0)
    states = np.empty(grid.shape + (4, ))
    states[..., 0] = x
    states[..., 1] = y
    states[..., 2] = np.where(aligned, ratio * x, root)
    states[..., 3] = np.where(aligned, ratio * y, 0.0)
    return states


def resolve_options(options, iters):
    if options is None:
        options = ScanOptions()
    if iters is not None:
        options = options.replace(iters=iters)
    return options


def julia_scan(grid, slice_spec, system, iters=None, options=None):
    """ Classify the orbits of a plane of initial states

    :param grid: GridSpec over the complex part of the initial state.
    :param slice_spec: SliceSpec of kind 'initial-plane'.
    :param system: DephasingParams or DuParams.
    :param iters: Number of steps, overriding options.iters when given.
    :param options: ScanOptions, defaults are used when None.
    :rtype: ScanResult
    """
    if slice_spec.kind != INITIAL_PLANE:
        raise ValueError("A Julia-type scan needs an initial-plane slice, got %r" % slice_spec.kind)
    options = resolve_options(options, iters)
    initial = julia_initial_states(grid, slice_spec.concurrence_sq)
    with Timer(log, "Julia-type scan of %dx%d pixels" % (grid.nx, grid.ny)):
        analysis = analyse_orbits(initial, system, options)
    return ScanResult(grid, slice_spec, system, options, analysis)


def mandel_system(grid, slice_spec, system):
    """ The system with one parameter per pixel of a p-plane or q-plane

    Parameters are flattened in row-major pixel order.
    """
    x, y = grid.coordinates()
    if slice_spec.kind == P_PLANE:
        if not isinstance(system, DephasingParams):
            raise ValueError("A p-plane scan needs the dephasing family, got %r" % system)
        p = make_complex(x, y).ravel()
        return DephasingParams(system.alpha, system.beta, p, system.purify)
    if slice_spec.kind == Q_PLANE:
        if not isinstance(system, DuParams):
            raise ValueError("A q-plane scan needs the du family, got %r" % system)
        q = np.empty(grid.shape + (4, ))
        q[..., 0] = x
        q[..., 1] = y
        q[..., 2] = slice_spec.fixed_im2
        q[..., 3] = slice_spec.fixed_im3
        return DuParams(
            system.alpha, system.beta, system.gamma, q.reshape(-1, 4), system.purify, system.literal_inverse)
    raise ValueError("A Mandel-type scan needs a p-plane or q-plane slice, got %r" % slice_spec.kind)


def mandel_scan(grid, slice_spec, system, iters=None, options=None):
    """ Classify the orbit of ζ₀ = 0 over a plane of parameters

    :param grid: GridSpec over the complex part of p or q.
    :param slice_spec: SliceSpec of kind 'p-plane' (dephasing family) or 'q-plane' (du family).
    :param system: System holding the fixed parameters; its p or q is ignored.
    :param iters: Number of steps, overriding options.iters when given.
    :param options: ScanOptions, defaults are used when None.
    :rtype: ScanResult
    """
    options = resolve_options(options, iters)
    pixel_system = mandel_system(grid, slice_spec, system)
    initial = np.zeros(grid.shape + (4, ))
    with Timer(log, "Mandel-type scan of %dx%d pixels" % (grid.nx, grid.ny)):
        analysis = analyse_orbits(initial, pixel_system, options)
    return ScanResult(grid, slice_spec, pixel_system, options, analysis)
