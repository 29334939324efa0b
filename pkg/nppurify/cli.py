""" Command line tool with one subcommand per workflow

    nppurify orbit    time series of one orbit (CSV)
    nppurify julia    scan of a plane of initial states (PGM rasters)
    nppurify mandel   scan of a plane of p or q parameters (PGM rasters)
    nppurify bulb     border in embedding coordinates (PLY point cloud)
    nppurify boxdim   box-counting dimension of a PGM raster
    nppurify dimscan  dimension of the border against squared concurrence (CSV)

Exit status is 0 on success, 2 for invalid arguments and 1 for runtime errors.
"""

from argparse import ArgumentParser, ArgumentTypeError
import logging
import sys

from nppurify import dynamics, fractal, scan
from nppurify.export import csv_export, pgm_export, ply_export
from nppurify.log import log_manager
from nppurify.qubit_state import HamiltonianSpec, PolarState, from_polar
from nppurify.utils import parse_components


log = log_manager.get_logger(__name__)

CYCLE_METRICS = {
    'quat': dynamics.QUATERNION_METRIC,
    'rho': dynamics.DENSITY_MATRIX_METRIC,
}

SYSTEMS = ('dephasing', 'du')

DEFAULT_VALUES = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"

_TRUE = ('yes', 'true', 'on', '1')
_FALSE = ('no', 'false', 'off', '0')


def _parse_bool(text):
    value = text.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ArgumentTypeError("invalid boolean %r, expected yes or no" % text)


def _components(count, name):
    def parse(text):
        try:
            return parse_components(text, count, name)
        except ValueError as error:
            raise ArgumentTypeError(str(error))
    parse.__name__ = name
    return parse


def _value_list(text):
    try:
        return parse_components(text, name="value list")
    except ValueError as error:
        raise ArgumentTypeError(str(error))


def _resolution(text):
    try:
        values = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ArgumentTypeError("invalid resolution %r, expected comma separated integers" % text)
    if any(value < 2 for value in values):
        raise ArgumentTypeError("invalid resolution %r, every size must be at least 2" % text)
    return values


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError("invalid integer %r" % text)
    if value < 1:
        raise ArgumentTypeError("expected a positive integer, got %r" % text)
    return value


def _add_common_arguments(parser):
    parser.add_argument(
        '--config', metavar='PATH',
        help="File of 'key = value' lines used as defaults for this command.")
    parser.add_argument(
        '-d', '--debug', action="store_true",
        help="Print debugging information to stderr.")
    parser.add_argument(
        '-v', '--verbose', action="store_true",
        help="Print progress and timing information to stderr.")


def _add_system_arguments(parser):
    parser.add_argument(
        '--system', choices=SYSTEMS, default='dephasing',
        help="Family of maps: dephasing (d∘u∘s) or du (p∘du∘s). Default: %(default)s")
    parser.add_argument(
        '--alpha', type=float, default=0.0,
        help="Phase α of the evolution. Default: %(default)s")
    parser.add_argument(
        '--beta', type=float, default=0.01,
        help="Dephasing rate β, or the ȷ angle of the du map. Default: %(default)s")
    parser.add_argument(
        '--gamma', type=float, default=0.0,
        help="k angle γ of the du map. Default: %(default)s")
    parser.add_argument(
        '--p', type=_components(2, "p"), default="1,0.1", metavar='RE,IM',
        help="Complex parameter p of the dephasing family. Default: %(default)s")
    parser.add_argument(
        '--q', type=_components(4, "q"), default="1,0,0,0.1", metavar='A,B,C,D',
        help="Quaternion parameter q of the du family. Default: %(default)s")
    parser.add_argument(
        '--hamiltonian', type=_components(4, "hamiltonian"), default=None, metavar='OMEGA,BRE,BIM,DT',
        help="Derive α and p from H = ω/2 σz + Re(b) σx + Im(b) σy and a time step (dephasing family).")
    parser.add_argument(
        '--purify', type=_parse_bool, default=True, metavar='YES|NO',
        help="Apply the purification step. Default: yes")
    parser.add_argument(
        '--literal-inverse', type=_parse_bool, default=False, metavar='YES|NO',
        help="Use e^{-kγ}e^{-ȷγ}e^{-ıα} in the du denominator. Default: no")


def _add_analysis_arguments(parser):
    parser.add_argument(
        '--iters', type=int, default=dynamics.DEFAULT_ITERS,
        help="Number of steps N. Default: %(default)s")
    parser.add_argument(
        '--cycle-max-period', type=_positive_int, default=dynamics.DEFAULT_MAX_PERIOD,
        help="Largest cycle period detected. Default: %(default)s")
    parser.add_argument(
        '--cycle-tol', type=float, default=dynamics.DEFAULT_CYCLE_TOL,
        help="Return tolerance of the cycle detection. Default: %(default)s")
    parser.add_argument(
        '--cycle-metric', choices=sorted(CYCLE_METRICS), default='quat',
        help="Distance between states: quaternion or density matrix. Default: %(default)s")
    parser.add_argument(
        '--classify-window', type=_positive_int, default=dynamics.DEFAULT_WINDOW,
        help="Number of final steps averaged by the classification. Default: %(default)s")
    parser.add_argument(
        '--threshold', type=float, default=dynamics.DEFAULT_THRESHOLD,
        help="Mean purity from which purification wins. Default: %(default)s")


def _add_scan_arguments(parser, resolution):
    parser.add_argument(
        '--window', type=_components(4, "window"), default="-2,2,-2,2", metavar='XMIN,XMAX,YMIN,YMAX',
        help="Scanned window. Default: %(default)s")
    parser.add_argument(
        '--resolution', type=_resolution, default=resolution,
        help="Number of pixels along each axis. Default: %(default)s")
    parser.add_argument(
        '--threads', type=_positive_int, default=None,
        help="Number of worker threads. Default: all cores")


def build_parser():
    """ Create the argument parser

    :returns: The parser and a dictionary from subcommand name to its subparser.
    """
    parser = ArgumentParser(
        prog='nppurify',
        description="Competition between purification and decoherence of a qubit.")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    commands = {}

    orbit = subparsers.add_parser('orbit', help="Write the time series of one orbit as CSV.")
    _add_system_arguments(orbit)
    _add_analysis_arguments(orbit)
    orbit.add_argument(
        '--z0', type=_components(2, "z0"), default="1,0", metavar='RE,IM',
        help="Complex coordinate of the initial state. Default: %(default)s")
    orbit.add_argument(
        '--lambda0', type=float, default=0.0,
        help="Mixing angle of the initial state. Default: %(default)s")
    orbit.add_argument('--out', default='orbit.csv', help="Output CSV file. Default: %(default)s")
    commands['orbit'] = orbit

    julia = subparsers.add_parser('julia', help="Scan a plane of initial states.")
    _add_system_arguments(julia)
    _add_analysis_arguments(julia)
    _add_scan_arguments(julia, "256,256")
    julia.add_argument(
        '--concurrence-sq', type=float, default=0.01,
        help="Squared concurrence |ζ0 - Co ζ0|² of the initial states. Default: %(default)s")
    julia.add_argument(
        '--out', default='julia',
        help="Prefix of the _purity, _cycles and _classes PGM files. Default: %(default)s")
    commands['julia'] = julia

    mandel = subparsers.add_parser('mandel', help="Scan a plane of p (dephasing) or q (du) parameters.")
    _add_system_arguments(mandel)
    _add_analysis_arguments(mandel)
    _add_scan_arguments(mandel, "256,256")
    mandel.add_argument(
        '--q-im2', type=float, default=0.0, help="Fixed Im2(q) of a q-plane. Default: %(default)s")
    mandel.add_argument(
        '--q-im3', type=float, default=0.1, help="Fixed Im3(q) of a q-plane. Default: %(default)s")
    mandel.add_argument(
        '--out', default='mandel',
        help="Prefix of the _purity, _cycles and _classes PGM files. Default: %(default)s")
    commands['mandel'] = mandel

    bulb = subparsers.add_parser('bulb', help="Write the border in embedding coordinates as a PLY point cloud.")
    _add_system_arguments(bulb)
    _add_analysis_arguments(bulb)
    _add_scan_arguments(bulb, "64,64,64")
    bulb.add_argument(
        '--zrange', type=_components(2, "zrange"), default="-2,0", metavar='ZMIN,ZMAX',
        help="Range of Z = -|ζ - Co ζ|. Default: %(default)s")
    bulb.add_argument('--out', default='bulb.ply', help="Output PLY file. Default: %(default)s")
    commands['bulb'] = bulb

    boxdim = subparsers.add_parser('boxdim', help="Estimate the box-counting dimension of a PGM raster.")
    boxdim.add_argument('raster', help="PGM file to read.")
    boxdim.add_argument(
        '--extract-boundary', type=_parse_bool, default=True, metavar='YES|NO',
        help="Measure the border between gray levels rather than the pixels at --level. Default: yes")
    boxdim.add_argument(
        '--level', type=int, default=255,
        help="Gray level of the marked pixels without boundary extraction. Default: %(default)s")
    boxdim.add_argument(
        '--scheme', choices=fractal.BOX_SCHEMES, default=fractal.DYADIC_SCHEME,
        help="Box sizes fitted: all middle dyadic sizes, or only those fitting eight times along "
             "the marked set. Default: %(default)s")
    boxdim.add_argument('--out', default=None, help="Optional CSV file of the box counts.")
    commands['boxdim'] = boxdim

    dimscan = subparsers.add_parser(
        'dimscan', help="Write the border dimension against squared concurrence as CSV.")
    _add_system_arguments(dimscan)
    _add_analysis_arguments(dimscan)
    _add_scan_arguments(dimscan, "256,256")
    dimscan.add_argument(
        '--values', type=_value_list, default=DEFAULT_VALUES,
        help="Squared concurrences of the slices. Default: %(default)s")
    dimscan.add_argument(
        '--scheme', choices=fractal.BOX_SCHEMES, default=fractal.EXTENT_SCHEME,
        help="Box-counting scheme, see boxdim. Default: %(default)s")
    dimscan.add_argument('--out', default='dimscan.csv', help="Output CSV file. Default: %(default)s")
    commands['dimscan'] = dimscan

    for subparser in commands.values():
        _add_common_arguments(subparser)
    return parser, commands


def read_config(path):
    """ Read 'key = value' lines, ignoring blank lines and '#' comments

    Keys may be written with '-' or '_'.

    :rtype: dict from argument destination to the value string
    """
    values = {}
    with open(path) as config_file:
        for number, line in enumerate(config_file, 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ValueError("%s:%d: expected 'key = value'" % (path, number))
            key, value = (part.strip() for part in line.split('=', 1))
            values[key.replace('-', '_')] = value
    return values


def _find_command(argv, commands):
    for arg in argv:
        if arg in commands:
            return arg
    return None


def parse_args(argv):
    """ Parse the command line, applying defaults from a --config file first

    :raises SystemExit: with status 2 on invalid arguments, 0 after --help.
    """
    parser, commands = build_parser()
    pre_parser = ArgumentParser(add_help=False)
    pre_parser.add_argument('--config')
    pre_args, _ = pre_parser.parse_known_args(argv)
    command = _find_command(argv, commands)
    if pre_args.config is not None and command is not None:
        subparser = commands[command]
        try:
            values = read_config(pre_args.config)
        except (OSError, ValueError) as error:
            subparser.error("could not read config file: %s" % error)
        actions = dict((action.dest, action) for action in subparser._actions)
        unknown = sorted(set(values) - set(actions) - {'config', 'help'})
        if unknown:
            subparser.error("unknown keys in config file %s: %s" % (pre_args.config, ", ".join(unknown)))
        for key, value in values.items():
            action = actions[key]
            try:
                if action.type is None and isinstance(action.default, bool):
                    values[key] = converted = _parse_bool(value)
                elif action.type is None:
                    converted = value
                else:
                    converted = action.type(value)
            except (ArgumentTypeError, TypeError, ValueError) as error:
                subparser.error("invalid value %r for %s in config file %s: %s" % (
                    value, key, pre_args.config, error))
            if action.choices is not None and converted not in action.choices:
                subparser.error("invalid value %r for %s in config file %s (choose from %s)" % (
                    value, key, pre_args.config, ", ".join(map(str, action.choices))))
        # String defaults go through the argument types again when parsing
        subparser.set_defaults(**values)
    return parser.parse_args(argv)


def build_system(args):
    """ The system described by the parsed arguments

    :raises ValueError: for inconsistent combinations of arguments.
    """
    if args.system == 'dephasing':
        if args.hamiltonian is not None:
            omega, b_re, b_im, dt = args.hamiltonian
            hamiltonian = HamiltonianSpec(omega, complex(b_re, b_im), dt)
            log.info("Hamiltonian step gives alpha=%g, p=%r", hamiltonian.alpha, hamiltonian.p)
            return dynamics.DephasingParams.from_hamiltonian(hamiltonian, args.beta, args.purify)
        return dynamics.DephasingParams(args.alpha, args.beta, complex(*args.p), args.purify)
    if args.system != 'du':
        raise ValueError("Unknown system %r, expected one of %s" % (args.system, ", ".join(SYSTEMS)))
    if args.hamiltonian is not None:
        raise ValueError("--hamiltonian applies to the dephasing family only, not to --system du")
    return dynamics.DuParams(args.alpha, args.beta, args.gamma, args.q, args.purify, args.literal_inverse)


def build_options(args):
    return scan.ScanOptions(
        iters=args.iters, max_period=args.cycle_max_period, cycle_tol=args.cycle_tol,
        metric=CYCLE_METRICS[args.cycle_metric], window=args.classify_window,
        threshold=args.threshold, threads=getattr(args, 'threads', None))


def build_grid(args):
    x_min, x_max, y_min, y_max = args.window
    resolution = args.resolution
    if len(resolution) == 1:
        resolution = resolution * 2
    if len(resolution) != 2:
        raise ValueError("A plane needs a resolution of one or two sizes, got %r" % (resolution, ))
    nx, ny = resolution
    return scan.GridSpec(x_min, x_max, y_min, y_max, nx, ny)


def build_volume(args):
    x_min, x_max, y_min, y_max = args.window
    z_min, z_max = args.zrange
    resolution = args.resolution
    if len(resolution) == 1:
        resolution = resolution * 3
    if len(resolution) != 3:
        raise ValueError("A volume needs a resolution of one or three sizes, got %r" % (resolution, ))
    nx, ny, nz = resolution
    return fractal.VolumeSpec(x_min, x_max, y_min, y_max, z_min, z_max, nx, ny, nz)


def write_scan_rasters(result, prefix):
    """ Write the purity, cycle entry and class rasters of a scan as PGM files
    """
    pgm_export.write_pgm(result.purity, pgm_export.purity_colormap(), prefix + "_purity.pgm")
    pgm_export.write_pgm(
        result.cycle_entry, pgm_export.cycle_colormap(result.options.iters), prefix + "_cycles.pgm")
    pgm_export.write_pgm(result.classes, pgm_export.class_colormap(), prefix + "_classes.pgm")


def run_orbit(args):
    system = build_system(args)
    if args.iters < args.cycle_max_period:
        raise ValueError("--iters must be at least --cycle-max-period")
    zeta0 = from_polar(PolarState(complex(*args.z0), args.lambda0))
    orbit = dynamics.iterate(zeta0, system, args.iters)
    csv_export.write_orbit(orbit, args.out)
    report = dynamics.detect_cycle(
        orbit, args.cycle_max_period, args.cycle_tol, CYCLE_METRICS[args.cycle_metric])
    display("cycle: %s" % _describe_cycle(report))
    regime = dynamics.classify(orbit, args.classify_window, args.threshold)
    display("regime: %s" % regime.name.lower())
    if orbit.diverged:
        display("absorbed at step %d" % orbit.diverged_at)


def _describe_cycle(report):
    if not report.found:
        return "none"
    return "period %d entered after %d steps" % (report.period, report.entry_index)


def run_julia(args):
    system = build_system(args)
    result = scan.julia_scan(
        build_grid(args), scan.SliceSpec.initial_plane(args.concurrence_sq), system,
        options=build_options(args))
    write_scan_rasters(result, args.out)
    display("purification fraction: %.4f" % result.purification_fraction())


def run_mandel(args):
    system = build_system(args)
    if args.system == 'dephasing':
        slice_spec = scan.SliceSpec.p_plane()
    else:
        slice_spec = scan.SliceSpec.q_plane(args.q_im2, args.q_im3)
    result = scan.mandel_scan(build_grid(args), slice_spec, system, options=build_options(args))
    write_scan_rasters(result, args.out)
    display("purification fraction: %.4f" % result.purification_fraction())


def run_bulb(args):
    system = build_system(args)
    result = fractal.bulb_scan(build_volume(args), system, options=build_options(args))
    ply_export.write_ply(result.points, args.out)
    display("border voxels: %d" % len(result))


def run_boxdim(args):
    raster = pgm_export.read_pgm(args.raster)
    if args.extract_boundary:
        marks = fractal.extract_boundary(raster)
    else:
        marks = raster == args.level
    estimate = fractal.box_dim(marks, scheme=args.scheme)
    if args.out is not None:
        csv_export.write_csv(zip(estimate.scales, estimate.counts), ('scale', 'count'), args.out)
    display("dimension: %.6f" % estimate.dimension)
    display("r2: %.6f" % estimate.r2)
    display("scales used: %d to %d" % estimate.range_used)
    display("marked pixels: %d" % estimate.num_points)


def run_dimscan(args):
    system = build_system(args)
    if any(value < 0.0 for value in args.values):
        raise ValueError("Squared concurrences must be non-negative")
    profile = fractal.dim_profile(
        system, build_grid(args), args.values, options=build_options(args), scheme=args.scheme)
    csv_export.write_profile(profile, args.out)
    for value, estimate in profile:
        flag = " (degenerate)" if estimate.degenerate else ""
        display("%g: %.4f%s" % (value, estimate.dimension, flag))


COMMANDS = {
    'orbit': run_orbit,
    'julia': run_julia,
    'mandel': run_mandel,
    'bulb': run_bulb,
    'boxdim': run_boxdim,
    'dimscan': run_dimscan,
}


def display(s):
    print(s)


def run(argv=None):
    """ Run the tool with a list of arguments

    :returns: Exit status.
    """
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parse_args(argv)
    except SystemExit as exit_error:
        return exit_error.code if isinstance(exit_error.code, int) else 2

    if args.debug:
        log_manager.set_level(logging.DEBUG)
    elif args.verbose:
        log_manager.set_level(logging.INFO)

    try:
        COMMANDS[args.command](args)
    except ValueError as error:
        log.error("%s", error)
        return 2
    except (OSError, ArithmeticError, RuntimeError) as error:
        log.error("%s", error)
        return 1
    return 0


def main():
    sys.exit(run())
