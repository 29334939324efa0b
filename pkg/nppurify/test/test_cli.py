"""Test the nppurify command line tool"""

import argparse
import logging
import numpy as np
import pytest

from nppurify import cli, scan
from nppurify.export.csv_export import read_csv
from nppurify.export.pgm_export import class_colormap, read_pgm, write_pgm
from nppurify.log import log_manager
from nppurify.test.util import half_plane_classes


@pytest.fixture
def reset_log_level():
    yield
    log_manager.set_level(logging.WARNING)


def test_orbit_of_du_map(tmp_path, capsys):
    path = str(tmp_path / "orbit.csv")

    status = cli.run([
        'orbit', '--system', 'du', '--alpha', '0.1', '--beta', '0', '--q', '1,0,0,1',
        '--purify', 'no', '--z0', '1,0', '--iters', '100', '--out', path])

    assert status == 0
    columns = read_csv(path)
    assert len(columns['n']) == 101
    assert np.all(columns['purity'] >= 0.5 - 1e-12)
    output = capsys.readouterr().out
    assert "cycle: " in output
    assert "regime: " in output


def test_orbit_of_maximally_mixed_state(tmp_path, capsys):
    path = str(tmp_path / "orbit.csv")

    status = cli.run([
        'orbit', '--z0', '1,0', '--lambda0', repr(np.pi / 2), '--iters', '20', '--out', path])

    assert status == 0
    output = capsys.readouterr().out
    assert "cycle: period 2 entered after 2 steps" in output
    assert "regime: decoherence" in output


def test_orbit_with_density_matrix_metric(tmp_path, capsys):
    path = str(tmp_path / "orbit.csv")

    status = cli.run([
        'orbit', '--z0', '1,0', '--lambda0', repr(np.pi / 2), '--iters', '20',
        '--cycle-metric', 'rho', '--out', path])

    assert status == 0
    assert "cycle: period 1 entered after 0 steps" in capsys.readouterr().out


def test_julia_writes_three_rasters(tmp_path, capsys):
    prefix = str(tmp_path / "julia")

    status = cli.run(['julia', '--resolution', '16,12', '--iters', '20', '--out', prefix])

    assert status == 0
    for suffix in ('_purity.pgm', '_cycles.pgm', '_classes.pgm'):
        raster = read_pgm(prefix + suffix)
        assert raster.shape == (12, 16)
    assert (tmp_path / "julia_purity.pgm").stat().st_size == len(b"P5\n16 12\n255\n") + 192
    assert "purification fraction: " in capsys.readouterr().out


def test_rasters_do_not_depend_on_thread_count(tmp_path, monkeypatch):
    monkeypatch.setattr(scan, 'BLOCK_SIZE', 40)
    arguments = ['julia', '--resolution', '20,20', '--iters', '25', '--concurrence-sq', '0.25']

    assert cli.run(arguments + ['--threads', '1', '--out', str(tmp_path / "serial")]) == 0
    assert cli.run(arguments + ['--threads', '3', '--out', str(tmp_path / "parallel")]) == 0

    for suffix in ('_purity.pgm', '_cycles.pgm', '_classes.pgm'):
        serial = (tmp_path / ("serial" + suffix)).read_bytes()
        parallel = (tmp_path / ("parallel" + suffix)).read_bytes()
        assert serial == parallel


def test_mandel_q_plane(tmp_path):
    prefix = str(tmp_path / "mandel")

    status = cli.run([
        'mandel', '--system', 'du', '--alpha', '0.1', '--beta', '0', '--resolution', '8',
        '--iters', '10', '--out', prefix])

    assert status == 0
    assert read_pgm(prefix + "_classes.pgm").shape == (8, 8)


def test_bulb_writes_point_cloud(tmp_path, capsys):
    path = tmp_path / "bulb.ply"

    status = cli.run(['bulb', '--resolution', '6,6,4', '--iters', '10', '--out', str(path)])

    assert status == 0
    lines = path.read_text().split('\n')
    assert lines[:2] == ["ply", "format ascii 1.0"]
    count = int(lines[2].split()[-1])
    assert len(lines) == 7 + count + 1
    assert ("border voxels: %d" % count) in capsys.readouterr().out


def test_boxdim_of_straight_border(tmp_path, capsys):
    raster_path = str(tmp_path / "classes.pgm")
    counts_path = str(tmp_path / "counts.csv")
    write_pgm(half_plane_classes((64, 64), 20), class_colormap(), raster_path)

    status = cli.run(['boxdim', raster_path, '--out', counts_path])

    assert status == 0
    output = capsys.readouterr().out
    assert "dimension: 1.000000" in output
    assert "marked pixels: 64" in output
    columns = read_csv(counts_path)
    np.testing.assert_array_equal(columns['scale'], [2, 4, 8, 16])
    np.testing.assert_array_equal(columns['count'], [32, 16, 8, 4])


def test_boxdim_with_extent_scheme(tmp_path, capsys):
    raster_path = str(tmp_path / "classes.pgm")
    classes = np.zeros((256, 256), dtype=np.int8)
    classes[10:106, 10:106] = 1
    write_pgm(classes, class_colormap(), raster_path)

    status = cli.run(['boxdim', raster_path, '--scheme', 'extent'])

    assert status == 0
    assert "scales used: 4 to 8" in capsys.readouterr().out


def test_boxdim_of_level_set(tmp_path, capsys):
    raster_path = str(tmp_path / "classes.pgm")
    write_pgm(half_plane_classes((64, 64), 20), class_colormap(), raster_path)

    status = cli.run(['boxdim', raster_path, '--extract-boundary', 'no', '--level', '255'])

    assert status == 0
    assert "marked pixels: %d" % (64 * 44) in capsys.readouterr().out


def test_dimscan_of_single_regime(tmp_path, capsys):
    path = str(tmp_path / "dimscan.csv")

    status = cli.run([
        'dimscan', '--beta', '0', '--p', '0,0', '--values', '0,0.5', '--resolution', '32',
        '--iters', '30', '--out', path])

    assert status == 0
    columns = read_csv(path)
    np.testing.assert_array_equal(columns['concurrence_sq'], [0.0, 0.5])
    np.testing.assert_array_equal(columns['dimension'], [0.0, 0.0])
    assert "(degenerate)" in capsys.readouterr().out


@pytest.mark.parametrize("arguments", [
    [],
    ['julia', '--bogus'],
    ['julia', '--resolution', '1,1'],
    ['julia', '--system', 'lindblad'],
    ['orbit', '--p', '1'],
    ['orbit', '--purify', 'maybe'],
    ['orbit', '--system', 'du', '--hamiltonian', '1,1,0,0.1'],
    ['orbit', '--iters', '3'],
    ['julia', '--resolution', '4,4,4'],
    ['dimscan', '--values', '-0.5', '--resolution', '8'],
    ['boxdim', 'classes.pgm', '--scheme', 'ternary'],
])
def test_invalid_arguments_exit_with_status_2(tmp_path, arguments):
    assert cli.run(arguments + ['--out', str(tmp_path / "out")] if arguments else arguments) == 2


def test_unwritable_output_exits_with_status_1(tmp_path):
    path = str(tmp_path / "missing" / "orbit.csv")

    assert cli.run(['orbit', '--iters', '10', '--out', path]) == 1


def test_help_lists_defaults(capsys):
    assert cli.run(['julia', '--help']) == 0

    output = capsys.readouterr().out
    assert "--cycle-tol" in output
    assert "0.0001" in output
    assert "--classify-window" in output


def test_config_file_sets_defaults(tmp_path):
    config = tmp_path / "orbit.cfg"
    config.write_text("# orbit settings\niters = 12\ncycle-max-period = 3\npurify = no\n")
    path = str(tmp_path / "orbit.csv")

    assert cli.run(['orbit', '--config', str(config), '--out', path]) == 0
    assert len(read_csv(path)['n']) == 13

    assert cli.run(['orbit', '--config', str(config), '--iters', '15', '--out', path]) == 0
    assert len(read_csv(path)['n']) == 16


def test_config_file_with_unknown_key(tmp_path):
    config = tmp_path / "orbit.cfg"
    config.write_text("iterations = 12\n")

    assert cli.run(['orbit', '--config', str(config), '--out', str(tmp_path / "orbit.csv")]) == 2


@pytest.mark.parametrize("setting", [
    "system = dephasingg",
    "cycle_metric = euclid",
    "cycle-max-period = 0",
    "iters = many",
    "purify = maybe",
])
def test_config_file_with_invalid_value(tmp_path, setting):
    config = tmp_path / "orbit.cfg"
    config.write_text(setting + "\n")
    path = tmp_path / "orbit.csv"

    assert cli.run(['orbit', '--config', str(config), '--iters', '20', '--out', str(path)]) == 2
    assert not path.exists()


def test_config_file_selects_choices(tmp_path, capsys):
    config = tmp_path / "orbit.cfg"
    config.write_text("system = du\ncycle-metric = rho\n")
    path = str(tmp_path / "orbit.csv")

    assert cli.run(['orbit', '--config', str(config), '--iters', '20', '--out', path]) == 0
    assert "cycle: " in capsys.readouterr().out


def test_build_system_rejects_unknown_family():
    args = argparse.Namespace(system='lindblad', hamiltonian=None)

    with pytest.raises(ValueError):
        cli.build_system(args)


def test_missing_config_file(tmp_path):
    config = str(tmp_path / "missing.cfg")

    assert cli.run(['orbit', '--config', config, '--out', str(tmp_path / "orbit.csv")]) == 2


def test_debug_logging(tmp_path, caplog, reset_log_level):
    path = str(tmp_path / "orbit.csv")

    with caplog.at_level(logging.DEBUG):
        assert cli.run(['orbit', '--debug', '--iters', '10', '--out', path]) == 0

    assert "Iterated 1 orbits for 10 steps" in caplog.text


def test_hamiltonian_arguments(tmp_path, capsys):
    path = str(tmp_path / "orbit.csv")

    status = cli.run(['orbit', '--hamiltonian', '1,1,0,0.1', '--iters', '10', '--out', path])

    assert status == 0
    assert len(read_csv(path)['n']) == 11
