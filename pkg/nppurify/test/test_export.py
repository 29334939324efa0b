"""Test writing PGM rasters, CSV tables and PLY point clouds"""

import numpy as np
import pytest

from nppurify.dynamics import DephasingParams, iterate
from nppurify.export.csv_export import (
    ORBIT_COLUMNS, PROFILE_COLUMNS, format_number, read_csv, write_csv, write_orbit, write_profile)
from nppurify.export.pgm_export import (
    ColorMap, class_colormap, cycle_colormap, purity_colormap, read_pgm, write_pgm)
from nppurify.export.ply_export import write_ply
from nppurify.fractal import BoxDimEstimate
from nppurify.quat import J


def test_purity_raster_bytes(tmp_path):
    path = str(tmp_path / "purity.pgm")

    write_pgm(np.array([[0.5, 1.0], [0.75, 0.5]]), purity_colormap(), path)

    with open(path, 'rb') as pgm_file:
        data = pgm_file.read()
    assert data == b"P5\n2 2\n255\n" + bytes([0, 255, 128, 0])


def test_large_raster_size(tmp_path):
    path = tmp_path / "large.pgm"

    write_pgm(np.full((256, 256), 0.9), purity_colormap(), str(path))

    assert path.stat().st_size == len(b"P5\n256 256\n255\n") + 65536


def test_raster_round_trip(tmp_path):
    path = str(tmp_path / "classes.pgm")
    classes = np.array([[0, 1, -1], [1, 1, 0]], dtype=np.int8)

    write_pgm(classes, class_colormap(), path)

    np.testing.assert_array_equal(read_pgm(path), [[0, 255, 128], [255, 255, 0]])


def test_empty_raster_raises(tmp_path):
    with pytest.raises(ValueError) as exc_info:
        write_pgm(np.zeros((0, 4)), purity_colormap(), str(tmp_path / "empty.pgm"))
    assert "empty raster" in str(exc_info.value)


def test_raster_must_be_two_dimensional(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(np.zeros(4), purity_colormap(), str(tmp_path / "line.pgm"))


def test_unwritable_path_raises_os_error(tmp_path):
    path = str(tmp_path / "missing" / "purity.pgm")

    with pytest.raises(OSError) as exc_info:
        write_pgm(np.ones((2, 2)), purity_colormap(), path)
    assert path in str(exc_info.value)


def test_color_maps():
    np.testing.assert_array_equal(cycle_colormap(100).levels([-1, 0, 50, 100]), [255, 0, 128, 255])
    np.testing.assert_array_equal(class_colormap().levels([-1, 0, 1]), [128, 0, 255])
    np.testing.assert_array_equal(purity_colormap().levels([np.nan, 0.2, 2.0]), [128, 0, 255])


def test_color_map_rejects_empty_domain():
    with pytest.raises(ValueError):
        ColorMap(1.0, 1.0)


def test_read_pgm_skips_comments(tmp_path):
    path = tmp_path / "comment.pgm"
    path.write_bytes(b"P5\n# written by hand\n2 1\n255\n\x07\xfe")

    np.testing.assert_array_equal(read_pgm(str(path)), [[7, 254]])


@pytest.mark.parametrize("data", [
    b"P2\n2 1\n255\n0 0\n",
    b"P5\n2 1\n65535\n\x00\x00\x00\x00",
    b"P5\n4 4\n255\n\x00",
    b"P5\n2",
])
def test_read_pgm_rejects_invalid_files(tmp_path, data):
    path = tmp_path / "invalid.pgm"
    path.write_bytes(data)

    with pytest.raises(ValueError):
        read_pgm(str(path))


@pytest.mark.parametrize("value,expected", [
    (1.0, "1"),
    (0.1, "0.1"),
    (-2.5, "-2.5"),
    (-0.0, "0"),
    (1e-05, "1e-05"),
    (1e20, "1e+20"),
    (3, "3"),
])
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_format_number_round_trips():
    values = np.random.RandomState(300).standard_cauchy(1000)

    for value in values:
        assert float(format_number(value)) == value


def test_orbit_csv(tmp_path):
    path = str(tmp_path / "orbit.csv")
    orbit = iterate(J, DephasingParams(0.0, 0.01, 1 + 0.1j), 3)

    write_orbit(orbit, path)

    with open(path, newline='') as csv_file:
        lines = csv_file.read().split('\n')
    assert lines[0] == ",".join(ORBIT_COLUMNS)
    assert len(lines) == 6
    assert lines[-1] == ""
    columns = read_csv(path)
    np.testing.assert_array_equal(columns['n'], [0, 1, 2, 3])
    np.testing.assert_allclose(columns['purity'], 0.5)
    np.testing.assert_allclose(columns['c'], orbit.states[:, 2])


def test_empty_table_has_header_only(tmp_path):
    path = tmp_path / "empty.csv"

    write_csv([], ORBIT_COLUMNS, str(path))

    assert path.read_text() == "n,a,b,c,d,population,coherence,purity\n"


def test_profile_csv(tmp_path):
    path = str(tmp_path / "profile.csv")
    profile = [
        (0.0, BoxDimEstimate(np.array([2, 4]), np.array([10, 5]), 1.25, 0.99, (2, 4), 40)),
        (0.5, BoxDimEstimate.empty(3)),
    ]

    write_profile(profile, path)

    columns = read_csv(path)
    assert tuple(columns.keys()) == PROFILE_COLUMNS
    np.testing.assert_array_equal(columns['dimension'], [1.25, 0.0])
    np.testing.assert_array_equal(columns['concurrence_sq'], [0.0, 0.5])


def test_ply_single_point(tmp_path):
    path = tmp_path / "bulb.ply"

    write_ply(np.array([[1.0, 0.0, -1.0]]), str(path))

    assert path.read_text() == (
        "ply\n"
        "format ascii 1.0\n"
        "element vertex 1\n"
        "property float x\n"
        "property float y\n"
        "property float z\n"
        "end_header\n"
        "1 0 -1\n")


def test_ply_empty_cloud(tmp_path):
    path = tmp_path / "empty.ply"

    write_ply(np.zeros((0, 3)), str(path))

    lines = path.read_text().split('\n')
    assert "element vertex 0" in lines
    assert lines[-2] == "end_header"


def test_ply_rejects_non_finite_points(tmp_path):
    with pytest.raises(ValueError):
        write_ply(np.array([[np.nan, 0.0, 0.0]]), str(tmp_path / "bad.ply"))
