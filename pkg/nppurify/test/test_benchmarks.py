import numpy as np
import pytest

from nppurify.dynamics import DephasingParams, DuParams, iterate_states
from nppurify.fractal import box_dim, extract_boundary
from nppurify.scan import GridSpec, ScanOptions, SliceSpec, julia_scan
from nppurify.test.util import embed_in_raster, random_quaternions, sierpinski_carpet


@pytest.mark.benchmark(group='iterate')
def test_iterate_dephasing_family(benchmark):
    """ Benchmark iterating a block of orbits of the dephasing family
    """
    initial = random_quaternions(np.random.RandomState(400), 4096, scale=2.0)

    states, diverged_at = benchmark(iterate_states, initial, DephasingParams(), 50)

    assert states.shape == (51, 4096, 4)
    assert diverged_at.shape == (4096, )


@pytest.mark.benchmark(group='iterate')
def test_iterate_du_family(benchmark):
    """ Benchmark iterating a block of orbits of the du family
    """
    initial = random_quaternions(np.random.RandomState(401), 4096, scale=2.0)

    states, _ = benchmark(iterate_states, initial, DuParams(), 50)

    assert states.shape == (51, 4096, 4)


@pytest.mark.benchmark(group='scan')
def test_julia_scan(benchmark):
    """ Benchmark a small Julia-type scan on a single thread
    """
    grid = GridSpec(nx=64, ny=64)
    options = ScanOptions(iters=50, threads=1)

    result = benchmark(julia_scan, grid, SliceSpec.initial_plane(0.01), DephasingParams(), options=options)

    assert result.classes.shape == (64, 64)


@pytest.mark.benchmark(group='fractal')
def test_box_dim(benchmark):
    """ Benchmark box counting on a 1024x1024 raster
    """
    raster = embed_in_raster(sierpinski_carpet(6))

    estimate = benchmark(box_dim, raster)

    assert estimate.num_points == 8 ** 6


@pytest.mark.benchmark(group='fractal')
def test_extract_boundary(benchmark):
    """ Benchmark border extraction on a 1024x1024 class raster
    """
    classes = embed_in_raster(sierpinski_carpet(6)).astype(np.int8)

    boundary = benchmark(extract_boundary, classes)

    assert boundary.any()
