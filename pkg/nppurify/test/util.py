""" Utilities for testing the quaternion dynamics
"""

import numpy as np

from nppurify.quat import Quaternion
from nppurify.qubit_state import from_polar_array


def random_quaternions(random_state, count, scale=3.0):
    """ Quaternions with components uniform in [-scale, scale], shape (count, 4)
    """
    return random_state.uniform(-scale, scale, size=(count, 4))


def aligned_states(random_state, count, lambda_range=(0.2, 1.3), modulus_range=(0.2, 3.0)):
    """ Aligned mixed states z e^{ȷλ} with λ inside lambda_range, shape (count, 4)
    """
    modulus = random_state.uniform(*modulus_range, size=count)
    phase = random_state.uniform(-np.pi, np.pi, size=count)
    mixing = random_state.uniform(*lambda_range, size=count)
    z = modulus * np.exp(1j * phase)
    return from_polar_array(z, np.cos(mixing), np.sin(mixing))


def assert_quaternion_close(actual, expected, tol=1e-12):
    actual = Quaternion.coerce(actual)
    expected = Quaternion.coerce(expected)
    assert actual.is_close(expected, tol), "%r != %r" % (actual, expected)


def diagonal_raster(size=1024):
    """ A straight segment of marked pixels along the main diagonal
    """
    return np.eye(size, dtype=bool)


def rectangle_raster(size=1024, height=768):
    raster = np.zeros((size, size), dtype=bool)
    raster[:height, :] = True
    return raster


def sierpinski_carpet(depth):
    """ Boolean Sierpinski carpet of side 3**depth
    """
    pattern = np.ones((3, 3), dtype=bool)
    pattern[1, 1] = False
    carpet = np.ones((1, 1), dtype=bool)
    for _ in range(depth):
        carpet = np.kron(pattern, carpet).astype(bool)
    return carpet


def embed_in_raster(pattern, size=1024):
    raster = np.zeros((size, size), dtype=bool)
    raster[:pattern.shape[0], :pattern.shape[1]] = pattern
    return raster


def half_plane_classes(shape=(64, 64), column=20):
    """ Class raster with decoherence left of a column and purification from it on
    """
    classes = np.zeros(shape, dtype=np.int8)
    classes[:, column:] = 1
    return classes


def compare_arrays(actual_data, expected_data):
    assert len(actual_data) == len(expected_data)
    for (actual, expected) in zip(actual_data, expected_data):
        assert actual == expected
