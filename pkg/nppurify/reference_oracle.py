""" Density matrix implementation of the purification, evolution and dephasing steps

This module works directly with 2×2 matrices and does not import any of the
quaternion code, so it can be used as an independent reference when testing
the quaternion maps.
"""

import numpy as np


VALIDITY_TOL = 1e-12


class DensityMatrix(object):
    """ A qubit density matrix [[rho00, rho01], [conj(rho01), rho11]]

    :ivar rho00: Population of ``|0>``
    :ivar rho01: Off-diagonal (coherence) entry
    :ivar rho11: Population of ``|1>``
    """

    def __init__(self, rho00, rho01, rho11):
        self.rho00 = float(rho00)
        self.rho01 = complex(rho01)
        self.rho11 = float(rho11)

    @staticmethod
    def from_matrix(matrix):
        """ Build a density matrix from a 2×2 array, symmetrising the off-diagonal entries
        """
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise ValueError("Expected a 2x2 matrix, got shape %r" % (matrix.shape, ))
        rho01 = 0.5 * (matrix[0, 1] + np.conj(matrix[1, 0]))
        return DensityMatrix(matrix[0, 0].real, rho01, matrix[1, 1].real)

    @staticmethod
    def maximally_mixed():
        return DensityMatrix(0.5, 0.0, 0.5)

    @property
    def rho10(self):
        return self.rho01.conjugate()

    def as_matrix(self):
        return np.array([
            [self.rho00, self.rho01],
            [self.rho10, self.rho11]], dtype=np.complex128)

    def trace(self):
        return self.rho00 + self.rho11

    def determinant(self):
        return self.rho00 * self.rho11 - abs(self.rho01) ** 2

    def purity(self):
        """ tr(ρ²)
        """
        return self.rho00 ** 2 + self.rho11 ** 2 + 2.0 * abs(self.rho01) ** 2

    def is_valid(self, tol=VALIDITY_TOL):
        """ Whether this matrix has unit trace and is positive semi-definite within tol
        """
        return (
            abs(self.trace() - 1.0) <= tol and
            self.rho00 >= -tol and
            self.rho11 >= -tol and
            self.determinant() >= -tol)

    def max_entry_distance(self, other):
        """ Largest absolute entry of the difference with another density matrix
        """
        return max(
            abs(self.rho00 - other.rho00),
            abs(self.rho01 - other.rho01),
            abs(self.rho11 - other.rho11))

    def __repr__(self):
        return "DensityMatrix(%r, %r, %r)" % (self.rho00, self.rho01, self.rho11)


def pure_state(z):
    """ The density matrix of (z|0> + |1>)/√(1+|z|²)
    """
    z = complex(z)
    norm = 1.0 + abs(z) ** 2
    return DensityMatrix(abs(z) ** 2 / norm, z / norm, 1.0 / norm)


def evolution_matrix(alpha, phi, x):
    """ The unitary [[e^{ıα}cos x, e^{ıφ}sin x], [−e^{−ıφ}sin x, e^{−ıα}cos x]]
    """
    return np.array([
        [np.exp(1j * alpha) * np.cos(x), np.exp(1j * phi) * np.sin(x)],
        [-np.exp(-1j * phi) * np.sin(x), np.exp(-1j * alpha) * np.cos(x)]])


def S_matrix(rho):
    """ Purification step: entrywise square of ρ renormalised to unit trace

    :raises ValueError: if the squared diagonal vanishes.
    """
    diagonal = rho.rho00 ** 2 + rho.rho11 ** 2
    if diagonal <= 0.0:
        raise ValueError("Purification of a degenerate matrix: %r" % rho)
    return DensityMatrix(
        rho.rho00 ** 2 / diagonal,
        rho.rho01 ** 2 / diagonal,
        rho.rho11 ** 2 / diagonal)


def U_conj(rho, alpha, phi, x):
    """ Hamiltonian step U ρ U† with U from :func:`evolution_matrix`
    """
    unitary = evolution_matrix(alpha, phi, x)
    return DensityMatrix.from_matrix(unitary.dot(rho.as_matrix()).dot(unitary.conj().T))


def D_matrix(rho, beta):
    """ Pure dephasing: the off-diagonal entry is multiplied by 1 − β

    :raises ValueError: if beta is outside [0, 1).
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError("Dephasing rate must lie in [0, 1), got %r" % beta)
    return DensityMatrix(rho.rho00, (1.0 - beta) * rho.rho01, rho.rho11)
