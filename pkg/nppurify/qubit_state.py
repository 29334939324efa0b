""" The dictionary between quaternions and qubit mixed states

A quaternion ζ represents the density matrix

    ρ = 1/(1+|ζ|²) · [[|ζ|², Co(ζ)], [conj(Co(ζ)), 1]]

so many quaternions represent the same state. The aligned representative
z e^{ȷλ} = z cos λ + ȷ z̄ sin λ is produced by :func:`project_p`.
"""

import numpy as np

from nppurify.quat import (
    Quaternion, as_quaternion_array, make_complex, q_norm2)
from nppurify.reference_oracle import DensityMatrix
from nppurify.utils import cached_property


# Relative zero test for Co(ζ): |Co ζ| <= EPS_P * max(1, |ζ|)
EPS_P = 1e-12


def project_array(x):
    """ Aligned representative p(ζ) of every quaternion in a (..., 4) array
    """
    x = np.asarray(x, dtype=np.float64)
    a, b, c, d = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    co_abs = np.hypot(a, b)
    jk_abs = np.hypot(c, d)
    norm = np.sqrt(q_norm2(x))
    aligned = co_abs > EPS_P * np.maximum(1.0, norm)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(aligned, jk_abs / co_abs, 0.0)
    projected = np.stack((a, b, ratio * a, ratio * b), axis=-1)
    return np.where(aligned[..., np.newaxis], projected, x)


def polar_array(x):
    """ Polar form of the aligned representatives of a (..., 4) array

    :returns: Tuple of (z, cos λ, sin λ) arrays with λ in [0, π/2].
        States with Co(ζ) = 0 give λ = π/2 and z = Im₂ + ıIm₃, ζ = 0 gives z = 0, λ = 0.
    """
    x = project_array(x)
    a, b, c, d = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    co_abs = np.hypot(a, b)
    jk_abs = np.hypot(c, d)
    norm = np.sqrt(q_norm2(x))
    has_co = co_abs > EPS_P * np.maximum(1.0, norm)
    nonzero = norm > 0.0
    with np.errstate(divide='ignore', invalid='ignore'):
        cos_lambda = np.where(has_co, co_abs / norm, np.where(nonzero, 0.0, 1.0))
        sin_lambda = np.where(nonzero, np.where(has_co, jk_abs / norm, 1.0), 0.0)
        scale = np.where(has_co, norm / co_abs, 0.0)
    z = np.where(
        has_co,
        make_complex(a * scale, b * scale),
        make_complex(c, d))
    return z, cos_lambda, sin_lambda


def from_polar_array(z, cos_lambda, sin_lambda):
    """ z cos λ + ȷ z̄ sin λ, which equals z cos λ + (z sin λ)ȷ
    """
    z = np.asarray(z, dtype=np.complex128)
    return np.stack((
        z.real * cos_lambda,
        z.imag * cos_lambda,
        z.real * sin_lambda,
        z.imag * sin_lambda), axis=-1)


def rho_entries_array(x):
    """ (ρ₀₀, ρ₀₁) for every quaternion of a (..., 4) array
    """
    x = np.asarray(x, dtype=np.float64)
    norm2 = q_norm2(x)
    denominator = 1.0 + norm2
    return norm2 / denominator, make_complex(x[..., 0] / denominator, x[..., 1] / denominator)


def purity_array(x):
    """ tr(ρ²) = (|ζ|⁴ + 2|Co ζ|² + 1)/(1 + |ζ|²)²
    """
    x = np.asarray(x, dtype=np.float64)
    norm2 = q_norm2(x)
    co2 = x[..., 0] * x[..., 0] + x[..., 1] * x[..., 1]
    with np.errstate(over='ignore', invalid='ignore'):
        # Past 1e150 the quartic overflows while the state is pure to double precision
        purity = (norm2 * norm2 + 2.0 * co2 + 1.0) / ((1.0 + norm2) * (1.0 + norm2))
    return np.where(np.isinf(norm2) | (norm2 > 1e150), 1.0, purity)


def observables_array(x):
    """ Per-state observables of a (..., 4) array

    :returns: Dictionary with population, coherence, coherence_raw, purity and concurrence_sq arrays.
    """
    x = np.asarray(x, dtype=np.float64)
    norm2 = q_norm2(x)
    co_abs = np.hypot(x[..., 0], x[..., 1])
    return {
        'population': norm2 / (1.0 + norm2),
        'coherence': co_abs / (1.0 + norm2),
        'coherence_raw': co_abs,
        'purity': purity_array(x),
        'concurrence_sq': x[..., 2] * x[..., 2] + x[..., 3] * x[..., 3],
    }


class PolarState(object):
    """ A mixed state in polar form ζ = z e^{ȷλ}

    The mixing angle is canonicalised to [0, π/2]: a negative cos λ is absorbed
    into the phase of z and the sign of sin λ is dropped, neither of which
    changes the represented density matrix.

    :ivar z: Complex Bloch (stereographic) coordinate
    :ivar lam: Mixing angle λ in radians
    """

    def __init__(self, z, lam):
        z = complex(z)
        cos_lambda = np.cos(lam)
        sin_lambda = np.sin(lam)
        if cos_lambda < 0.0:
            z = -z
        self.z = z
        self.lam = float(np.arctan2(abs(sin_lambda), abs(cos_lambda)))

    def __repr__(self):
        return "PolarState(z=%r, lam=%r)" % (self.z, self.lam)


class Observables(object):
    """ Observables of the state represented by a quaternion

    :ivar population: ⟨0|ρ|0⟩
    :ivar coherence: |ρ₀₁| = |Co ζ|/(1+|ζ|²)
    :ivar coherence_raw: |Co ζ|, the unnormalised coherence
    :ivar purity: tr(ρ²), in [1/2, 1]
    :ivar concurrence_sq: |ζ − Co ζ|²
    """

    def __init__(self, population, coherence, coherence_raw, purity, concurrence_sq):
        self.population = population
        self.coherence = coherence
        self.coherence_raw = coherence_raw
        self.purity = purity
        self.concurrence_sq = concurrence_sq

    def __repr__(self):
        return (
            "Observables(population=%r, coherence=%r, coherence_raw=%r, purity=%r, concurrence_sq=%r)" % (
                self.population, self.coherence, self.coherence_raw, self.purity, self.concurrence_sq))


class HamiltonianSpec(object):
    """ Hamiltonian H = ω/2 σz + Re(b) σx + Im(b) σy applied for a time step Δt

    The derived quantities follow from U = exp(−ıHΔt) written as
    [[e^{ıα}cos x, e^{ıφ}sin x], [−e^{−ıφ}sin x, e^{−ıα}cos x]].
    """

    def __init__(self, omega, b, dt):
        if not dt > 0.0:
            raise ValueError("Time step must be positive, got %r" % dt)
        self.omega = float(omega)
        self.b = complex(b)
        self.dt = float(dt)

    @cached_property
    def r(self):
        return float(np.sqrt(self.omega ** 2 + abs(self.b) ** 2))

    @cached_property
    def x(self):
        half = 0.5 * self.r * self.dt
        b_abs = abs(self.b)
        return float(np.arctan2(
            b_abs * np.sin(half),
            np.sqrt(b_abs ** 2 * np.cos(half) ** 2 + self.omega ** 2)))

    @cached_property
    def alpha(self):
        if self.r == 0.0:
            return 0.0
        half = 0.5 * self.r * self.dt
        # Branch of tan α = −(ω/r) tan(rΔt/2) that is continuous in Δt with α(0) = 0
        return float(np.arctan2(-(self.omega / self.r) * np.sin(half), np.cos(half)))

    @cached_property
    def phi(self):
        return float(np.angle(self.b) - 0.25 * np.pi)

    @cached_property
    def p(self):
        if self.b == 0.0:
            return 0j
        return complex(np.exp(1j * self.phi) * np.tan(self.x))

    def __repr__(self):
        return "HamiltonianSpec(omega=%r, b=%r, dt=%r)" % (self.omega, self.b, self.dt)


def rho_of(zeta):
    """ The density matrix represented by a quaternion

    :rtype: DensityMatrix
    """
    rho00, rho01 = rho_entries_array(as_quaternion_array(Quaternion.coerce(zeta)))
    rho00 = float(rho00)
    return DensityMatrix(rho00, complex(rho01), 1.0 - rho00)


def observables(zeta):
    """ Population, coherence, purity and squared concurrence of a state

    :rtype: Observables
    """
    values = observables_array(as_quaternion_array(Quaternion.coerce(zeta)))
    return Observables(**dict((name, float(value)) for name, value in values.items()))


def project_p(zeta):
    """ The aligned representative Co(ζ) + (|ζ − Co ζ|/|Co ζ|)·Co(ζ)·ȷ

    States with a vanishing complex part are returned unchanged. The result
    represents the same density matrix and has the same norm.
    """
    return Quaternion.from_array(project_array(as_quaternion_array(Quaternion.coerce(zeta))))


def polar_decompose(zeta):
    """ Write a state as z e^{ȷλ} with λ in [0, π/2]

    :rtype: PolarState
    """
    z, cos_lambda, sin_lambda = polar_array(as_quaternion_array(Quaternion.coerce(zeta)))
    return PolarState(complex(z), float(np.arctan2(sin_lambda, cos_lambda)))


def from_polar(state):
    """ The quaternion z cos λ + ȷ z̄ sin λ of a polar state
    """
    return Quaternion.from_array(from_polar_array(state.z, np.cos(state.lam), np.sin(state.lam)))


def hamiltonian_params(h):
    """ Map parameters (α, p) of a Hamiltonian step

    :param h: HamiltonianSpec
    :returns: Tuple of alpha and the complex parameter p = e^{ıφ} tan x.
    """
    return h.alpha, h.p
