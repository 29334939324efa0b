""" Maps describing the competition between purification and decoherence

The elementary maps act on quaternion states:

* s, the purification protocol (entrywise squaring of ρ),
* u, the Hamiltonian evolution U ρ U†,
* d, pure dephasing,
* du, the quaternionic generalisation of u that mixes evolution and decoherence.

Two families of systems are built from them: :class:`DephasingParams` iterates
d∘u∘s and :class:`DuParams` iterates p∘du∘s. Every map has an array kernel
(``*_array``) operating on (..., 4) arrays, used by the scans, and a scalar
wrapper operating on :class:`~nppurify.quat.Quaternion` values.
"""

from enum import IntEnum
import numpy as np

from nppurify.log import log_manager
from nppurify.quat import (
    Quaternion, as_quaternion_array, q_conj, q_exp, q_inv, q_mul, q_norm2)
from nppurify.qubit_state import (
    from_polar_array, observables_array, polar_array, project_array,
    purity_array, rho_entries_array)
from nppurify.utils import cached_property


log = log_manager.get_logger(__name__)

# Singular branch of s: |Re ζ + ȷ Im₂ ζ| < EPS_S·|ζ|
EPS_S = 1e-12
# Second branch of d: |ζ − Co ζ| < EPS_D·|ζ|
EPS_D = 1e-12
# Beyond this norm u and du are replaced by their limits at infinity
R_MAX = 1e15
POLE_TOL = 1e-300

DEFAULT_ITERS = 100
DEFAULT_MAX_PERIOD = 5
DEFAULT_CYCLE_TOL = 1e-4
DEFAULT_WINDOW = 10
DEFAULT_THRESHOLD = 0.75

QUATERNION_METRIC = 'quaternion'
DENSITY_MATRIX_METRIC = 'density-matrix'
METRICS = (QUATERNION_METRIC, DENSITY_MATRIX_METRIC)

DIVERGED = complex(np.inf, 0.0)


class PoleError(ZeroDivisionError):
    """ Raised when a Möbius-type map is evaluated at its pole
    """


class OrbitAbsorbed(ArithmeticError):
    """ Raised by :func:`step` when the orbit falls into the pure ``|0>`` attractor at infinity
    """


class Regime(IntEnum):
    """ Which process wins the competition for an initial state
    """
    UNRESOLVED = -1
    DECOHERENCE = 0
    PURIFICATION = 1


def s_array(x):
    """ Purification map s on a (..., 4) array

    States are first replaced by their aligned representative, then the
    closed form (Co ζ)² + ȷ Im₂((ζ − Co ζ) Co ζ) + k |ζ|² Im₂ζ / |Re ζ + ȷ Im₂ζ|
    is used. Where its last denominator vanishes the polar completion
    z² e^{ȷμ} with cos μ = cos² λ is used instead.
    """
    x = project_array(x)
    a, b, c, d = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    norm2 = q_norm2(x)
    rj = np.hypot(a, c)
    closed_form = (rj >= EPS_S * np.sqrt(norm2)) & (rj > 0.0)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        third = np.where(closed_form, norm2 * c / rj, 0.0)
        value = np.stack((a * a - b * b, 2.0 * a * b, a * c + b * d, third), axis=-1)

        z, cos_lambda, sin_lambda = polar_array(x)
        cos_mu = cos_lambda * cos_lambda
        sin_mu = sin_lambda * np.sqrt(1.0 + cos_lambda * cos_lambda)
        completion = from_polar_array(z * z, cos_mu, sin_mu)
    return np.where(closed_form[..., np.newaxis], value, completion)


def mobius_array(x, left, right, shift, large=None):
    """ (left·ζ + shift)·(right − conj(shift)·ζ)⁻¹ on a (..., 4) array

    This is the common form of u and du.

    :param x: States.
    :param left: Left unit factor, shape (4,).
    :param right: Unit factor of the denominator, shape (4,).
    :param shift: The p or q parameter as a quaternion array broadcastable against x.
    :param large: Optional boolean mask of states to treat as |ζ| > R_MAX.
    :returns: Tuple of (value, pole, unbounded). pole marks vanishing
        denominators, unbounded marks large states for which the limit at
        infinity is undefined because shift is zero.
    """
    x = np.asarray(x, dtype=np.float64)
    shift = np.asarray(shift, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        if large is None:
            large = q_norm2(x) > R_MAX * R_MAX
        numerator = q_mul(left, x) + shift
        denominator = right - q_mul(q_conj(shift), x)
        denominator_norm2 = q_norm2(denominator)
        value = q_mul(numerator, q_inv(denominator))
        pole = ~(np.sqrt(denominator_norm2) >= POLE_TOL) | ~np.isfinite(value).all(axis=-1)

        shift_norm2 = np.broadcast_to(q_norm2(shift), large.shape)
        use_limit = large & (shift_norm2 > 0.0)
        limit = -q_mul(left, q_inv(q_conj(shift)))
        value = np.where(use_limit[..., np.newaxis], limit, value)
    pole = pole & ~use_limit
    unbounded = large & (shift_norm2 == 0.0)
    return value, pole, unbounded


def _shift_array(value):
    """ Convert a complex p (scalar or array) to a quaternion array
    """
    if isinstance(value, np.ndarray) and np.iscomplexobj(value):
        result = np.zeros(value.shape + (4, ))
        result[..., 0] = value.real
        result[..., 1] = value.imag
        return result
    if isinstance(value, (int, float, complex, np.number)):
        value = complex(value)
        return np.array([value.real, value.imag, 0.0, 0.0])
    return as_quaternion_array(value)


def u_array(x, alpha, p, large=None):
    """ Hamiltonian map u(ζ) = (e^{ıα}ζ + p)(e^{−ıα} − p̄ζ)⁻¹ on a (..., 4) array

    :returns: Tuple of (value, pole, unbounded) as for :func:`mobius_array`.
    """
    left = q_exp('i', alpha)
    return mobius_array(x, left, q_conj(left), _shift_array(p), large)


def d_array(x, beta):
    """ Dephasing map d on a (..., 4) array

    d(ζ) = ζ e^{ȷθ} with θ = β|Co ζ|/|ζ − Co ζ|, or θ = √(2β) for states
    without a ȷk part. The factor multiplies the aligned representative.
    """
    x = project_array(x)
    co_abs = np.hypot(x[..., 0], x[..., 1])
    jk_abs = np.hypot(x[..., 2], x[..., 3])
    norm = np.sqrt(q_norm2(x))
    mixed = (jk_abs >= EPS_D * norm) & (jk_abs > 0.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        theta = np.where(mixed, beta * co_abs / jk_abs, np.sqrt(2.0 * beta))
    return q_mul(x, q_exp('j', theta))


def du_factors(alpha, beta, gamma, literal_inverse=False):
    """ Unit factors (e^{ıα}e^{ȷβ}e^{kγ}, e^{−kγ}e^{−ȷβ}e^{−ıα}) of the du map

    With literal_inverse the second factor is e^{−kγ}e^{−ȷγ}e^{−ıα}.
    """
    left = q_mul(q_mul(q_exp('i', alpha), q_exp('j', beta)), q_exp('k', gamma))
    if literal_inverse:
        right = q_mul(q_mul(q_exp('k', -gamma), q_exp('j', -gamma)), q_exp('i', -alpha))
    else:
        right = q_conj(left)
    return left, right


def du_array(x, alpha, beta, gamma, q, large=None, literal_inverse=False):
    """ Generalised evolution du(ζ) = (e^{ıα}e^{ȷβ}e^{kγ}ζ + q)(e^{−kγ}e^{−ȷβ}e^{−ıα} − q̄ζ)⁻¹

    :returns: Tuple of (value, pole, unbounded) as for :func:`mobius_array`.
    """
    left, right = du_factors(alpha, beta, gamma, literal_inverse)
    return mobius_array(x, left, right, as_quaternion_array(q), large)


class DephasingParams(object):
    """ The family f_{α,β,p} = d∘u∘s: purification, evolution, then pure dephasing

    :ivar alpha: Phase α of the evolution
    :ivar beta: Dephasing rate per step, in [0, 1)
    :ivar p: Complex evolution parameter, or an array of them (one per orbit)
    :ivar purify: Whether the purification step s is applied
    """

    family = 'dephasing'

    def __init__(self, alpha=0.0, beta=0.01, p=1 + 0.1j, purify=True):
        if not 0.0 <= beta < 1.0:
            raise ValueError("Dephasing rate beta must lie in [0, 1), got %r" % beta)
        self.alpha = float(alpha)
        self.beta = float(beta)
        if isinstance(p, np.ndarray):
            self.p = p.astype(np.complex128)
        else:
            self.p = complex(p)
        self.purify = bool(purify)

    @staticmethod
    def from_hamiltonian(hamiltonian, beta=0.01, purify=True):
        """ Build the dephasing family for a Hamiltonian step

        :param hamiltonian: A :class:`~nppurify.qubit_state.HamiltonianSpec`.
        """
        return DephasingParams(hamiltonian.alpha, beta, hamiltonian.p, purify)

    @cached_property
    def _shift(self):
        return _shift_array(self.p)

    def select(self, index):
        """ Return the system restricted to a subset of orbits when p varies per orbit
        """
        if isinstance(self.p, np.ndarray):
            return DephasingParams(self.alpha, self.beta, self.p[index], self.purify)
        return self

    def advance(self, states):
        """ Apply one step to a (..., 4) array of states

        :returns: Tuple of the next states and a mask of absorbed orbits.
        """
        states = np.asarray(states, dtype=np.float64)
        with np.errstate(all='ignore'):
            if self.purify:
                large = q_norm2(states) > R_MAX
                current = s_array(states)
            else:
                large = None
                current = states
            left = q_exp('i', self.alpha)
            value, pole, unbounded = mobius_array(current, left, q_conj(left), self._shift, large)
            value = d_array(value, self.beta)
        absorbed = (pole | unbounded) & np.isfinite(states).all(axis=-1)
        return value, absorbed

    def describe(self):
        """ Parameters as a flat dictionary of strings and numbers
        """
        description = {
            'family': self.family, 'alpha': self.alpha, 'beta': self.beta,
            'purify': int(self.purify)}
        if not isinstance(self.p, np.ndarray):
            description['p_re'] = self.p.real
            description['p_im'] = self.p.imag
        return description

    def __repr__(self):
        p = "array" if isinstance(self.p, np.ndarray) else repr(self.p)
        return "DephasingParams(alpha=%r, beta=%r, p=%s, purify=%r)" % (self.alpha, self.beta, p, self.purify)


class DuParams(object):
    """ The family f_{α,β,γ,q} = p∘du∘s: purification, generalised evolution, then alignment

    With purify disabled the orbit is the bare du iteration ζ ↦ du(ζ).

    :ivar alpha: ı angle of the du map
    :ivar beta: ȷ angle of the du map
    :ivar gamma: k angle of the du map
    :ivar q: Quaternion parameter as a (4,) array, or (..., 4) with one per orbit
    :ivar purify: Whether the purification step s and the final projection are applied
    :ivar literal_inverse: Use e^{−kγ}e^{−ȷγ}e^{−ıα} in the denominator
    """

    family = 'du'

    def __init__(self, alpha=0.1, beta=0.0, gamma=0.0, q=(1.0, 0.0, 0.0, 0.1),
                 purify=True, literal_inverse=False):
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.gamma = float(gamma)
        self.q = as_quaternion_array(q)
        self.purify = bool(purify)
        self.literal_inverse = bool(literal_inverse)

    @cached_property
    def _factors(self):
        return du_factors(self.alpha, self.beta, self.gamma, self.literal_inverse)

    def select(self, index):
        if self.q.ndim > 1:
            return DuParams(
                self.alpha, self.beta, self.gamma, self.q[index], self.purify, self.literal_inverse)
        return self

    def advance(self, states):
        """ Apply one step to a (..., 4) array of states

        :returns: Tuple of the next states and a mask of absorbed orbits.
        """
        states = np.asarray(states, dtype=np.float64)
        left, right = self._factors
        with np.errstate(all='ignore'):
            if self.purify:
                large = q_norm2(states) > R_MAX
                current = s_array(states)
            else:
                large = None
                current = states
            value, pole, unbounded = mobius_array(current, left, right, self.q, large)
            if self.purify:
                value = project_array(value)
        absorbed = (pole | unbounded) & np.isfinite(states).all(axis=-1)
        return value, absorbed

    def describe(self):
        description = {
            'family': self.family, 'alpha': self.alpha, 'beta': self.beta, 'gamma': self.gamma,
            'purify': int(self.purify), 'literal_inverse': int(self.literal_inverse)}
        if self.q.ndim == 1:
            for name, value in zip(('q_a', 'q_b', 'q_c', 'q_d'), self.q):
                description[name] = float(value)
        return description

    def __repr__(self):
        q = "array" if self.q.ndim > 1 else repr(tuple(float(v) for v in self.q))
        return "DuParams(alpha=%r, beta=%r, gamma=%r, q=%s, purify=%r, literal_inverse=%r)" % (
            self.alpha, self.beta, self.gamma, q, self.purify, self.literal_inverse)


def iterate_states(zeta0, system, iters):
    """ Iterate a system from an array of initial states

    Absorbed orbits keep their last finite state for the remaining steps.

    :param zeta0: Initial states, shape (..., 4).
    :param system: DephasingParams or DuParams.
    :param iters: Number of steps N.
    :returns: Tuple of the states, shape (N + 1, ..., 4), and an integer array
        holding for every orbit the step at which it was absorbed, or -1.
    """
    if iters < 0:
        raise ValueError("Number of iterations must be non-negative, got %r" % iters)
    zeta0 = np.asarray(zeta0, dtype=np.float64)
    states = np.empty((iters + 1, ) + zeta0.shape)
    states[0] = zeta0
    diverged_at = np.full(zeta0.shape[:-1], -1, dtype=np.int64)
    active = np.ones(zeta0.shape[:-1], dtype=bool)
    current = zeta0
    for n in range(1, iters + 1):
        value, absorbed = system.advance(current)
        newly_absorbed = active & absorbed
        diverged_at[newly_absorbed] = n
        active &= ~absorbed
        current = np.where(active[..., np.newaxis], value, current)
        states[n] = current
        if not active.any():
            states[n + 1:] = current
            break
    log.debug("Iterated %d orbits for %d steps, %d absorbed",
              active.size, iters, np.count_nonzero(diverged_at >= 0))
    return states, diverged_at


def detect_cycles(states, diverged_at, max_period=DEFAULT_MAX_PERIOD, tol=DEFAULT_CYCLE_TOL,
                  metric=QUATERNION_METRIC):
    """ Iterations needed to reach a cycle, for every orbit of a state array

    An orbit enters a cycle of period T at step n when the distance between
    ζ_{m+T} and ζ_m stays below tol for every recorded m ≥ n. The entry step
    must satisfy n ≤ N − max_period. Absorbed orbits are reported as reaching
    the fixed point ``|0><0|`` at their absorption step.

    :param states: Array of shape (N + 1, ..., 4) from :func:`iterate_states`.
    :param diverged_at: Absorption steps from :func:`iterate_states`.
    :returns: Tuple of (entry, period) integer arrays, entry is -1 where no cycle was found.
    """
    if metric not in METRICS:
        raise ValueError("Unknown cycle metric %r, expected one of %s" % (metric, ", ".join(METRICS)))
    if max_period < 1:
        raise ValueError("Maximum period must be at least 1, got %r" % max_period)
    states = np.asarray(states, dtype=np.float64)
    iters = states.shape[0] - 1
    shape = states.shape[1:-1]
    entry = np.full(shape, -1, dtype=np.int64)
    period = np.zeros(shape, dtype=np.int64)
    last_entry = iters - max_period

    if last_entry >= 0:
        if metric == DENSITY_MATRIX_METRIC:
            rho00, rho01 = rho_entries_array(states)
        with np.errstate(invalid='ignore'):
            for cycle_period in range(1, max_period + 1):
                if metric == QUATERNION_METRIC:
                    distance = np.sqrt(q_norm2(states[cycle_period:] - states[:-cycle_period]))
                else:
                    distance = np.maximum(
                        np.abs(rho00[cycle_period:] - rho00[:-cycle_period]),
                        np.abs(rho01[cycle_period:] - rho01[:-cycle_period]))
                close = distance < tol
                persistent = np.logical_and.accumulate(close[::-1], axis=0)[::-1]
                candidates = persistent[:last_entry + 1]
                found = candidates.any(axis=0)
                first = np.argmax(candidates, axis=0)
                better = found & ((entry < 0) | (first < entry))
                entry = np.where(better, first, entry)
                period = np.where(better, cycle_period, period)

    diverged_at = np.asarray(diverged_at)
    absorbed = diverged_at >= 0
    entry = np.where(absorbed, diverged_at, entry)
    period = np.where(absorbed, 1, period)
    return entry, period


def classify_states(states, diverged_at, window=DEFAULT_WINDOW, threshold=DEFAULT_THRESHOLD):
    """ Regime labels from the mean purity over the last steps of every orbit

    :returns: Tuple of the label array (:class:`Regime` values) and the final purity array.
    """
    states = np.asarray(states, dtype=np.float64)
    window = max(1, min(window, states.shape[0]))
    absorbed = np.asarray(diverged_at) >= 0
    purity = purity_array(states[-window:])
    with np.errstate(invalid='ignore'):
        mean_purity = purity.mean(axis=0)
    labels = np.where(mean_purity >= threshold, Regime.PURIFICATION, Regime.DECOHERENCE)
    labels = np.where(np.isfinite(mean_purity), labels, Regime.UNRESOLVED)
    labels = np.where(absorbed, Regime.PURIFICATION, labels).astype(np.int8)
    final_purity = np.where(absorbed, 1.0, purity[-1])
    return labels, final_purity


class OrbitRecord(object):
    """ The orbit ζ₀, ζ₁, … of an initial state with per-step observables

    :ivar states: Array of shape (n, 4) of the recorded states
    :ivar iters: Number of requested steps N
    :ivar diverged_at: Step at which the orbit was absorbed into ``|0>``, or None.
        When set, states holds ζ₀ … ζ_{diverged_at − 1}.
    """

    def __init__(self, states, iters, diverged_at=None):
        self.states = np.asarray(states, dtype=np.float64).reshape(-1, 4)
        self.iters = iters
        self.diverged_at = diverged_at

    @property
    def diverged(self):
        return self.diverged_at is not None

    def __len__(self):
        return len(self.states)

    def quaternions(self):
        return [Quaternion.from_array(state) for state in self.states]

    @property
    def final_state(self):
        return Quaternion.from_array(self.states[-1])

    @cached_property
    def _observables(self):
        return observables_array(self.states)

    @property
    def population(self):
        return self._observables['population']

    @property
    def coherence(self):
        return self._observables['coherence']

    @property
    def coherence_raw(self):
        return self._observables['coherence_raw']

    @property
    def purity(self):
        return self._observables['purity']

    @property
    def concurrence_sq(self):
        return self._observables['concurrence_sq']

    def as_dataframe(self):
        """ Convert the orbit to a pandas DataFrame with one row per step

        :rtype: pandas.DataFrame
        """
        from nppurify.export import pandas_export
        return pandas_export.from_orbit(self)

    def __repr__(self):
        return "OrbitRecord(steps=%d, iters=%d, diverged_at=%r)" % (len(self), self.iters, self.diverged_at)


class CycleReport(object):
    """ Result of cycle detection on an orbit

    :ivar found: Whether a cycle was reached
    :ivar period: Period of the cycle, or 0
    :ivar entry_index: Number of iterations needed to reach the cycle, or -1
    :ivar metric: Distance used, 'quaternion' or 'density-matrix'
    :ivar tol: Return tolerance
    """

    def __init__(self, found, period, entry_index, metric, tol):
        self.found = found
        self.period = period
        self.entry_index = entry_index
        self.metric = metric
        self.tol = tol

    def __repr__(self):
        return "CycleReport(found=%r, period=%r, entry_index=%r, metric=%r, tol=%r)" % (
            self.found, self.period, self.entry_index, self.metric, self.tol)


def map_s(zeta):
    """ Purification map s, so that ρ(s(ζ)) is the purified ρ(ζ)

    :rtype: Quaternion
    """
    return Quaternion.from_array(s_array(as_quaternion_array(Quaternion.coerce(zeta))))


def map_u(zeta, alpha, p):
    """ Hamiltonian map u(ζ) = (e^{ıα}ζ + p)(e^{−ıα} − p̄ζ)⁻¹

    For |ζ| > R_MAX and p ≠ 0 the limit −e^{ıα}p/|p|² is returned.

    :raises PoleError: if the denominator vanishes.
    """
    value, pole, _ = u_array(as_quaternion_array(Quaternion.coerce(zeta)), alpha, p)
    if pole:
        raise PoleError("Hamiltonian map evaluated at its pole: zeta=%r, alpha=%r, p=%r" % (zeta, alpha, p))
    return Quaternion.from_array(value)


def map_d(zeta, beta):
    """ Dephasing map d, norm preserving

    :rtype: Quaternion
    """
    if beta < 0.0:
        raise ValueError("Dephasing rate must be non-negative, got %r" % beta)
    return Quaternion.from_array(d_array(as_quaternion_array(Quaternion.coerce(zeta)), beta))


def map_du(zeta, params):
    """ Generalised evolution du with the angles and q of a :class:`DuParams`

    :raises PoleError: if the denominator vanishes.
    """
    value, pole, _ = du_array(
        as_quaternion_array(Quaternion.coerce(zeta)), params.alpha, params.beta, params.gamma,
        params.q, literal_inverse=params.literal_inverse)
    if pole:
        raise PoleError("du map evaluated at its pole: zeta=%r, %r" % (zeta, params))
    return Quaternion.from_array(value)


def step(zeta, system):
    """ One step of a system: d∘u∘s for DephasingParams, p∘du∘s for DuParams

    :raises OrbitAbsorbed: if the state falls into the pure ``|0>`` attractor.
    """
    value, absorbed = system.advance(as_quaternion_array(Quaternion.coerce(zeta)))
    if absorbed:
        raise OrbitAbsorbed("Orbit of %r absorbed into the pure |0> state by %r" % (zeta, system))
    return Quaternion.from_array(value)


def f_complex(z, alpha, p):
    """ The complex map (z² e^{ıα} + p)/(e^{−ıα} − p̄z²) on pure states

    The arithmetic is carried out in the same order as the quaternion maps so
    that orbits of pure states can be compared exactly. For |z|² > R_MAX and
    p ≠ 0 the limit −e^{ıα}p/|p|² is returned, poles give :data:`DIVERGED`.

    :param z: Complex number or array.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=np.complex128)
    p = complex(p)
    zr, zi = z.real, z.imag
    pr, pi = p.real, p.imag
    cos_alpha, sin_alpha = np.cos(alpha), np.sin(alpha)
    with np.errstate(all='ignore'):
        wr = zr * zr - zi * zi
        wi = 2.0 * zr * zi
        nr = cos_alpha * wr - sin_alpha * wi + pr
        ni = cos_alpha * wi + sin_alpha * wr + pi
        dr = cos_alpha - (pr * wr + pi * wi)
        di = -sin_alpha - (pr * wi + (-pi) * wr)
        norm2 = dr * dr + di * di
        ir = dr / norm2
        ii = -di / norm2
        result = _assemble(nr * ir - ni * ii, nr * ii + ni * ir)
        pole = ~(np.sqrt(norm2) >= POLE_TOL) | ~np.isfinite(result)

        p_norm2 = pr * pr + pi * pi
        large = (zr * zr + zi * zi) > R_MAX
        if p_norm2 > 0.0:
            lr, li = pr / p_norm2, pi / p_norm2
            limit = _assemble(-(cos_alpha * lr - sin_alpha * li), -(cos_alpha * li + sin_alpha * lr))
            result = np.where(large, limit, result)
            pole = pole & ~large
        result = np.where(pole, DIVERGED, result)
    if scalar:
        return complex(result)
    return result


def _assemble(real, imag):
    real = np.asarray(real, dtype=np.float64)
    imag = np.asarray(imag, dtype=np.float64)
    result = np.empty(np.broadcast(real, imag).shape, dtype=np.complex128)
    result.real = real
    result.imag = imag
    return result


def iterate(zeta0, system, iters=DEFAULT_ITERS):
    """ Iterate a system from a single initial state

    :param zeta0: Initial state.
    :param system: DephasingParams or DuParams.
    :param iters: Number of steps N.
    :rtype: OrbitRecord
    """
    zeta0 = as_quaternion_array(Quaternion.coerce(zeta0))
    states, diverged_at = iterate_states(zeta0[np.newaxis, :], system, iters)
    states = states[:, 0, :]
    diverged_at = int(diverged_at[0])
    if diverged_at >= 0:
        return OrbitRecord(states[:diverged_at], iters, diverged_at)
    return OrbitRecord(states, iters)


def detect_cycle(orbit, max_period=DEFAULT_MAX_PERIOD, tol=DEFAULT_CYCLE_TOL, metric=QUATERNION_METRIC):
    """ Find the cycle reached by an orbit

    :rtype: CycleReport
    :raises ValueError: if a non-absorbed orbit is shorter than max_period + 1 states.
    """
    if orbit.diverged:
        return CycleReport(True, 1, orbit.diverged_at, metric, tol)
    if len(orbit) < max_period + 1:
        raise ValueError(
            "Orbit of %d states is too short to detect cycles of period up to %d" % (len(orbit), max_period))
    entry, period = detect_cycles(orbit.states[:, np.newaxis, :], np.array([-1]), max_period, tol, metric)
    entry = int(entry[0])
    if entry < 0:
        return CycleReport(False, 0, -1, metric, tol)
    return CycleReport(True, int(period[0]), entry, metric, tol)


def classify(orbit, window=DEFAULT_WINDOW, threshold=DEFAULT_THRESHOLD):
    """ Decide whether purification or decoherence wins on an orbit

    :rtype: Regime
    """
    if orbit.diverged:
        return Regime.PURIFICATION
    labels, _ = classify_states(orbit.states[:, np.newaxis, :], np.array([-1]), window, threshold)
    return Regime(int(labels[0]))
