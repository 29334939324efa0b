""" Quaternion arithmetic for the qubit state dynamics

A quaternion ζ = a + ıb + ȷc + kd is stored as four doubles. The array
kernels (``q_mul``, ``q_conj``, ...) operate on numpy arrays whose last axis
has length 4, so that a whole raster of states can be pushed through the maps
in one call. :class:`Quaternion` is a small value type built on the same
kernels for single-state work.
"""

from collections import namedtuple
import numpy as np


AXES = ('i', 'j', 'k')

_AXIS_INDEX = {'i': 1, 'j': 2, 'k': 3}


def as_quaternion_array(value):
    """ Convert a Quaternion, complex number, real or (..., 4) array to a float array
    """
    if isinstance(value, Quaternion):
        return value.as_array()
    if isinstance(value, (complex, np.complexfloating)):
        return np.array([value.real, value.imag, 0.0, 0.0])
    if np.isscalar(value):
        return np.array([float(value), 0.0, 0.0, 0.0])
    array = np.asarray(value, dtype=np.float64)
    if array.ndim == 0 or array.shape[-1] != 4:
        raise ValueError("Expected an array with a last axis of length 4, got shape %r" % (array.shape, ))
    return array


def q_mul(x, y):
    """ Hamilton product of two quaternion arrays (broadcasting over leading axes)
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    a1, b1, c1, d1 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    a2, b2, c2, d2 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    a = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
    b = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
    c = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
    d = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
    return np.stack((a, b, c, d), axis=-1)


def q_conj(x):
    x = np.asarray(x, dtype=np.float64)
    return np.stack((x[..., 0], -x[..., 1], -x[..., 2], -x[..., 3]), axis=-1)


def q_norm2(x):
    """ Squared norm a² + b² + c² + d², summed in component order
    """
    x = np.asarray(x, dtype=np.float64)
    a, b, c, d = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    return a * a + b * b + c * c + d * d


def q_inv(x):
    """ Componentwise inverse conj(x) / |x|², without any zero check

    Zero entries come out as non-finite values, callers guard them.
    """
    x = np.asarray(x, dtype=np.float64)
    norm2 = q_norm2(x)
    return q_conj(x) / norm2[..., np.newaxis]


def q_co(x):
    """ Complex part Co(ζ) = a + ıb as a complex array
    """
    x = np.asarray(x, dtype=np.float64)
    return make_complex(x[..., 0], x[..., 1])


def q_from_complex(w):
    w = np.asarray(w, dtype=np.complex128)
    zero = np.zeros(w.shape)
    return np.stack((w.real, w.imag, zero, zero), axis=-1)


def q_exp(axis, theta):
    """ cos θ + u sin θ for the unit u named by axis, for an array of angles
    """
    try:
        index = _AXIS_INDEX[axis]
    except KeyError:
        raise ValueError("Unknown quaternion axis %r, expected one of %s" % (axis, ", ".join(AXES)))
    theta = np.asarray(theta, dtype=np.float64)
    result = np.zeros(theta.shape + (4, ))
    result[..., 0] = np.cos(theta)
    result[..., index] = np.sin(theta)
    return result


def make_complex(real, imag):
    """ Assemble a complex array from real and imaginary parts without arithmetic
    """
    real = np.asarray(real, dtype=np.float64)
    imag = np.asarray(imag, dtype=np.float64)
    shape = np.broadcast(real, imag).shape
    result = np.empty(shape, dtype=np.complex128)
    result.real = real
    result.imag = imag
    return result


class Quaternion(object):
    """ A quaternion a + ıb + ȷc + kd with value semantics

    Instances are immutable. Arithmetic operators accept other quaternions as
    well as real and complex numbers, which are embedded as a + ıb.

    :ivar a: Real part Re(ζ)
    :ivar b: ı component Im₁(ζ)
    :ivar c: ȷ component Im₂(ζ)
    :ivar d: k component Im₃(ζ)
    """

    __slots__ = ('_a', '_b', '_c', '_d')

    def __init__(self, a=0.0, b=0.0, c=0.0, d=0.0):
        object.__setattr__(self, '_a', float(a))
        object.__setattr__(self, '_b', float(b))
        object.__setattr__(self, '_c', float(c))
        object.__setattr__(self, '_d', float(d))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion objects are immutable")

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    @property
    def c(self):
        return self._c

    @property
    def d(self):
        return self._d

    @staticmethod
    def from_array(array):
        """ Create a quaternion from a length 4 array
        """
        a, b, c, d = (float(v) for v in np.asarray(array, dtype=np.float64).reshape(4))
        return Quaternion(a, b, c, d)

    @staticmethod
    def from_complex(w, jk=0.0):
        """ Create Co + jk·ȷ from complex parts, so that ζ = w + (jk)ȷ
        """
        w = complex(w)
        jk = complex(jk)
        return Quaternion(w.real, w.imag, jk.real, jk.imag)

    @staticmethod
    def coerce(value):
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, complex, np.number)):
            value = complex(value)
            return Quaternion(value.real, value.imag)
        return Quaternion.from_array(value)

    def as_array(self):
        return np.array([self._a, self._b, self._c, self._d])

    def as_tuple(self):
        return (self._a, self._b, self._c, self._d)

    @property
    def co(self):
        """ The complex part Co(ζ) = a + ıb
        """
        return complex(self._a, self._b)

    def norm_squared(self):
        return float(q_norm2(self.as_array()))

    def conjugate(self):
        return Quaternion(self._a, -self._b, -self._c, -self._d)

    def inverse(self):
        return inv(self)

    def is_close(self, other, tol=1e-12):
        """ Whether the Euclidean distance to other is below tol
        """
        other = Quaternion.coerce(other)
        return float(np.sqrt(q_norm2(self.as_array() - other.as_array()))) < tol

    def __abs__(self):
        return float(np.sqrt(q_norm2(self.as_array())))

    def __add__(self, other):
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion.from_array(self.as_array() + other.as_array())

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion.from_array(self.as_array() - other.as_array())

    def __rsub__(self, other):
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self._a, -self._b, -self._c, -self._d)

    def __mul__(self, other):
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Quaternion.from_array(self.as_array() / float(other))
        try:
            other = Quaternion.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mul(self, inv(other))

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "Quaternion(%r, %r, %r, %r)" % self.as_tuple()

    def __str__(self):
        return "%g%+gi%+gj%+gk" % self.as_tuple()


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


QuaternionParts = namedtuple('QuaternionParts', ['re', 'im1', 'im2', 'im3', 'co', 'jkpart_norm'])


def mul(x, y):
    """ Hamilton product x·y with ıȷ = k, ȷk = ı, kı = ȷ

    :param x: Left factor.
    :param y: Right factor.
    :rtype: Quaternion
    """
    return Quaternion.from_array(q_mul(as_quaternion_array(x), as_quaternion_array(y)))


def inv(x):
    """ Multiplicative inverse ζ⁻¹ = ζ̄/|ζ|²

    :raises ZeroDivisionError: if |x|² is zero (including underflow).
    """
    array = as_quaternion_array(x)
    if q_norm2(array) == 0.0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return Quaternion.from_array(q_inv(array))


def parts(x):
    """ Split a quaternion into the components used by the state dictionary

    :rtype: QuaternionParts with re, im1, im2, im3, the complex part co = a + ıb
        and jkpart_norm = |ζ − Co(ζ)|.
    """
    x = Quaternion.coerce(x)
    return QuaternionParts(
        x.a, x.b, x.c, x.d, complex(x.a, x.b), float(np.hypot(x.c, x.d)))


def unit_exp(axis, theta):
    """ The unit quaternion cos θ + u sin θ for u one of ı, ȷ, k

    :param axis: 'i', 'j' or 'k'.
    :param theta: Angle in radians.
    """
    return Quaternion.from_array(q_exp(axis, float(theta)))
