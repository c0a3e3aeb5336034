"""Exact Gaussian-integer arrays with a symbolic scale.

A :class:`GaussianArray` holds ``(re + i*im) * length**(-p) * 2**(-e/2)`` with
integer ``re``/``im`` arrays, an integer power ``p`` of a named length (the
mesh that the difference quotients divide by) and an integer power ``e`` of
``2**(-1/2)`` (the split normalization).  Every operator in this package has
entries of that form, so identities between them can be checked with ``==``
on integers instead of a tolerance.

The class implements just the array protocol the stencil kernels use:
``+``, ``-``, multiplication by Gaussian integers (scalars or integer arrays),
division by the length, ``roll``, indexing and ``reshape``.
"""

from __future__ import annotations

import numbers

import numpy as np
import scipy.sparse as sp


class ExactnessError(ValueError):
    """An operation would leave the Gaussian-integer lattice."""


def _as_gaussian_int(c) -> tuple[int, int]:
    c = complex(c)
    if c.real != int(c.real) or c.imag != int(c.imag):
        raise ExactnessError(f"{c!r} is not a Gaussian integer")
    return int(c.real), int(c.imag)


class GaussianArray:
    __array_ufunc__ = None  # ndarray (op) GaussianArray defers to the reflected method

    def __init__(self, re, im=None, p: int = 0, length: float | None = None, e: int = 0):
        re = np.asarray(re, dtype=np.int64)
        im = np.zeros_like(re) if im is None else np.asarray(im, dtype=np.int64)
        if re.shape != im.shape:
            raise ValueError("real and imaginary parts differ in shape")
        if p and length is None:
            raise ValueError("a nonzero power needs a length")
        self.re = re
        self.im = im
        self.p = int(p)
        self.length = float(length) if p else None
        self.e = int(e)

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_complex(cls, values) -> "GaussianArray":
        """Wrap integer-valued complex data; raises if any entry is not integral."""
        values = np.asarray(values)
        re = np.real(values)
        im = np.imag(values)
        if not (np.all(re == np.round(re)) and np.all(im == np.round(im))):
            raise ExactnessError("values are not Gaussian integers")
        return cls(np.round(re).astype(np.int64), np.round(im).astype(np.int64))

    @classmethod
    def identity(cls, n: int) -> "GaussianArray":
        return cls(np.eye(n, dtype=np.int64))

    def _like(self, re, im, p=None, length=None, e=None) -> "GaussianArray":
        return GaussianArray(
            re,
            im,
            self.p if p is None else p,
            self.length if length is None else length,
            self.e if e is None else e,
        )

    # -- array protocol -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.re.shape

    @property
    def ndim(self) -> int:
        return self.re.ndim

    def __len__(self):
        return len(self.re)

    def __getitem__(self, key) -> "GaussianArray":
        return self._like(self.re[key], self.im[key])

    def __setitem__(self, key, value):
        if not isinstance(value, GaussianArray):
            value = GaussianArray.from_complex(value)
        if value.is_zero():
            self.re[key] = 0
            self.im[key] = 0
            return
        if self.is_zero():
            self.p, self.length, self.e = value.p, value.length, value.e
        a, b = _align(self, value)
        self.re, self.im, self.p, self.length, self.e = a.re, a.im, a.p, a.length, a.e
        self.re[key] = b.re
        self.im[key] = b.im

    def reshape(self, *shape) -> "GaussianArray":
        return self._like(self.re.reshape(*shape), self.im.reshape(*shape))

    def roll(self, shift: int, axis: int) -> "GaussianArray":
        return self._like(np.roll(self.re, shift, axis), np.roll(self.im, shift, axis))

    def copy(self) -> "GaussianArray":
        return self._like(self.re.copy(), self.im.copy())

    @property
    def T(self) -> "GaussianArray":
        return self._like(self.re.T, self.im.T)

    def conj(self) -> "GaussianArray":
        return self._like(self.re, -self.im)

    def is_zero(self) -> bool:
        return not (self.re.any() or self.im.any())

    def scale(self) -> float:
        s = 2.0 ** (-self.e / 2)
        if self.p:
            s *= self.length ** (-self.p)
        return s

    def to_complex(self) -> np.ndarray:
        return (self.re + 1j * self.im) * self.scale()

    def __array__(self, dtype=None, copy=None):
        out = self.to_complex()
        return out if dtype is None else out.astype(dtype)

    def __repr__(self):
        return (
            f"GaussianArray(shape={self.shape}, p={self.p}, length={self.length}, e={self.e})"
        )

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self):
        return self._like(-self.re, -self.im)

    def __add__(self, other):
        a, b = _align(self, _coerce(other))
        return a._like(a.re + b.re, a.im + b.im)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = _align(self, _coerce(other))
        return a._like(a.re - b.re, a.im - b.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianArray):
            a = self.re * other.re - self.im * other.im
            b = self.re * other.im + self.im * other.re
            return _product_scale(self, other, a, b)
        if isinstance(other, np.ndarray):
            if not np.issubdtype(other.dtype, np.integer):
                raise ExactnessError("exact arrays multiply only by integer arrays")
            return self._like(self.re * other, self.im * other)
        if isinstance(other, numbers.Number):
            x, y = _as_gaussian_int(other)
            return self._like(x * self.re - y * self.im, x * self.im + y * self.re)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, length):
        if not isinstance(length, numbers.Real):
            return NotImplemented
        length = float(length)
        if self.p and self.length != length:
            if self.is_zero():
                return self._like(self.re, self.im, p=1, length=length)
            raise ExactnessError(
                f"cannot divide an array scaled by 1/{self.length} by a different length {length}"
            )
        return self._like(self.re, self.im, p=self.p + 1, length=length)

    def mul_root2_power(self, k: int) -> "GaussianArray":
        """Multiply by ``2**(k/2)`` exactly."""
        return self._like(self.re, self.im, e=self.e - k)

    def __matmul__(self, other):
        if not isinstance(other, GaussianArray):
            return NotImplemented
        if self.ndim != 2 or other.ndim != 2:
            raise ValueError("matmul needs two matrices")
        # integer products go through sparse kernels; dense int matmul has no BLAS path
        ar, ai = sp.csr_array(self.re), sp.csr_array(self.im)
        br, bi = sp.csr_array(other.re), sp.csr_array(other.im)
        re = (ar @ br - ai @ bi).toarray()
        im = (ar @ bi + ai @ br).toarray()
        return _product_scale(self, other, re, im)

    def __eq__(self, other):
        return exact_equal(self, other)

    __hash__ = None


def _coerce(x) -> GaussianArray:
    if isinstance(x, GaussianArray):
        return x
    return GaussianArray.from_complex(x)


def _product_scale(a: GaussianArray, b: GaussianArray, re, im) -> GaussianArray:
    if a.p and b.p and a.length != b.length:
        raise ExactnessError("product of arrays scaled by different lengths")
    length = a.length if a.p else b.length
    return GaussianArray(re, im, a.p + b.p, length, a.e + b.e)


def _align(a: GaussianArray, b: GaussianArray) -> tuple[GaussianArray, GaussianArray]:
    """Bring ``a`` and ``b`` to a common symbolic scale."""
    if b.is_zero():
        return a, GaussianArray(np.zeros_like(b.re), None, a.p, a.length, a.e)
    if a.is_zero():
        return GaussianArray(np.zeros_like(a.re), None, b.p, b.length, b.e), b
    if a.p != b.p or (a.p and a.length != b.length):
        raise ExactnessError(
            f"incompatible scales: length^-{a.p} ({a.length}) vs length^-{b.p} ({b.length})"
        )
    if (a.e - b.e) % 2:
        raise ExactnessError("sum mixes rational and irrational multiples of sqrt(2)")
    if a.e < b.e:
        f = 2 ** ((b.e - a.e) // 2)
        a = a._like(a.re * f, a.im * f, e=b.e)
    elif b.e < a.e:
        f = 2 ** ((a.e - b.e) // 2)
        b = b._like(b.re * f, b.im * f, e=a.e)
    return a, b


def exact_equal(a, b) -> bool:
    """Symbolic equality: same scale after alignment and identical integers.

    Arrays with different powers of the length are treated as different
    expressions even if the length happens to be 1.
    """
    a, b = _coerce(a), _coerce(b)
    if a.shape != b.shape:
        return False
    try:
        a, b = _align(a, b)
    except ExactnessError:
        return False
    return bool(np.array_equal(a.re, b.re) and np.array_equal(a.im, b.im))


def is_exact(x) -> bool:
    return isinstance(x, GaussianArray)


def roll(x, shift: int, axis: int):
    """``np.roll`` that also accepts :class:`GaussianArray`."""
    if isinstance(x, GaussianArray):
        return x.roll(shift, axis)
    return np.roll(x, shift, axis)


def zeros_like(x):
    if isinstance(x, GaussianArray):
        return GaussianArray(np.zeros_like(x.re))
    return np.zeros_like(x)


def _join(arrays, combine):
    nonzero = [x for x in arrays if not x.is_zero()]
    if not nonzero:
        return GaussianArray(combine([x.re for x in arrays]))
    ref = max(nonzero, key=lambda x: x.e)
    aligned = [_align(ref, x)[1] for x in arrays]
    re = combine([x.re for x in aligned])
    im = combine([x.im for x in aligned])
    return GaussianArray(re, im, ref.p, ref.length, ref.e)


def stack(arrays, axis: int = 0):
    """``np.stack`` for lists of ndarrays or of GaussianArrays."""
    if isinstance(arrays[0], GaussianArray):
        return _join(arrays, lambda xs: np.stack(xs, axis=axis))
    return np.stack(arrays, axis=axis)


def concatenate(arrays, axis: int = 0):
    if isinstance(arrays[0], GaussianArray):
        return _join(arrays, lambda xs: np.concatenate(xs, axis=axis))
    return np.concatenate(arrays, axis=axis)


def kron(a: np.ndarray, b):
    """``np.kron(a, b)`` for an integer matrix ``a`` and a possibly exact ``b``."""
    if isinstance(b, GaussianArray):
        return b._like(np.kron(a, b.re), np.kron(a, b.im))
    return np.kron(a, b)


def mul_root2_power(x, k: int):
    """Multiply by ``2**(k/2)``; exact for GaussianArray."""
    if isinstance(x, GaussianArray):
        return x.mul_root2_power(k)
    return x * 2.0 ** (k / 2)


def to_complex(x) -> np.ndarray:
    if isinstance(x, GaussianArray):
        return x.to_complex()
    return np.asarray(x, dtype=complex)
