"""Rational transfer evaluation, affine parameter-varying models, frequency grids.

Everything downstream works on 2x2 (or block-stacked 2n x 2n) complex
admittance matrices sampled at s = j*omega.  This module provides the
scalar rational arithmetic used to assemble those matrices, the matrix
containers that evaluate them, and the affine-in-parameters wrapper
``AffineLpvModel`` for models of the form  H(gamma, s) = H0(s) + sum_k
gamma_k * Hk(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = [
    "NumericalEvaluationError",
    "RationalTransfer",
    "TransferMatrix",
    "RationalMatrix",
    "InverseAffineMatrix",
    "RotatedMatrix",
    "AffineLpvModel",
    "eval_transfer",
    "FrequencyGrid",
    "make_log_grid",
]

# Relative threshold for declaring an evaluation point to sit on a pole.
POLE_RTOL = 1e-12


class NumericalEvaluationError(ArithmeticError):
    """A transfer evaluation hit a pole or a singular matrix.

    Carries the offending frequency so callers can report it.
    """

    def __init__(self, message: str, omega: float | None = None):
        if omega is not None:
            message = f"{message} (omega = {omega!r} rad/s)"
        super().__init__(message)
        self.omega = omega


def _trim(coeffs) -> tuple[float, ...]:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=float)).ravel()
    n = len(arr)
    while n > 1 and arr[n - 1] == 0.0:
        n -= 1
    return tuple(arr[:n])


@dataclass(frozen=True)
class RationalTransfer:
    """Scalar rational function of s with real coefficients.

    Coefficients are stored in ascending powers of s.  Arithmetic keeps
    exact coefficient lists (no cancellation of common factors); degrees
    stay small for the admittance models built here.
    """

    num: tuple[float, ...]
    den: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "num", _trim(self.num))
        object.__setattr__(self, "den", _trim(self.den))
        if all(c == 0.0 for c in self.den):
            raise ValueError("denominator is identically zero")

    @staticmethod
    def constant(value: float) -> "RationalTransfer":
        return RationalTransfer((float(value),))

    @staticmethod
    def variable() -> "RationalTransfer":
        """The Laplace variable s."""
        return RationalTransfer((0.0, 1.0))

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    @property
    def is_proper(self) -> bool:
        return self.num_degree <= self.den_degree

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RationalTransfer | None":
        if isinstance(other, RationalTransfer):
            return other
        if isinstance(other, (int, float)):
            return RationalTransfer.constant(float(other))
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        num = npoly.polyadd(
            npoly.polymul(self.num, rhs.den), npoly.polymul(rhs.num, self.den)
        )
        return RationalTransfer(num, npoly.polymul(self.den, rhs.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalTransfer(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalTransfer(
            npoly.polymul(self.num, rhs.num), npoly.polymul(self.den, rhs.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalTransfer(
            npoly.polymul(self.num, rhs.den), npoly.polymul(self.den, rhs.num)
        )

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs / self

    # -- evaluation -------------------------------------------------------

    def __call__(self, s):
        """Evaluate at complex s (scalar or array), raising on poles."""
        s = np.asarray(s, dtype=complex)
        nv = npoly.polyval(s, np.asarray(self.num))
        dv = npoly.polyval(s, np.asarray(self.den))
        bad = np.abs(dv) <= POLE_RTOL * np.abs(nv)
        bad |= (dv == 0.0) & (nv == 0.0)
        if np.any(bad):
            s_bad = np.asarray(s)[bad] if s.ndim else s
            omega = float(np.atleast_1d(s_bad).flat[0].imag)
            raise NumericalEvaluationError("evaluation at a pole", omega=omega)
        out = nv / dv
        return complex(out) if s.ndim == 0 else out

    def at_jomega(self, omega):
        return self(1j * np.asarray(omega, dtype=float))


class TransferMatrix:
    """Anything that evaluates to a complex matrix at s = j*omega."""

    shape: tuple[int, int]

    def eval(self, omega: float) -> np.ndarray:
        raise NotImplementedError

    def eval_many(self, omegas) -> np.ndarray:
        omegas = np.asarray(omegas, dtype=float)
        out = np.empty(omegas.shape + self.shape, dtype=complex)
        for idx, w in np.ndenumerate(omegas):
            out[idx] = self.eval(float(w))
        return out


class RationalMatrix(TransferMatrix):
    """Grid of ``RationalTransfer`` entries."""

    def __init__(self, entries):
        rows = tuple(tuple(self._as_rt(e) for e in row) for row in entries)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("entries must form a rectangular grid")
        self.entries = rows
        self.shape = (len(rows), len(rows[0]))

    @staticmethod
    def _as_rt(entry) -> RationalTransfer:
        if isinstance(entry, RationalTransfer):
            return entry
        return RationalTransfer.constant(float(entry))

    def eval(self, omega: float) -> np.ndarray:
        return self.eval_many(omega)

    def eval_many(self, omegas) -> np.ndarray:
        omegas = np.asarray(omegas, dtype=float)
        out = np.empty(omegas.shape + self.shape, dtype=complex)
        s = 1j * omegas
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                out[..., i, j] = entry(s)
        return out


class InverseAffineMatrix(TransferMatrix):
    """Matrix-inverse evaluator: stores M(s) = M0 + s*M1, evaluates inv(M(jw)).

    Used for grid admittances defined as the inverse of an affine-in-s
    impedance matrix; the inverse is taken numerically per frequency.
    """

    def __init__(self, const, slope):
        self.const = np.asarray(const, dtype=float)
        self.slope = np.asarray(slope, dtype=float)
        if self.const.shape != self.slope.shape or self.const.ndim != 2:
            raise ValueError("const and slope must be equal-shape square matrices")
        if self.const.shape[0] != self.const.shape[1]:
            raise ValueError("matrix must be square")
        self.shape = self.const.shape

    def pre_inverse(self, omega: float) -> np.ndarray:
        return self.const + 1j * float(omega) * self.slope

    def eval(self, omega: float) -> np.ndarray:
        m = self.pre_inverse(omega)
        try:
            inv = np.linalg.inv(m)
        except np.linalg.LinAlgError as exc:
            raise NumericalEvaluationError(f"singular matrix: {exc}", omega=omega)
        if not np.all(np.isfinite(inv)):
            raise NumericalEvaluationError("singular matrix (non-finite inverse)", omega=omega)
        return inv


class RotatedMatrix(TransferMatrix):
    """Frame-referred matrix J(theta) * inner(s) * J(-theta)."""

    def __init__(self, inner: TransferMatrix, theta: float):
        if inner.shape != (2, 2):
            raise ValueError("rotation applies to 2x2 matrices only")
        self.inner = inner
        self.theta = float(theta)
        self.shape = inner.shape
        c, s = math.cos(self.theta), math.sin(self.theta)
        self._jrot = np.array([[c, -s], [s, c]])

    def eval(self, omega: float) -> np.ndarray:
        return self._jrot @ self.inner.eval(omega) @ self._jrot.T

    def eval_many(self, omegas) -> np.ndarray:
        return self._jrot @ self.inner.eval_many(omegas) @ self._jrot.T


@dataclass(frozen=True)
class AffineLpvModel:
    """Transfer matrix affine in scheduling parameters.

    ``monomials`` optionally records, per term, the (i_d0, i_q0) exponent
    pair that generates the parameter; the identity map is ((1,0),(0,1)).
    """

    base: TransferMatrix
    terms: tuple[TransferMatrix, ...]
    parameter_names: tuple[str, ...]
    monomials: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "parameter_names", tuple(self.parameter_names))
        if len(self.terms) != len(self.parameter_names):
            raise ValueError("one name per affine term required")
        for t in self.terms:
            if t.shape != self.base.shape:
                raise ValueError("all member matrices must share one shape")
        if self.monomials is not None:
            mono = tuple(tuple(int(p) for p in m) for m in self.monomials)
            if len(mono) != len(self.terms):
                raise ValueError("one monomial per affine term required")
            object.__setattr__(self, "monomials", mono)

    @property
    def shape(self) -> tuple[int, int]:
        return self.base.shape

    @property
    def n_parameters(self) -> int:
        return len(self.terms)

    def gamma_at(self, i_d0: float, i_q0: float) -> np.ndarray:
        """Map an operating point to the parameter vector via the monomials."""
        if self.monomials is None:
            raise ValueError("model carries no monomial map")
        return np.array(
            [i_d0**pd * i_q0**pq for (pd, pq) in self.monomials], dtype=float
        )


def eval_transfer(model: AffineLpvModel, gamma, omega: float) -> np.ndarray:
    """Evaluate H0(jw) + sum_k gamma_k * Hk(jw)."""
    gamma = np.asarray(gamma, dtype=float).ravel()
    if gamma.size != model.n_parameters:
        raise ValueError(
            f"gamma has {gamma.size} entries, model has {model.n_parameters} terms"
        )
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    out = np.array(model.base.eval(omega), dtype=complex)
    for g, term in zip(gamma, model.terms):
        if g != 0.0:
            out += g * term.eval(omega)
    return out


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive frequency samples, in rad/s."""

    omegas: np.ndarray
    spacing: str = "log"

    def __post_init__(self):
        arr = np.asarray(self.omegas, dtype=float)
        object.__setattr__(self, "omegas", arr)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("grid needs at least one sample")
        if np.any(arr <= 0.0):
            raise ValueError("all frequency samples must be positive")
        if np.any(np.diff(arr) <= 0.0):
            raise ValueError("frequency samples must be strictly increasing")

    def __len__(self) -> int:
        return int(self.omegas.size)

    def __iter__(self):
        return iter(self.omegas)


def make_log_grid(start: float, stop: float, count: int) -> FrequencyGrid:
    """Log-spaced grid from start to stop inclusive, in rad/s."""
    if start <= 0.0:
        raise ValueError("start must be positive")
    if stop <= start:
        raise ValueError("stop must exceed start")
    if count < 2:
        raise ValueError("count must be at least 2")
    return FrequencyGrid(np.geomspace(start, stop, int(count)), spacing="log")
