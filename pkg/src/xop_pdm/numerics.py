"""Small numerical kernel: dense polynomials, SVD null spaces, adaptive
quadrature and a lowest-k symmetric tridiagonal eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate as _integrate
from scipy import linalg as _linalg


# smallest useful stebz tolerance; graded matrices then keep small eigenvalues accurate
_BISECTION_TOL = 2 * np.finfo(float).tiny


class ConvergenceError(RuntimeError):
    """Raised when an iterative kernel fails to reach its tolerance."""


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial stored in ascending order, ``coeffs[k]`` multiplies ``g**k``.

    Trailing zeros are stripped on construction, so ``Polynomial([0])`` is the
    zero polynomial and ``degree`` is ``len(coeffs) - 1`` otherwise.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        c = [float(v) for v in coeffs] or [0.0]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        if self.is_zero:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def __call__(self, x):
        return poly_eval(self, x)

    def deriv(self) -> "Polynomial":
        return poly_derivative(self)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(P.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(P.polysub(self.coeffs, other.coeffs))

    def scale(self, c: float) -> "Polynomial":
        return Polynomial([c * v for v in self.coeffs])

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


def poly_eval(p: Polynomial, x):
    """Horner evaluation; works elementwise on arrays."""
    x = np.asarray(x, dtype=float)
    acc = np.zeros_like(x) + p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    return acc if acc.ndim else float(acc)


def poly_derivative(p: Polynomial) -> Polynomial:
    if len(p.coeffs) == 1:
        return Polynomial([0.0])
    return Polynomial(P.polyder(p.coeffs))


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial(P.polymul(p.coeffs, q.coeffs))


def nullspace(M, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis of ``ker M``.

    A singular value counts as zero when it is at most ``tol * sigma_max``.
    Basis vectors are returned by ascending singular value (structurally
    zero directions, i.e. the extra columns of a wide matrix, come first).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.atleast_2d(np.asarray(M, dtype=float))
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    rows, cols = A.shape
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    smax = s.max() if s.size else 0.0
    # singular value attached to each right singular vector
    sv = np.zeros(cols)
    sv[: s.size] = s
    if smax == 0.0:
        null_idx = list(range(cols))
    else:
        null_idx = [i for i in range(cols) if sv[i] <= tol * smax]
    null_idx.sort(key=lambda i: (sv[i], -i))
    return [vh[i].copy() for i in null_idx]


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2**20

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    points: Sequence[float] | None = None,
) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    ``points`` are optional interior breakpoints (peaks, kinks). Raises
    :class:`ConvergenceError` if the final error estimate exceeds
    ``max(abs_tol, rel_tol * |result|)``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    pts = None
    if points is not None:
        pts = sorted(p for p in points if a < p < b) or None
    value, err, info = _integrate.quad(
        f, a, b,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, points=pts, full_output=1,
    )[:3]
    if not math.isfinite(value) or err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] did not converge: value={value!r}, "
            f"error estimate={err:.3e}, subintervals={info.get('last')}"
        )
    return float(value)


@dataclass(frozen=True)
class TridiagonalSymmetric:
    """Symmetric tridiagonal matrix held as its diagonal and one off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or d.size < 2:
            raise ValueError("need at least a 2x2 matrix")
        if e.shape != (d.size - 1,):
            raise ValueError("offdiag must have length len(diag) - 1")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return self.diag.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def norm(self) -> float:
        """Infinity norm (max absolute row sum)."""
        rows = np.abs(self.diag).copy()
        rows[:-1] += np.abs(self.offdiag)
        rows[1:] += np.abs(self.offdiag)
        return float(rows.max())

    def shifted(self, c: float) -> "TridiagonalSymmetric":
        return TridiagonalSymmetric(self.diag + c, self.offdiag)


def eig_tridiag_lowest(T: TridiagonalSymmetric, k: int) -> list[tuple[float, np.ndarray]]:
    """The ``k`` algebraically smallest eigenpairs of ``T``, ascending.

    Bisection plus inverse iteration (LAPACK ``stebz``/``stein``). Each vector
    has unit norm and its first non-negligible component positive. Raises
    :class:`ConvergenceError` if a residual exceeds ``1e-10 * ||T||``.
    """
    n = T.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    try:
        w, v = _linalg.eigh_tridiagonal(
            T.diag, T.offdiag, select="i", select_range=(0, k - 1),
            lapack_driver="stebz", tol=_BISECTION_TOL,
        )
    except _linalg.LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigensolve failed (N={n}, k={k}): {exc}") from exc

    tnorm = T.norm()
    pairs = []
    for j in range(k):
        vec = v[:, j] / np.linalg.norm(v[:, j])
        big = np.flatnonzero(np.abs(vec) > 1e-12 * np.abs(vec).max())
        if vec[big[0]] < 0:
            vec = -vec
        res = np.linalg.norm(T.matvec(vec) - w[j] * vec)
        if res > 1e-10 * tnorm:
            raise ConvergenceError(
                f"eigenpair {j} residual {res:.3e} exceeds 1e-10*||T|| = {1e-10 * tnorm:.3e} "
                f"(N={n}, eigenvalue={w[j]!r})"
            )
        pairs.append((float(w[j]), vec))
    return pairs
