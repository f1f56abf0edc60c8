"""Shared numerical kernels: Hermitian eigensolvers, SVD, bracketed scalar
minimisation, banded extreme eigenpairs, and seeded random streams.

Everything downstream funnels its linear algebra through this module so that
tolerances and conventions (eigenvalue ordering, singular-value ordering,
band storage) are fixed in one place.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.sparse
import scipy.sparse.linalg

__all__ = [
    "hermitian_eigen",
    "svd",
    "scalar_minimize",
    "lowest_eigen_banded",
    "RandomSource",
]

#: Relative tolerance for accepting a matrix as Hermitian.
HERMITICITY_TOL = 1e-12

#: Band count above which the banded extreme-eigenpair path switches from
#: LAPACK to a Krylov (Lanczos) solver.
SPARSE_EIGEN_THRESHOLD = 2000


def hermitian_eigen(matrix):
    """Full eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    matrix : array_like, shape (n, n)
        Hermitian matrix.  Hermiticity is checked entrywise to a relative
        tolerance of ``1e-12`` and violations are rejected with a
        diagnostic rather than silently symmetrised.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues in ascending order.
    v : ndarray, shape (n, n)
        Orthonormal eigenvectors; ``v[:, i]`` belongs to ``w[i]``.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 0.0)
    asym = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if asym > HERMITICITY_TOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |M - M^dag| = {asym:.3e} "
            f"exceeds {HERMITICITY_TOL:.0e} * {scale:.3e}"
        )
    return np.linalg.eigh(m)


def svd(matrix):
    """Singular value decomposition ``M = U @ diag(s) @ V.conj().T``.

    Returns
    -------
    u : ndarray
    s : ndarray
        Singular values, descending (LAPACK convention).
    v : ndarray
        Right singular vectors as columns (not the adjoint).
    """
    u, s, vh = np.linalg.svd(np.asarray(matrix), full_matrices=False)
    return u, s, vh.conj().T


def scalar_minimize(f, lo, hi, tol=1e-8, grid_points=64):
    """Minimise a scalar function on ``[lo, hi]``.

    A uniform pre-scan with at least 64 points locates the best bracket,
    then bounded Brent refinement polishes the minimiser to ``tol``.  Grid
    ties resolve toward the smaller argument.  ``f`` returning NaN anywhere
    on the scan is rejected.

    Returns
    -------
    (x, fx) : tuple of float
        Approximate minimiser and its value.
    """
    if not hi > lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    grid_points = max(int(grid_points), 64)
    xs = np.linspace(lo, hi, grid_points)
    fs = np.array([float(f(x)) for x in xs])
    if np.any(np.isnan(fs)):
        bad = xs[np.where(np.isnan(fs))[0][0]]
        raise ValueError(f"objective returned NaN at x = {bad!r}")
    i = int(np.argmin(fs))  # first minimum: ties go to smaller x
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid_points - 1)]
    best_x, best_f = float(xs[i]), float(fs[i])
    if b > a:
        res = scipy.optimize.minimize_scalar(
            f, bounds=(a, b), method="bounded", options={"xatol": tol}
        )
        fx = float(res.fun)
        if not np.isnan(fx) and fx < best_f:
            best_x, best_f = float(res.x), fx
    return best_x, best_f


def lowest_eigen_banded(bands, want_vector=True, krylov_tol=1e-7):
    """Lowest eigenpair of a real symmetric banded matrix.

    Parameters
    ----------
    bands : ndarray, shape (b + 1, n)
        Lower band storage: ``bands[i, j] = A[i + j, j]``; row 0 is the
        diagonal.
    want_vector : bool
        Also return the eigenvector.
    krylov_tol : float
        Relative accuracy of the Krylov path used for n above
        ``SPARSE_EIGEN_THRESHOLD``.

    Returns
    -------
    w : float
        Lowest eigenvalue.
    v : ndarray or None
        Corresponding unit eigenvector (sign-normalised so its largest
        entry is positive), or None if ``want_vector`` is False.
    """
    bands = np.ascontiguousarray(bands, dtype=float)
    n = bands.shape[1]
    if n <= SPARSE_EIGEN_THRESHOLD:
        if want_vector:
            w, v = scipy.linalg.eig_banded(
                bands, lower=True, select="i", select_range=(0, 0)
            )
            vec = v[:, 0]
        else:
            w = scipy.linalg.eig_banded(
                bands, lower=True, select="i", select_range=(0, 0),
                eigvals_only=True,
            )
            vec = None
    else:
        nb = bands.shape[0] - 1
        diags = [bands[0]]
        offsets = [0]
        for k in range(1, nb + 1):
            diags += [bands[k][: n - k], bands[k][: n - k]]
            offsets += [-k, k]
        a = scipy.sparse.diags(diags, offsets, shape=(n, n), format="csr")
        w_arr, v_arr = scipy.sparse.linalg.eigsh(a, k=1, which="SA", tol=krylov_tol)
        w, vec = w_arr, v_arr[:, 0]
    w = float(np.atleast_1d(w)[0])
    if vec is not None:
        j = int(np.argmax(np.abs(vec)))
        if vec[j] < 0:
            vec = -vec
        return w, vec
    return w, None


class RandomSource:
    """Seeded random stream (PCG64).  Equal seeds give bitwise-equal streams.

    Thin wrapper over :class:`numpy.random.Generator` that records the seed
    and algorithm so runs can be reproduced from logged configuration.
    """

    algorithm = "pcg64"

    def __init__(self, seed=0):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"

    @property
    def generator(self):
        """The underlying :class:`numpy.random.Generator`."""
        return self._gen

    def normal(self, size=None):
        return self._gen.standard_normal(size)

    def complex_normal(self, size=None):
        """Standard complex Gaussian: independent N(0,1) real and imaginary parts."""
        return self._gen.standard_normal(size) + 1j * self._gen.standard_normal(size)

    def uniform(self, lo=0.0, hi=1.0, size=None):
        return self._gen.uniform(lo, hi, size)

    def integers(self, lo, hi=None, size=None):
        return self._gen.integers(lo, hi, size=size)

    def spawn(self, count):
        """Derive ``count`` independent child streams, deterministically."""
        children = np.random.SeedSequence(self.seed).spawn(count)
        out = []
        for child in children:
            src = RandomSource.__new__(RandomSource)
            src.seed = self.seed
            src._gen = np.random.Generator(np.random.PCG64(child))
            out.append(src)
        return out
