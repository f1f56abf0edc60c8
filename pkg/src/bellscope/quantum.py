"""Finite-dimensional quantum states and bipartite entanglement measures.

Conventions
-----------
* A bipartite system ``dims = (m, n)`` orders subsystem A first (slow index):
  the composite basis index is ``i * n + j`` for ``|i>_A |j>_B``.
* Entropies default to base 2 (bits); every entropy-like routine takes an
  explicit ``base`` argument.  The Haar-average experiment reports natural
  log, matching the asymptotic formula it is checked against.
* Density operators are validated on construction; eigenvalues in
  ``[-1e-10, 0)`` are clipped to zero (recorded in ``was_clipped``), anything
  more negative is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import hermitian_eigen, svd

__all__ = [
    "StateVector",
    "DensityOperator",
    "SchmidtData",
    "PPTReport",
    "max_entangled",
    "haar_state",
    "schmidt_decompose",
    "partial_trace",
    "partial_transpose",
    "ppt_report",
    "negativity",
    "log_negativity",
    "vn_entropy",
    "renyi_entropy",
    "entanglement_entropy",
    "mutual_information",
    "page_experiment",
    "state_to_json",
    "state_from_json",
]

NORM_TOL = 1e-10
EIG_CLIP = 1e-10  # eigenvalues in [-EIG_CLIP, 0) are treated as rounding noise
RANK_TOL = 1e-10  # relative cutoff used for ranks and Schmidt coefficients


def _as_dims(dims):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"invalid subsystem dimensions {dims}")
    return dims


@dataclass
class StateVector:
    """Pure state on a tensor product of finite-dimensional factors.

    Parameters
    ----------
    dims : tuple of int
        Subsystem dimensions, leftmost factor slowest.
    amplitudes : ndarray
        Complex amplitudes of length ``prod(dims)``, unit norm to 1e-10.
    """

    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        self.dims = _as_dims(self.dims)
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != math.prod(self.dims):
            raise ValueError(
                f"amplitude length {amp.size} does not match dims {self.dims}"
            )
        nrm = float(np.linalg.norm(amp))
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector is not normalised: |psi| = {nrm!r}")
        self.amplitudes = amp

    @property
    def dim(self):
        return self.amplitudes.size

    def density(self):
        """Rank-one density operator |psi><psi|."""
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityOperator(self.dims, rho, validate=False)


@dataclass
class DensityOperator:
    """Density operator with subsystem bookkeeping.

    Validation checks Hermiticity (1e-12 relative), unit trace (1e-10) and
    positivity: eigenvalues below ``-1e-10`` raise, eigenvalues in
    ``[-1e-10, 0)`` are clipped to zero and the operator renormalised, with
    ``was_clipped`` set so callers can tell repaired inputs apart.
    """

    dims: tuple
    matrix: np.ndarray
    was_clipped: bool = field(default=False)

    def __init__(self, dims, matrix, validate=True):
        self.dims = _as_dims(dims)
        m = np.asarray(matrix, dtype=complex)
        d = math.prod(self.dims)
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match dims {self.dims}")
        self.was_clipped = False
        if validate:
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > NORM_TOL:
                raise ValueError(f"trace is {tr!r}, expected 1")
            w, v = hermitian_eigen(m)  # rejects non-Hermitian input
            if w[0] < -EIG_CLIP:
                raise ValueError(
                    f"matrix is not positive semidefinite: min eigenvalue {w[0]:.3e}"
                )
            if w[0] < 0.0:
                w = np.clip(w, 0.0, None)
                m = (v * w) @ v.conj().T
                m /= np.trace(m).real
                self.was_clipped = True
        self.matrix = m

    @property
    def dim(self):
        return self.matrix.shape[0]

    def eigenvalues(self):
        """Spectrum, ascending, clipped to be nonnegative."""
        w, _ = hermitian_eigen(self.matrix)
        return np.clip(w, 0.0, None)

    @staticmethod
    def maximally_mixed(dims):
        dims = _as_dims(dims)
        d = math.prod(dims)
        return DensityOperator(dims, np.eye(d) / d, validate=False)


@dataclass
class SchmidtData:
    """Schmidt decomposition of a bipartite pure state.

    ``coefficients`` are nonnegative, descending, with squares summing to 1;
    ``left[:, i]`` / ``right[:, i]`` are the orthonormal Schmidt vectors and
    ``rank`` counts coefficients above the relative cutoff 1e-10.
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray
    rank: int


@dataclass
class PPTReport:
    """Outcome of the positive-partial-transpose test."""

    eigenvalues: np.ndarray
    negative_count: int
    min_eigenvalue: float
    entangled: bool


def max_entangled(d):
    """Maximally entangled state on C^d x C^d: sum_i |ii> / sqrt(d)."""
    if d < 2:
        raise ValueError(f"need local dimension at least 2, got {d}")
    amp = np.zeros(d * d, dtype=complex)
    amp[:: d + 1] = 1.0 / math.sqrt(d)
    return StateVector((d, d), amp)


def haar_state(m, n, rng):
    """Haar-random pure state on C^m x C^n.

    Drawn by normalising a vector of i.i.d. standard complex Gaussians,
    which is exactly Haar-distributed (unitary invariance of the Gaussian).
    """
    amp = rng.complex_normal(m * n)
    amp /= np.linalg.norm(amp)
    return StateVector((m, n), amp)


def _bipartition(state, bipartition):
    if bipartition is not None:
        m, n = int(bipartition[0]), int(bipartition[1])
    elif len(state.dims) == 2:
        m, n = state.dims
    else:
        raise ValueError("state is not bipartite; pass bipartition=(m, n)")
    if m * n != math.prod(state.dims):
        raise ValueError(
            f"bipartition {m}x{n} does not match total dimension {math.prod(state.dims)}"
        )
    return m, n


def schmidt_decompose(psi, bipartition=None):
    """Schmidt decomposition across an (m, n) bipartition.

    The amplitude vector is reshaped to an m x n matrix (A slow) and an SVD
    taken; singular values are the Schmidt coefficients.
    """
    m, n = _bipartition(psi, bipartition)
    mat = psi.amplitudes.reshape(m, n)
    u, s, v = svd(mat)
    rank = int(np.count_nonzero(s > RANK_TOL * s[0])) if s.size and s[0] > 0 else 0
    return SchmidtData(
        coefficients=s[:rank], left=u[:, :rank], right=v.conj()[:, :rank], rank=rank
    )


def schmidt_rank(psi, bipartition=None, tol=RANK_TOL):
    """Count of Schmidt coefficients above ``tol`` (relative to the largest)."""
    s = schmidt_decompose(psi, bipartition).coefficients
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def separable_pure(psi, bipartition=None, tol=RANK_TOL):
    """A pure state factorises across the cut iff its Schmidt rank is one."""
    return schmidt_rank(psi, bipartition, tol) == 1


def partial_trace(rho, keep, bipartition=None):
    """Trace out one side of a bipartite density operator.

    Parameters
    ----------
    keep : {"A", "B", 0, 1}
        Which subsystem survives.
    """
    if isinstance(rho, StateVector):
        rho = rho.density()
    m, n = _bipartition(rho, bipartition)
    r = rho.matrix.reshape(m, n, m, n)
    if keep in ("A", 0):
        out = np.einsum("imjm->ij", r)
        dims = (m,)
    elif keep in ("B", 1):
        out = np.einsum("imin->mn", r)
        dims = (n,)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityOperator(dims, out, validate=False)


def partial_transpose(rho, side="B", bipartition=None):
    """Partial transpose on one tensor factor."""
    if isinstance(rho, StateVector):
        rho = rho.density()
    m, n = _bipartition(rho, bipartition)
    r = rho.matrix.reshape(m, n, m, n)
    if side in ("A", 0):
        r = r.transpose(2, 1, 0, 3)
    elif side in ("B", 1):
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return r.reshape(m * n, m * n)


def ppt_report(rho, side="B", bipartition=None, tol=1e-10):
    """Spectrum of the partial transpose and the resulting verdict.

    A pure state of Schmidt rank r yields exactly r(r-1)/2 negative
    eigenvalues; any eigenvalue below ``-tol`` certifies entanglement.
    """
    pt = partial_transpose(rho, side=side, bipartition=bipartition)
    w, _ = hermitian_eigen(pt)
    neg = int(np.count_nonzero(w < -tol))
    return PPTReport(
        eigenvalues=w,
        negative_count=neg,
        min_eigenvalue=float(w[0]),
        entangled=bool(w[0] < -tol),
    )


def negativity(rho, side="B", bipartition=None):
    """Entanglement negativity: total weight of negative PT eigenvalues."""
    pt = partial_transpose(rho, side=side, bipartition=bipartition)
    w, _ = hermitian_eigen(pt)
    return float(-w[w < 0.0].sum())


def log_negativity(rho, side="B", bipartition=None):
    """Logarithmic negativity log2(2 N + 1) = log2 ||rho^T_B||_1."""
    return math.log2(2.0 * negativity(rho, side=side, bipartition=bipartition) + 1.0)


def _entropy_of_probs(p, base):
    p = p[p > 0.0]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log(p)).sum() / math.log(base))


def vn_entropy(rho, base=2):
    """Von Neumann entropy -tr(rho log rho)."""
    if isinstance(rho, StateVector):
        return 0.0
    return _entropy_of_probs(rho.eigenvalues(), base)


def renyi_entropy(rho, alpha, base=2):
    """Renyi entropy log(tr rho^alpha) / (1 - alpha).

    ``alpha = 0`` gives log(rank) (rank at relative tolerance 1e-10),
    ``alpha = 1`` the von Neumann limit, ``alpha = inf`` the min-entropy
    -log(lambda_max).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if isinstance(rho, StateVector):
        rho = rho.density()
    p = rho.eigenvalues()
    lb = math.log(base)
    if alpha == 0:
        top = p[-1]
        rank = int(np.count_nonzero(p > RANK_TOL * top)) if top > 0 else 0
        return math.log(max(rank, 1)) / lb
    if alpha == 1:
        return _entropy_of_probs(p, base)
    if math.isinf(alpha):
        return float(-math.log(p[-1]) / lb)
    p = p[p > 0.0]
    return float(math.log((p ** alpha).sum()) / ((1.0 - alpha) * lb))


def entanglement_entropy(psi, bipartition=None, base=2):
    """Entropy of entanglement of a pure state across a bipartition."""
    s = schmidt_decompose(psi, bipartition).coefficients
    return _entropy_of_probs(s * s, base)


def mutual_information(rho, bipartition=None, base=2):
    """Mutual information I(A:B) = S(A) + S(B) - S(AB)."""
    if isinstance(rho, StateVector):
        rho = rho.density()
    m, n = _bipartition(rho, bipartition)
    rho_a = partial_trace(rho, "A", (m, n))
    rho_b = partial_trace(rho, "B", (m, n))
    return vn_entropy(rho_a, base) + vn_entropy(rho_b, base) - vn_entropy(rho, base)


def page_experiment(m, n, samples, rng):
    """Monte-Carlo average entanglement of Haar-random states on C^m x C^n.

    Returns
    -------
    mean_entropy : float
        Sample mean of S(rho_A) in nats.
    std_error : float
        Standard error of that mean.
    mean_purity : float
        Sample mean of tr(rho_A^2).
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got ({m}, {n})")
    samples = int(samples)
    ent = np.empty(samples)
    pur = np.empty(samples)
    for i in range(samples):
        amp = rng.complex_normal(m * n)
        amp /= np.linalg.norm(amp)
        s = np.linalg.svd(amp.reshape(m, n), compute_uv=False)
        p = s * s
        p = p[p > 0.0]
        p /= p.sum()  # exact simplex point; m = 1 then gives S = 0 exactly
        ent[i] = float(-(p * np.log(p)).sum())
        pur[i] = float((p * p).sum())
    se = float(ent.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return float(ent.mean()), se, float(pur.mean())


# ---------------------------------------------------------------------------
# JSON wire format: {"dims": [...], "re": [...], "im": [...]}
# Vectors store amplitudes; operators store the matrix flattened row-major.


def state_to_json(obj):
    """Serialise a StateVector or DensityOperator to a JSON-ready dict."""
    if isinstance(obj, StateVector):
        flat = obj.amplitudes
    elif isinstance(obj, DensityOperator):
        flat = obj.matrix.reshape(-1)
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return {
        "dims": list(obj.dims),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def state_from_json(data):
    """Inverse of :func:`state_to_json`; length disambiguates vector/operator."""
    dims = _as_dims(data["dims"])
    flat = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
    d = math.prod(dims)
    if flat.size == d:
        return StateVector(dims, flat)
    if flat.size == d * d:
        return DensityOperator(dims, flat.reshape(d, d))
    raise ValueError(
        f"payload length {flat.size} matches neither a vector ({d}) "
        f"nor an operator ({d * d}) on dims {dims}"
    )
