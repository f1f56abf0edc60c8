"""Independent oracles shared by the test modules.

Everything here is deliberately written the slow, obvious way (explicit
loops, Kronecker products, full enumerations) so that library results are
checked against code with no shared machinery.
"""

import itertools
import math

import numpy as np

SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
ID2 = np.eye(2)


def kron_chain(ops):
    out = np.array([[1.0 + 0.0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def embed(op, i, n, d=2):
    """op acting on site i of an n-site chain, identity elsewhere."""
    return kron_chain([op if k == i else np.eye(d) for k in range(n)])


def five_tuple_of_assignment(assignment):
    """Symmetrized one/two-body sums from explicit per-site (m0, m1) signs."""
    n = len(assignment)
    s0 = sum(m0 for m0, _ in assignment)
    s1 = sum(m1 for _, m1 in assignment)
    s00 = s01 = s11 = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s00 += assignment[i][0] * assignment[j][0]
            s01 += assignment[i][0] * assignment[j][1]
            s11 += assignment[i][1] * assignment[j][1]
    return (s0, s1, s00, s01, s11)


def pi_value(coeffs, assignment):
    """alpha*S0 + beta*S1 + gamma/2*S00 + delta*S01 + epsilon/2*S11."""
    a, b, g, d, e = coeffs
    s0, s1, s00, s01, s11 = five_tuple_of_assignment(assignment)
    return a * s0 + b * s1 + g * s00 / 2 + d * s01 + e * s11 / 2


def pi_min_bruteforce(coeffs, n):
    """Exact minimum of a permutation-symmetric expression over 4^n strategies."""
    best = None
    for assignment in itertools.product([(1, 1), (1, -1), (-1, 1), (-1, -1)], repeat=n):
        v = pi_value(coeffs, assignment)
        if best is None or v < best:
            best = v
    return best


def dicke_dense(n, k):
    """|n, k down spins> as an explicit symmetric sum in the 2^n space."""
    vec = np.zeros(2**n, dtype=complex)
    for positions in itertools.combinations(range(n), k):
        idx = 0
        for i in range(n):
            idx = 2 * idx + (1 if i in positions else 0)
        vec[idx] = 1.0
    return vec / np.linalg.norm(vec)


def dicke_embedding(n):
    """(2^n, n+1) isometry sending Dicke basis vectors into the full space."""
    cols = [dicke_dense(n, k) for k in range(n + 1)]
    return np.stack(cols, axis=1)


def partial_trace_loops(mat, da, db, keep):
    """Index-loop partial trace of a (da*db, da*db) matrix."""
    mat = np.asarray(mat).reshape(da, db, da, db)
    if keep == "A":
        out = np.zeros((da, da), dtype=complex)
        for i in range(da):
            for j in range(da):
                for m in range(db):
                    out[i, j] += mat[i, m, j, m]
    else:
        out = np.zeros((db, db), dtype=complex)
        for m in range(db):
            for p in range(db):
                for i in range(da):
                    out[m, p] += mat[i, m, i, p]
    return out


def shannon(probs, base=2.0):
    p = np.asarray(probs, dtype=float).reshape(-1)
    p = p[p > 0]
    return float(-(p * np.log(p)).sum() / math.log(base))


def entropy_of_matrix(rho, base=2.0):
    w = np.linalg.eigvalsh(rho)
    return shannon(np.clip(w, 0.0, None), base=base)


def ti_value_direct(n, alpha, beta, gammas, epsilons, omegas, assignment):
    """Ring expression value from explicit per-site signs, indices mod n."""
    total = 0.0
    for i in range(n):
        total += alpha * assignment[i][0] + beta * assignment[i][1]
    for k, g in enumerate(gammas, start=1):
        for i in range(n):
            total += g * assignment[i][0] * assignment[(i + k) % n][0]
    for k, e in enumerate(epsilons, start=1):
        for i in range(n):
            total += e * assignment[i][1] * assignment[(i + k) % n][1]
    for k, w in enumerate(omegas, start=1):
        for i in range(n):
            total += w * assignment[i][0] * assignment[(i + k) % n][1]
    return total


def ground_energy_power_iteration(h, iters=8000, seed=5):
    """Lowest eigenvalue by power iteration on (c - H), independent of eigh."""
    h = np.asarray(h, dtype=complex)
    shift = np.abs(h).sum(axis=1).max() + 1.0  # Gershgorin cap
    m = shift * np.eye(h.shape[0]) - h
    rng = np.random.default_rng(seed)
    v = rng.normal(size=h.shape[0]) + 1j * rng.normal(size=h.shape[0])
    v /= np.linalg.norm(v)
    for _ in range(iters):
        v = m @ v
        v /= np.linalg.norm(v)
    return float(shift - np.real(np.vdot(v, m @ v)))


def haar_vector(dim, rng):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def pure_density(amplitudes, dims):
    from bellscope.quantum import DensityOperator

    v = np.asarray(amplitudes, dtype=complex)
    return DensityOperator(dims=dims, matrix=np.outer(v, v.conj()))


def random_rank_r_state(m, n, r, rng):
    """Pure (m, n) state with exact Schmidt rank r."""
    from bellscope.quantum import StateVector

    lam = rng.uniform(0.5, 1.0, size=r)
    lam = np.sqrt(lam / lam.sum())
    left = np.linalg.qr(rng.normal(size=(m, r)) + 1j * rng.normal(size=(m, r)))[0]
    right = np.linalg.qr(rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r)))[0]
    psi = np.einsum("k,ik,jk->ij", lam, left, right).reshape(-1)
    return StateVector(dims=(m, n), amplitudes=psi)


def full_space_bell(expr, theta):
    """Site-by-site Kronecker build of the 2^n Bell operator."""
    n = expr.n
    m0 = SZ
    m1 = math.cos(theta) * SZ + math.sin(theta) * SX
    a, b, g, d, e = (float(v) for v in expr.coefficients())
    out = np.zeros((2**n, 2**n), dtype=complex)
    for i in range(n):
        out += a * embed(m0, i, n) + b * embed(m1, i, n)
        for j in range(n):
            if i == j:
                continue
            out += g / 2 * embed(m0, i, n) @ embed(m0, j, n)
            out += d * embed(m0, i, n) @ embed(m1, j, n)
            out += e / 2 * embed(m1, i, n) @ embed(m1, j, n)
    return out
