"""Minimal dense linear algebra for desk-scale operators.

Everything here works on plain numpy float arrays of dimension O(10):
a cyclic-Jacobi symmetric eigensolver, eigenvalue clustering with
multiplicity detection, and a small deterministic random-vector source.
The random stream is xoshiro256** seeded through splitmix64, with
gaussians produced by Box-Muller; the algorithm is fixed so that a seed
means the same vectors everywhere.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, ValidationError

_MASK64 = (1 << 64) - 1

DEFAULT_EIG_TOL = 1e-12
DEFAULT_GAP_TOL = 1e-8
_MAX_SWEEPS = 100


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, (z ^ (z >> 31)) & _MASK64


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256:
    """xoshiro256** with splitmix64 seeding and Box-Muller gaussians."""

    def __init__(self, seed: int):
        state = seed & _MASK64
        self._s = []
        for _ in range(4):
            state, out = _splitmix64(state)
            self._s.append(out)
        self._spare = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        # 53-bit mantissa, shifted into (0, 1] so log() below is safe
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def gauss(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def gauss_vector(self, n: int) -> np.ndarray:
        return np.array([self.gauss() for _ in range(n)])

    def integers(self, low: int, high: int, count: int) -> list[int]:
        """Uniform integers in [low, high), by rejection on the top 32 bits."""
        span = high - low
        out = []
        while len(out) < count:
            out.append(low + (self.next_u64() >> 32) % span)
        return out


def stream_seed(master_seed: int, name: str) -> int:
    """Derive an independent substream seed from a master seed and a label.

    The label is hashed (sha256, first 8 bytes big-endian) and xor-ed into
    the master seed, then pushed through one splitmix64 step.
    """
    h = int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:8], "big")
    _, out = _splitmix64((master_seed ^ h) & _MASK64)
    return out


def sample_unit_vectors(n: int, count: int, seed: int) -> np.ndarray:
    """`count` unit vectors in R^n as rows, deterministic for a fixed seed."""
    if n < 1:
        raise ValidationError(f"dimension must be >= 1, got {n}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    rng = Xoshiro256(seed)
    out = np.empty((count, n))
    for k in range(count):
        while True:
            v = rng.gauss_vector(n)
            norm = math.sqrt(float(v @ v))
            if norm > 1e-8:
                break
        out[k] = v / norm
    return out


def sym_eigen(M: np.ndarray, tol: float = DEFAULT_EIG_TOL):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, orthonormal eigenvector columns).
    Convergence is declared when the off-diagonal Frobenius norm drops
    below tol * ||M||_F; with dimensions <= a few hundred this takes a
    handful of sweeps.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    norm = float(np.linalg.norm(A))
    asym = float(np.linalg.norm(A - A.T))
    if asym > 1e-12 * max(1.0, norm):
        raise ValidationError(f"matrix is not symmetric: ||M - M^t|| = {asym:.3e}")
    A = (A + A.T) / 2.0
    Q = np.eye(n)
    if norm == 0.0 or n == 1:
        w = np.diag(A).copy()
        order = np.argsort(w, kind="stable")
        return w[order], Q[:, order]

    def offdiag(B):
        return math.sqrt(max(float(np.sum(B * B) - np.sum(np.diag(B) ** 2)), 0.0))

    off = offdiag(A)
    for _ in range(_MAX_SWEEPS):
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- G^t A G, columns then rows of the (p, q) plane
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Qp, Qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * Qp - s * Qq
                Q[:, q] = s * Qp + c * Qq
        off = offdiag(A)
    if off > tol * norm:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge: off-diagonal norm {off:.3e} "
            f"after {_MAX_SWEEPS} sweeps (target {tol * norm:.3e})",
            achieved=off,
        )
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Q[:, order]


@dataclass
class Cluster:
    value: float
    multiplicity: int
    basis: np.ndarray  # columns are the (orthonormal) eigenvectors


@dataclass
class ClusteredSpectrum:
    """Eigenvalues grouped into (value, multiplicity) with their eigenbases."""

    clusters: list[Cluster] = field(default_factory=list)

    @property
    def values(self):
        return tuple(c.value for c in self.clusters)

    @property
    def multiplicities(self):
        return tuple(c.multiplicity for c in self.clusters)

    def expanded(self) -> np.ndarray:
        """Full eigenvalue multiset, ascending."""
        out = []
        for c in self.clusters:
            out.extend([c.value] * c.multiplicity)
        return np.array(out)

    def total(self) -> int:
        return sum(c.multiplicity for c in self.clusters)


def cluster_spectrum(values, vectors=None, gap_tol: float = DEFAULT_GAP_TOL) -> ClusteredSpectrum:
    """Group an ascending eigenvalue list into clusters.

    Consecutive values within gap_tol are merged; the cluster value is the
    mean of its members. `vectors` holds the matching eigenvectors as
    columns (optional).
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n == 0:
        return ClusteredSpectrum([])
    if np.any(np.diff(values) < -1e-15):
        raise ValidationError("eigenvalues must be ascending")
    if vectors is None:
        vectors = np.zeros((0, n))
    vectors = np.asarray(vectors, dtype=float)
    clusters = []
    start = 0
    for k in range(1, n + 1):
        if k == n or values[k] - values[k - 1] > gap_tol:
            members = values[start:k]
            clusters.append(
                Cluster(
                    value=float(np.mean(members)),
                    multiplicity=k - start,
                    basis=vectors[:, start:k].copy(),
                )
            )
            start = k
    return ClusteredSpectrum(clusters)


def complete_basis(x: np.ndarray) -> np.ndarray:
    """Orthonormal basis of x^perp (columns), via a Householder reflection."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise ValidationError("cannot complement the zero vector")
    v = x / nx
    sign = 1.0 if v[0] >= 0 else -1.0
    w = v.copy()
    w[0] += sign
    H = np.eye(n) - 2.0 * np.outer(w, w) / float(w @ w)
    return H[:, 1:]


def orthonormalize(columns: np.ndarray, drop_tol: float = 1e-10) -> np.ndarray:
    """Modified Gram-Schmidt; near-dependent columns are dropped."""
    A = np.array(columns, dtype=float)
    out = []
    for k in range(A.shape[1]):
        v = A[:, k].copy()
        for u in out:
            v -= (u @ v) * u
        nv = float(np.linalg.norm(v))
        if nv > drop_tol:
            out.append(v / nv)
    if not out:
        return np.zeros((A.shape[0], 0))
    return np.column_stack(out)


def subspace_distance(B1: np.ndarray, B2: np.ndarray) -> float:
    """Operator-norm distance between the projectors onto two column spans."""
    Q1 = orthonormalize(B1)
    Q2 = orthonormalize(B2)
    P1 = Q1 @ Q1.T
    P2 = Q2 @ Q2.T
    return float(np.linalg.norm(P1 - P2, 2))
