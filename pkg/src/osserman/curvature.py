"""Algebraic curvature tensors: storage, validation, Jacobi spectra, Osserman test.

Convention: comp[i,j,k,l] = R(e_i, e_j, e_k, e_l) = <R(e_i,e_j) e_k, e_l>,
so the Jacobi operator is (R_X)[a,b] = sum_{i,k} X_i X_k comp[i,b,k,a] and
the Ricci form is Ric(X,Y) = sum_i R(X, e_i, Y, e_i), which makes constant
curvature lambda0 come out as Ric = (n-1) lambda0 I.

Tensors built from exact data (integer operator matrices, rational
scalars) carry a parallel `exact` component array (numpy object array of
Fractions) so that symbolic checks and shift round-trips stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .numkit import (
    ClusteredSpectrum,
    cluster_spectrum,
    complete_basis,
    sample_unit_vectors,
    sym_eigen,
)

SYMMETRY_TOL = 1e-12


@dataclass
class AlgebraicCurvatureTensor:
    dim: int
    comp: np.ndarray               # float (n,n,n,n)
    exact: np.ndarray | None = None  # object (n,n,n,n) of Fractions, optional

    def __post_init__(self):
        self.comp = np.asarray(self.comp, dtype=float)
        n = self.dim
        if self.comp.shape != (n, n, n, n):
            raise ValidationError(f"components must have shape {(n, n, n, n)}")

    def scale(self) -> float:
        return max(1.0, float(np.abs(self.comp).max()))

    def symmetry_residuals(self) -> dict:
        R = self.comp
        return {
            "antisym_12": float(np.abs(R + np.einsum("jikl->ijkl", R)).max()),
            "antisym_34": float(np.abs(R + np.einsum("ijlk->ijkl", R)).max()),
            "pair_sym": float(np.abs(R - np.einsum("klij->ijkl", R)).max()),
            "bianchi1": float(
                np.abs(R + np.einsum("jkil->ijkl", R) + np.einsum("kijl->ijkl", R)).max()
            ),
        }

    def validate(self, tol: float = SYMMETRY_TOL) -> None:
        scale = self.scale()
        for name, r in self.symmetry_residuals().items():
            if r > tol * scale:
                raise ValidationError(f"curvature symmetry {name} fails: residual {r:.3e}")

    def is_valid(self, tol: float = SYMMETRY_TOL) -> bool:
        try:
            self.validate(tol)
            return True
        except ValidationError:
            return False

    def __add__(self, other: "AlgebraicCurvatureTensor") -> "AlgebraicCurvatureTensor":
        if self.dim != other.dim:
            raise ValidationError("dimension mismatch")
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact + other.exact
        comp = self.comp + other.comp if exact is None else _exact_to_float(exact)
        return AlgebraicCurvatureTensor(self.dim, comp, exact)

    def __sub__(self, other: "AlgebraicCurvatureTensor") -> "AlgebraicCurvatureTensor":
        if self.dim != other.dim:
            raise ValidationError("dimension mismatch")
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact - other.exact
        comp = self.comp - other.comp if exact is None else _exact_to_float(exact)
        return AlgebraicCurvatureTensor(self.dim, comp, exact)

    def to_json_obj(self) -> dict:
        """Nonzero components, one canonical representative per symmetry orbit."""
        comps = []
        n = self.dim
        R = self.comp
        seen = np.zeros(R.shape, dtype=bool)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if seen[i, j, k, l] or R[i, j, k, l] == 0.0:
                            continue
                        for (a, b, c, d), _ in _symmetry_orbit(i, j, k, l):
                            seen[a, b, c, d] = True
                        comps.append([i, j, k, l, R[i, j, k, l]])
        return {"dim": n, "components": comps}

    @staticmethod
    def from_json_obj(obj: dict) -> "AlgebraicCurvatureTensor":
        n = int(obj["dim"])
        return tensor_from_components(n, obj["components"])


def _symmetry_orbit(i, j, k, l):
    """The 8 index placements forced by the pair/antisymmetry relations."""
    return (
        ((i, j, k, l), +1),
        ((j, i, k, l), -1),
        ((i, j, l, k), -1),
        ((j, i, l, k), +1),
        ((k, l, i, j), +1),
        ((l, k, i, j), -1),
        ((k, l, j, i), -1),
        ((l, k, j, i), +1),
    )


def tensor_from_components(n: int, components, tol: float = SYMMETRY_TOL) -> AlgebraicCurvatureTensor:
    """Build a tensor from (i, j, k, l, value) generators, completing symmetries.

    Conflicting assignments beyond `tol` are rejected; the finished tensor
    is validated (including the first Bianchi identity).
    """
    R = np.zeros((n, n, n, n))
    assigned = np.zeros((n, n, n, n), dtype=bool)
    scale = max([1.0] + [abs(float(c[4])) for c in components])
    for entry in components:
        i, j, k, l, value = entry
        i, j, k, l = int(i), int(j), int(k), int(l)
        value = float(value)
        for idx in (i, j, k, l):
            if not 0 <= idx < n:
                raise ValidationError(f"index {idx} out of range for dim {n}")
        for (a, b, c, d), sign in _symmetry_orbit(i, j, k, l):
            v = sign * value
            if assigned[a, b, c, d] and abs(R[a, b, c, d] - v) > tol * scale:
                raise ValidationError(
                    f"conflicting component at ({a},{b},{c},{d}): "
                    f"{R[a, b, c, d]!r} vs {v!r}"
                )
            R[a, b, c, d] = v
            assigned[a, b, c, d] = True
    tensor = AlgebraicCurvatureTensor(n, R)
    tensor.validate()
    return tensor


def _exact_to_float(exact: np.ndarray) -> np.ndarray:
    return np.vectorize(float, otypes=[float])(exact)


def _exact_zeros(n: int) -> np.ndarray:
    out = np.empty((n, n, n, n), dtype=object)
    out[...] = Fraction(0)
    return out


def const_curv(n: int, lambda0) -> AlgebraicCurvatureTensor:
    """Constant-curvature tensor lambda0 (<X,Z>Y - <Y,Z>X)."""
    if n < 2:
        raise ValidationError("need dimension >= 2")
    lam = Fraction(lambda0) if not isinstance(lambda0, float) else lambda0
    eye = np.eye(n)
    base = np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("jk,il->ijkl", eye, eye)
    if isinstance(lam, Fraction):
        exact = _exact_zeros(n)
        idx = np.nonzero(base)
        for i, j, k, l in zip(*idx):
            exact[i, j, k, l] = lam * int(base[i, j, k, l])
        return AlgebraicCurvatureTensor(n, _exact_to_float(exact), exact)
    return AlgebraicCurvatureTensor(n, lam * base)


def jacobi(R: AlgebraicCurvatureTensor, X: np.ndarray) -> np.ndarray:
    """The Jacobi operator R_X as a symmetric matrix: R_X Y = R(X, Y) X."""
    R.validate()
    X = np.asarray(X, dtype=float)
    return np.einsum("i,k,ibka->ab", X, X, R.comp)


def jacobi_exact(R: AlgebraicCurvatureTensor, X) -> np.ndarray:
    """Exact Jacobi matrix for a tensor with exact components and rational X."""
    if R.exact is None:
        raise ValidationError("tensor has no exact components")
    n = R.dim
    Xf = [Fraction(x) for x in X]
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            acc = Fraction(0)
            for i in range(n):
                if Xf[i] == 0:
                    continue
                for k in range(n):
                    if Xf[k] == 0:
                        continue
                    acc += Xf[i] * Xf[k] * R.exact[i, b, k, a]
            out[a, b] = acc
    return out


def jacobi_spectrum(R: AlgebraicCurvatureTensor, X: np.ndarray,
                    tol: float = 1e-12, gap_tol: float = 1e-8) -> ClusteredSpectrum:
    """Clustered spectrum of R_X restricted to X^perp, for unit X."""
    X = np.asarray(X, dtype=float)
    if abs(float(X @ X) - 1.0) > 1e-12:
        raise ValidationError("jacobi_spectrum needs a unit vector")
    M = jacobi(R, X)
    P = complete_basis(X)
    w, V = sym_eigen(P.T @ M @ P, tol)
    return cluster_spectrum(w, P @ V, gap_tol)


@dataclass
class OssermanVerdict:
    is_osserman: bool
    reference_spectrum: ClusteredSpectrum
    max_deviation: float
    witness: np.ndarray | None = None


def osserman_test(R: AlgebraicCurvatureTensor, samples: int = 32, seed: int = 0,
                  tol: float = 1e-9, gap_tol: float = 1e-8) -> OssermanVerdict:
    """Compare Jacobi spectra over sampled unit directions plus the coordinate axes.

    The deviation is the max matched-sorted eigenvalue distance against the
    spectrum at the first sample; a multiplicity-pattern mismatch fails the
    test even when the values are close.
    """
    R.validate()
    n = R.dim
    directions = list(sample_unit_vectors(n, samples, seed))
    directions.extend(np.eye(n))
    reference = None
    ref_eigs = None
    worst = 0.0
    witness = None
    for X in directions:
        spec = jacobi_spectrum(R, X, gap_tol=gap_tol)
        if reference is None:
            reference = spec
            ref_eigs = spec.expanded()
            continue
        deviation = float(np.abs(spec.expanded() - ref_eigs).max())
        if spec.multiplicities != reference.multiplicities:
            return OssermanVerdict(False, reference, max(worst, deviation), witness=X)
        if deviation > worst:
            worst = deviation
            if deviation >= tol:
                witness = X
    if worst < tol:
        return OssermanVerdict(True, reference, worst, witness=None)
    return OssermanVerdict(False, reference, worst, witness=witness)


def ricci(R: AlgebraicCurvatureTensor) -> np.ndarray:
    """Ric[a,b] = sum_i R[a, i, b, i]."""
    return np.einsum("aibi->ab", R.comp)


def einstein_check(R: AlgebraicCurvatureTensor, tol: float = 1e-10):
    """(is_einstein, Ricci matrix); Einstein means Ric is a multiple of I."""
    R.validate()
    ric = ricci(R)
    n = R.dim
    trace = float(np.trace(ric))
    deviation = float(np.abs(ric - (trace / n) * np.eye(n)).max())
    return deviation < tol * max(1.0, abs(trace) / n), ric


def block_tensor(n: int = 8, block: int = 4, lambda0: float = 1.0) -> AlgebraicCurvatureTensor:
    """Constant curvature on a `block`-dimensional subspace, zero elsewhere.

    Standard negative control: not Osserman and not Einstein for block < n.
    """
    small = const_curv(block, lambda0)
    R = np.zeros((n, n, n, n))
    R[:block, :block, :block, :block] = small.comp
    exact = None
    if small.exact is not None:
        exact = _exact_zeros(n)
        exact[:block, :block, :block, :block] = small.exact
    return AlgebraicCurvatureTensor(n, R, exact)
