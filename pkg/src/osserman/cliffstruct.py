"""Clifford-structure curvature tensors and their manipulations.

`build_cliff` assembles the curvature tensor

    R(X,Y)Z = lambda0 (<X,Z>Y - <Y,Z>X)
            + sum_s (mu_s - lambda0)/3 (2<J_sX,Y>J_sZ + <J_sZ,Y>J_sX - <J_sZ,X>J_sY)

whose Jacobi operator has the closed form

    R_X Y = lambda0 (|X|^2 Y - <Y,X>X) + sum_s (mu_s - lambda0) <J_sX,Y> J_sX.

Also here: the constant shift, peeling a single-operator eigenvalue off a
tensor, the seven-operator expansion of constant curvature, and the
quaternionic (J1 J2 = J3) three-operator model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cliffrep import OperatorFamily, block_three_family, validate_family
from .curvature import (
    AlgebraicCurvatureTensor,
    _exact_to_float,
    _exact_zeros,
    const_curv,
    jacobi,
)
from .errors import ValidationError
from .numkit import orthonormalize, sample_unit_vectors


@dataclass
class CliffordStructure:
    """Family J_1..J_nu with scalars lambda0 and mu_1..mu_nu (mu_s != lambda0)."""

    family: OperatorFamily
    lambda0: float
    mu: tuple

    def __post_init__(self):
        self.mu = tuple(self.mu)
        nu = len(self.family)
        if len(self.mu) != nu:
            raise ValidationError(f"need {nu} mu values, got {len(self.mu)}")
        if nu > self.family.dim - 1:
            raise ValidationError("nu must be at most n - 1")
        for s, m in enumerate(self.mu):
            if m == self.lambda0:
                raise ValidationError(f"mu_{s + 1} equals lambda0")
        verdict = validate_family(self.family)
        if not verdict.ok:
            raise ValidationError("family fails validation: " + "; ".join(verdict.failures))

    @property
    def nu(self) -> int:
        return len(self.family)

    @property
    def dim(self) -> int:
        return self.family.dim

    def expected_multiset(self) -> np.ndarray:
        """{lambda0 with multiplicity n-1-nu} union {mu_s}, sorted."""
        vals = [float(self.lambda0)] * (self.dim - 1 - self.nu) + [float(m) for m in self.mu]
        return np.array(sorted(vals))

    def to_json_obj(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "mu": list(self.mu),
            "J": self.family.to_json_obj(),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "CliffordStructure":
        return CliffordStructure(
            OperatorFamily.from_json_obj(obj["J"]), obj["lambda0"], tuple(obj["mu"])
        )


def cliff_term(J: np.ndarray, coefficient) -> AlgebraicCurvatureTensor:
    """The tensor (c/3)(2<JX,Y>JZ + <JZ,Y>JX - <JZ,X>JY) for one skew J.

    Exact components are produced when J has integer entries and the
    coefficient is rational.
    """
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    Ji = np.rint(J).astype(np.int64)
    if np.array_equal(Ji.astype(float), J) and not isinstance(coefficient, float):
        c3 = Fraction(coefficient) / 3
        base = (
            2 * np.einsum("ji,lk->ijkl", Ji, Ji)
            + np.einsum("jk,li->ijkl", Ji, Ji)
            - np.einsum("ik,lj->ijkl", Ji, Ji)
        )
        exact = np.empty((n, n, n, n), dtype=object)
        flat_base = base.ravel()
        flat = exact.ravel()
        for pos in range(flat.size):
            flat[pos] = c3 * int(flat_base[pos])
        return AlgebraicCurvatureTensor(n, _exact_to_float(exact), exact)
    c3 = float(coefficient) / 3.0
    comp = c3 * (
        2 * np.einsum("ji,lk->ijkl", J, J)
        + np.einsum("jk,li->ijkl", J, J)
        - np.einsum("ik,lj->ijkl", J, J)
    )
    return AlgebraicCurvatureTensor(n, comp)


def build_cliff(cs: CliffordStructure) -> AlgebraicCurvatureTensor:
    """Assemble the Clifford-structure curvature tensor."""
    total = const_curv(cs.dim, cs.lambda0)
    for J, mu in zip(cs.family, cs.mu):
        lam0 = cs.lambda0
        if isinstance(mu, float) or isinstance(lam0, float):
            coeff = float(mu) - float(lam0)
        else:
            coeff = Fraction(mu) - Fraction(lam0)
        total = total + cliff_term(J, coeff)
    total.validate()
    return total


def jacobi_closed(cs: CliffordStructure, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """R_X Y from the closed form, without assembling the tensor."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    out = float(cs.lambda0) * (float(X @ X) * Y - float(Y @ X) * X)
    for J, mu in zip(cs.family, cs.mu):
        JX = J @ X
        out = out + (float(mu) - float(cs.lambda0)) * float(JX @ Y) * JX
    return out


def predict_eigenspaces(cs: CliffordStructure, X: np.ndarray) -> dict:
    """Eigenvalue -> orthonormal basis of the predicted eigenspace of R_X on X^perp.

    E_mu(X) = span{J_s X : mu_s = mu}; the lambda0 eigenspace is the
    orthogonal complement of span(X, J_1 X, ..., J_nu X) (present when
    nu < n - 1).
    """
    X = np.asarray(X, dtype=float)
    if abs(float(X @ X) - 1.0) > 1e-12:
        raise ValidationError("predict_eigenspaces needs a unit vector")
    groups: dict = {}
    for J, mu in zip(cs.family, cs.mu):
        groups.setdefault(float(mu), []).append(J @ X)
    out = {mu: orthonormalize(np.column_stack(vs)) for mu, vs in groups.items()}
    if cs.nu < cs.dim - 1:
        used = orthonormalize(np.column_stack([X] + [J @ X for J in cs.family]))
        P = np.eye(cs.dim) - used @ used.T
        out[float(cs.lambda0)] = orthonormalize(P)
    return out


def shift_constant(R: AlgebraicCurvatureTensor, c) -> AlgebraicCurvatureTensor:
    """R + const_curv(n, c): shifts every Jacobi eigenvalue by c."""
    R.validate()
    return R + const_curv(R.dim, c)


def peel_simple(R: AlgebraicCurvatureTensor, J: np.ndarray, lambda1,
                samples: int = 32, seed: int = 0, tol: float = 1e-10) -> AlgebraicCurvatureTensor:
    """Remove a single-operator eigenvalue: R_hat = R - cliff_term(J, lambda1).

    Requires R_X(JX) = lambda1 |X|^2 JX, sampled at `samples` seeded unit
    vectors; afterwards R_hat_X kills JX and agrees with R_X on (JX)^perp.
    """
    R.validate()
    J = np.asarray(J, dtype=float)
    lam = float(lambda1)
    for X in sample_unit_vectors(R.dim, samples, seed):
        JX = J @ X
        resid = float(np.linalg.norm(jacobi(R, X) @ JX - lam * JX))
        if resid > tol * R.scale():
            raise ValidationError(
                f"peel precondition fails: ||R_X(JX) - lambda1 JX|| = {resid:.3e} "
                f"at witness X = {X.tolist()}"
            )
    return R - cliff_term(J, lambda1)


def seven_expand_residual(family: OperatorFamily, X, Y, Z) -> np.ndarray:
    """Residual of the seven-operator expansion of constant curvature.

    <X,Z>Y - <Y,Z>X  -  sum_i (1/3)(2<J_iX,Y>J_iZ + <J_iZ,Y>J_iX - <J_iZ,X>J_iY)
    vanishes for any valid 7-family (X, J_1X, ..., J_7X is an orthogonal
    basis with all norms |X|).
    """
    if len(family) != 7:
        raise ValidationError("need a 7-operator family")
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    lhs = float(X @ Z) * Y - float(Y @ Z) * X
    rhs = np.zeros(family.dim)
    for J in family:
        JX, JY, JZ = J @ X, J @ Y, J @ Z
        rhs += (2.0 * float(JX @ Y) * JZ + float(JZ @ Y) * JX - float(JZ @ X) * JY) / 3.0
    return lhs - rhs


def case_b_structure(lambda0=1, lams=(2, 3, 4)) -> CliffordStructure:
    """The nu = 3 structure with J1 J2 = J3 exactly (quaternionic model on R^8)."""
    family = block_three_family((1, 1))
    return CliffordStructure(family, lambda0, tuple(lams))
