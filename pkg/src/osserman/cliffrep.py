"""Clifford families in R^8 from octonion right multiplication.

A family is a list of skew-symmetric orthogonal anticommuting operators.
`rho7` builds the seven right-multiplication operators with a prescribed
product sign, and `psi_reconstruct` recovers an orthogonal identification
of R^8 with the octonions from any validated 7-family with product +I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ReconstructionError, ValidationError
from .numkit import orthonormalize, sym_eigen
from .octonion import DEFAULT_TABLE, RIGHT_MULT_INT, MultiplicationTable


@dataclass
class OperatorFamily:
    """Anticommuting skew-symmetric orthogonal operators J_1..J_nu on R^dim."""

    dim: int
    ops: list = field(default_factory=list)

    def __post_init__(self):
        self.ops = [np.asarray(J, dtype=float) for J in self.ops]
        for J in self.ops:
            if J.shape != (self.dim, self.dim):
                raise ValidationError(f"operator shape {J.shape} != ({self.dim}, {self.dim})")

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, k):
        return self.ops[k]

    def sub_family(self, nu: int) -> "OperatorFamily":
        return OperatorFamily(self.dim, [J.copy() for J in self.ops[:nu]])

    def conjugated(self, T: np.ndarray) -> "OperatorFamily":
        T = np.asarray(T, dtype=float)
        return OperatorFamily(self.dim, [T @ J @ T.T for J in self.ops])

    def to_json_obj(self):
        return [J.tolist() for J in self.ops]

    @staticmethod
    def from_json_obj(obj) -> "OperatorFamily":
        mats = [np.asarray(m, dtype=float) for m in obj]
        if not mats:
            raise ValidationError("empty operator family")
        return OperatorFamily(mats[0].shape[0], mats)


@dataclass
class FamilyVerdict:
    ok: bool
    max_residual: float
    failures: list


def validate_family(family: OperatorFamily, tol: float = 1e-10) -> FamilyVerdict:
    """Check J^t = -J, J^t J = I and the anticommutation relations."""
    n = family.dim
    eye = np.eye(n)
    failures = []
    worst = 0.0
    for s, J in enumerate(family):
        r_skew = float(np.abs(J + J.T).max())
        r_orth = float(np.abs(J.T @ J - eye).max())
        worst = max(worst, r_skew, r_orth)
        if r_skew > tol:
            failures.append(f"J{s + 1} not skew-symmetric (residual {r_skew:.3e})")
        if r_orth > tol:
            failures.append(f"J{s + 1} not orthogonal (residual {r_orth:.3e})")
    for s in range(len(family)):
        for q in range(s + 1, len(family)):
            r = float(np.abs(family[s] @ family[q] + family[q] @ family[s]).max())
            worst = max(worst, r)
            if r > tol:
                failures.append(f"J{s + 1}, J{q + 1} do not anticommute (residual {r:.3e})")
    return FamilyVerdict(not failures, worst, failures)


def rho7(sign: int = +1, table: MultiplicationTable = DEFAULT_TABLE) -> OperatorFamily:
    """The seven right-multiplication operators, with J1...J7 = sign * I exactly."""
    if sign not in (+1, -1):
        raise ValidationError("sign must be +1 or -1")
    if table is DEFAULT_TABLE:
        mats_int = [M.copy() for M in RIGHT_MULT_INT[1:]]
    else:
        mats_int = []
        for i in range(1, 8):
            M = np.zeros((8, 8), dtype=np.int64)
            for b in range(8):
                M[table.index[b][i], b] = table.sign[b][i]
            mats_int.append(M)
    prod = np.eye(8, dtype=np.int64)
    for M in mats_int:
        prod = prod @ M
    if np.array_equal(prod, np.eye(8, dtype=np.int64)):
        current = +1
    elif np.array_equal(prod, -np.eye(8, dtype=np.int64)):
        current = -1
    else:
        raise ValidationError("table does not produce a scalar 7-fold product")
    if current != sign:
        mats_int[6] = -mats_int[6]
    return OperatorFamily(8, [M.astype(float) for M in mats_int])


NOT_SCALAR = "not scalar"


def product_sign(family: OperatorFamily, tol: float = 1e-10):
    """Sign of J_1 J_2 ... J_nu when the product is +-I, else "not scalar"."""
    verdict = validate_family(family)
    if not verdict.ok:
        raise ValidationError("family fails validation: " + "; ".join(verdict.failures))
    prod = np.eye(family.dim)
    for J in family:
        prod = prod @ J
    if np.abs(prod - np.eye(family.dim)).max() <= tol:
        return +1
    if np.abs(prod + np.eye(family.dim)).max() <= tol:
        return -1
    return NOT_SCALAR


def line_triple_operators(family: OperatorFamily, table: MultiplicationTable = DEFAULT_TABLE):
    """The products J_i J_j J_k over the oriented lines (e_i e_j = e_k).

    For a valid 7-family with product +I these are orthogonal, symmetric
    and pairwise commuting, so they share an eigenbasis.
    """
    if len(family) != 7:
        raise ValidationError("need a 7-operator family")
    return [
        family[i - 1] @ family[j - 1] @ family[k - 1] for (i, j, k) in table.triples
    ]


def psi_reconstruct(family: OperatorFamily, tol: float = 1e-8,
                    table: MultiplicationTable = DEFAULT_TABLE) -> np.ndarray:
    """Orthogonal psi with psi(J_i X) = psi(X) e_i, from the common +1 eigenvector.

    Multiplies the +1 eigenprojectors of the seven line-triple products;
    vectors surviving with eigenvalue residual < tol become candidates for
    X0, and psi maps (X0, J_1 X0, ..., J_7 X0) to the canonical basis.
    """
    verdict = validate_family(family)
    if not verdict.ok:
        raise ValidationError("family fails validation: " + "; ".join(verdict.failures))
    sign = product_sign(family)
    if sign != +1:
        raise ValidationError(f"need product +I, got {sign!r}")
    triples = line_triple_operators(family, table)
    proj = np.eye(family.dim)
    for T in triples:
        w, V = sym_eigen((T + T.T) / 2.0)
        plus = V[:, w > 0.0]
        proj = proj @ (plus @ plus.T)
    w, V = sym_eigen((proj + proj.T) / 2.0)
    candidates = []
    for k in range(len(w)):
        if w[k] < 0.5:
            continue
        v = V[:, k]
        v = v / np.linalg.norm(v)
        resid = max(float(np.linalg.norm(T @ v - v)) for T in triples)
        if resid < tol:
            candidates.append(v)
    if not candidates:
        raise ReconstructionError(
            "no common +1 eigenvector of the line-triple operators "
            "(wrong sign convention or invalid family)"
        )

    def build_psi(x0):
        cols = [x0] + [J @ x0 for J in family]
        return orthonormalize(np.column_stack(cols)).T

    def intertwining_residual(psi):
        return max(
            float(np.abs(psi @ family[i] - RIGHT_MULT_INT[i + 1] @ psi).max())
            for i in range(7)
        )

    best = min((build_psi(v) for v in candidates), key=intertwining_residual)
    return best


def intertwining_residual(psi: np.ndarray, family: OperatorFamily) -> float:
    """max_i || psi J_i psi^-1 - (right multiplication by e_i) ||."""
    return max(
        float(np.abs(psi @ family[i] @ psi.T - RIGHT_MULT_INT[i + 1]).max())
        for i in range(len(family))
    )


def quaternion_right_mults() -> list[np.ndarray]:
    """Right multiplication by e_1, e_2 on the quaternion subalgebra span(1,e1,e2,e3)."""
    table = DEFAULT_TABLE
    mats = []
    for i in (1, 2):
        M = np.zeros((4, 4))
        for b in range(4):
            k = table.index[b][i]
            if k > 3:
                raise ValidationError("quaternion block is not closed")
            M[k, b] = table.sign[b][i]
        mats.append(M)
    return mats


def block_three_family(split_signs=(1, 1)) -> OperatorFamily:
    """A 3-family on R^8 = R^4 + R^4 built from quaternion right multiplications.

    With split_signs = (1, 1) the two blocks agree and J1 J2 J3 = -I. With
    split_signs = (1, -1) the product has +-1 eigenspaces of dimension 4
    each, so product_sign reports "not scalar".
    """
    Q1, Q2 = quaternion_right_mults()
    Q3 = Q1 @ Q2
    ops = []
    for Q in (Q1, Q2, Q3):
        s0, s1 = split_signs
        ops.append(np.block([
            [s0 * Q, np.zeros((4, 4))],
            [np.zeros((4, 4)), s1 * Q],
        ]))
    return OperatorFamily(8, ops)
