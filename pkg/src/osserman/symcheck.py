"""Covariant-derivative model and the second-Bianchi residuals.

The connection data of an eight-dimensional manifold whose curvature is
carried by seven right-multiplication operators J_1..J_7 is encoded by an
octonion m and constants lambda_1..lambda_7:

    A(U)    = U* m - <U, m> 1                      (values in 1^perp)
    B_ij(Y) = -<(m e_j) e_i, Y>                    (B_ij = -B_ji for i != j)
    nabla_U J_i = sum_{j != i} B_ij(U) J_j + J_i J_{A(U)} + A_i(U) I

With these, (nabla_X R)(X, Y) X == 0 identically (the flagship identity),
while the full second-Bianchi combination reduces to the polarization
defect 4 <(nabla_X R)(U, Y) X, Y>, which is nonzero for generic m.  Both
evaluators are provided, plus a raw-field path for exploratory inputs
with nonzero eigenvalue gradients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cliffrep import OperatorFamily, product_sign, rho7, validate_family
from .errors import ValidationError
from .octonion import ONE, E, Octonion, conj, oct_mul, right_mult_matrix
from .polyjacobi import Poly


@dataclass
class ConnectionModel:
    """Octonion m plus lambda_1..lambda_7; eigenvalue gradients are zero."""

    m: Octonion
    lam: tuple
    family: OperatorFamily = field(default_factory=lambda: rho7(+1))

    def __post_init__(self):
        self.lam = tuple(float(x) for x in self.lam)
        if len(self.lam) != 7:
            raise ValidationError("need 7 lambda values")
        if len(self.family) != 7 or product_sign(self.family) != +1:
            raise ValidationError("family must be a validated 7-family with product +I")
        # cached float building blocks: w[i][j] = (m e_j) e_i, jm[i] = m e_i
        mf = self.m.to_array()
        self._w = np.empty((8, 8, 8))
        self._jm = np.empty((8, 8))
        for i in range(1, 8):
            self._jm[i] = oct_mul(self.m, E[i]).to_array()
            for j in range(1, 8):
                self._w[i, j] = oct_mul(oct_mul(self.m, E[j]), E[i]).to_array()
        self._mf = mf

    def to_json_obj(self) -> dict:
        return {"m": [str(Fraction(c)) for c in self.m.coeffs], "lambda": list(self.lam)}

    @staticmethod
    def from_json_obj(obj) -> "ConnectionModel":
        m = Octonion([Fraction(s) for s in obj["m"]])
        return ConnectionModel(m, tuple(obj["lambda"]))


def a_map(mod: ConnectionModel, U: Octonion) -> Octonion:
    """A(U) = U* m - <U, m> 1; exact, lands in 1^perp."""
    return oct_mul(conj(U), mod.m) - U.inner(mod.m) * ONE


def b_form(mod: ConnectionModel, i: int, j: int, Y) -> float:
    """B_ij(Y) = -<(m e_j) e_i, Y> for i != j."""
    if i == j:
        raise ValidationError("B is defined for i != j only (the diagonal vanishes)")
    if not (1 <= i <= 7 and 1 <= j <= 7):
        raise ValidationError("indices must be in 1..7")
    if isinstance(Y, Octonion):
        w = oct_mul(oct_mul(mod.m, E[j]), E[i])
        return -w.inner(Y)
    return -float(mod._w[i, j] @ np.asarray(Y, dtype=float))


def _a_float(mod: ConnectionModel, U: np.ndarray) -> np.ndarray:
    """A(U) as a float 8-vector (conj(U) m - <U,m> 1)."""
    Uc = np.asarray(U, dtype=float)
    conj_u = Uc.copy()
    conj_u[1:] = -conj_u[1:]
    out = right_mult_matrix(mod.m.coeffs) @ conj_u
    out[0] -= float(Uc @ mod._mf)
    return out


def nabla_j(mod: ConnectionModel, U, i: int) -> np.ndarray:
    """The matrix of nabla_U J_i; linear in U and skew-symmetric."""
    if not 1 <= i <= 7:
        raise ValidationError("operator index must be in 1..7")
    Uf = U.to_array() if isinstance(U, Octonion) else np.asarray(U, dtype=float)
    A = _a_float(mod, Uf)
    N = mod.family[i - 1] @ right_mult_matrix(A) + A[i] * np.eye(8)
    for j in range(1, 8):
        if j != i:
            N += -float(mod._w[i, j] @ Uf) * mod.family[j - 1]
    return N


def _nabla_jx_all(mod: ConnectionModel, W: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Rows i-1 hold (nabla_W J_i) X, assembled without forming matrices."""
    JX = np.array([J @ X for J in mod.family])
    A = _a_float(mod, W)
    XA = right_mult_matrix(A) @ X          # J_{A(W)} X = X A(W)
    B = -np.einsum("ijk,k->ij", mod._w[1:, 1:], W)   # B[i-1, j-1] = B_ij(W)
    np.fill_diagonal(B, 0.0)
    out = B @ JX
    for i in range(7):
        out[i] += mod.family[i] @ XA + A[i + 1] * X
    return out


def nabla_r(mod: ConnectionModel, W, V, Z) -> np.ndarray:
    """(nabla_W R)(V, Z) V = sum_i lam_i (<(nabla_W J_i)V, Z> J_i V + <J_i V, Z> (nabla_W J_i)V)."""
    W = np.asarray(W, dtype=float)
    V = np.asarray(V, dtype=float)
    Z = np.asarray(Z, dtype=float)
    NV = _nabla_jx_all(mod, W, V)
    out = np.zeros(8)
    for i in range(7):
        JiV = mod.family[i] @ V
        out += mod.lam[i] * (float(NV[i] @ Z) * JiV + float(JiV @ Z) * NV[i])
    return out


def symmetric_residual(mod: ConnectionModel, X, Y) -> np.ndarray:
    """(nabla_X R)(X, Y) X; identically zero for every connection model."""
    return nabla_r(mod, X, X, Y)


def residual_scale(mod: ConnectionModel, X, Y) -> float:
    nm = float(np.linalg.norm(mod.m.to_array()))
    nx = float(np.linalg.norm(X))
    return max(1.0, nm * max(abs(l) for l in mod.lam) * nx**3 * float(np.linalg.norm(Y)))


@dataclass
class DerivativeField:
    """Raw covariant data: operators, eigenvalues, gradients and a nabla_J map.

    `nabla_j_fn(U, i)` must return the 8x8 matrix of nabla_U J_i (1-based
    i), linear in U and skew-symmetric; `grad_lambda` holds one gradient
    vector per eigenvalue in `lambdas`.
    """

    family: OperatorFamily
    lambdas: tuple
    grad_lambda: list
    nabla_j_fn: object = None

    def __post_init__(self):
        self.lambdas = tuple(float(x) for x in self.lambdas)
        self.grad_lambda = [np.asarray(g, dtype=float) for g in self.grad_lambda]
        if len(self.grad_lambda) != len(self.lambdas):
            raise ValidationError("one gradient per eigenvalue required")

    def nabla(self, U, i: int) -> np.ndarray:
        if self.nabla_j_fn is None:
            return np.zeros((self.family.dim, self.family.dim))
        return self.nabla_j_fn(np.asarray(U, dtype=float), i)

    def directional(self, k: int, U) -> float:
        """U(lambda_k) = <grad lambda_k, U> (k indexes `lambdas` from 0)."""
        return float(self.grad_lambda[k] @ np.asarray(U, dtype=float))


def _as_case_a_field(mod_or_field) -> DerivativeField:
    if isinstance(mod_or_field, ConnectionModel):
        mod = mod_or_field
        return DerivativeField(
            mod.family,
            mod.lam,
            [np.zeros(8)] * 7,
            nabla_j_fn=lambda U, i: nabla_j(mod, U, i),
        )
    return mod_or_field


def bianchi_residual(mod_or_field, U, X, Y) -> float:
    """The displayed second-Bianchi combination for the seven-operator form.

    sum_i ( X(l_i) <J_iY,U><J_iY,X> + Y(l_i) <J_iU,X><J_iY,X> - U(l_i) <J_iY,X>^2 )
    + sum_i l_i <J_iY,X> (2<(n_U J_i)X,Y> + <(n_X J_i)Y,U> + <(n_Y J_i)U,X>)
    - sum_i l_i ( <J_iY,U><(n_X J_i)X,Y> + <J_iX,U><(n_Y J_i)Y,X> )

    For a ConnectionModel this equals 4 <(nabla_X R)(U, Y) X, Y>; it
    vanishes when m = 0, when all lambdas agree, or when U lies in
    span(X, Y), but not identically.
    """
    fld = _as_case_a_field(mod_or_field)
    if len(fld.family) != 7:
        raise ValidationError("case (a) residual needs a 7-operator family")
    U = np.asarray(U, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    total = 0.0
    for i in range(1, 8):
        J = fld.family[i - 1]
        lam = fld.lambdas[i - 1]
        JY, JX = J @ Y, J @ X
        jyx = float(JY @ X)
        total += (
            fld.directional(i - 1, X) * float(JY @ U) * jyx
            + fld.directional(i - 1, Y) * float(J @ U @ X) * jyx
            - fld.directional(i - 1, U) * jyx**2
        )
        NU = fld.nabla(U, i)
        NX = fld.nabla(X, i)
        NY = fld.nabla(Y, i)
        total += lam * jyx * (
            2.0 * float(NU @ X @ Y) + float(NX @ Y @ U) + float(NY @ U @ X)
        )
        total -= lam * (
            float(JY @ U) * float(NX @ X @ Y) + float(JX @ U) * float(NY @ Y @ X)
        )
    return total


def nabla_r_full(mod: ConnectionModel, W, X, Y, Z) -> np.ndarray:
    """(nabla_W R)(X, Y) Z by the product rule on the seven-term curvature form.

    Independent of nabla_r's assembly; used to cross-check the Bianchi
    combination and the polarization defect.
    """
    W = np.asarray(W, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    NX = _nabla_jx_all(mod, W, X)
    NY = _nabla_jx_all(mod, W, Y)
    NZ = _nabla_jx_all(mod, W, Z)
    out = np.zeros(8)
    for i in range(7):
        J = mod.family[i]
        JX, JY, JZ = J @ X, J @ Y, J @ Z
        out += mod.lam[i] / 3.0 * (
            2.0 * float(NX[i] @ Y) * JZ + 2.0 * float(JX @ Y) * NZ[i]
            + float(NZ[i] @ Y) * JX + float(JZ @ Y) * NX[i]
            - float(NZ[i] @ X) * JY - float(JZ @ X) * NY[i]
        )
    return out


def case_b_residual(field: DerivativeField, U, X, Y) -> float:
    """The displayed second-Bianchi combination for the quaternionic (nu = 3) form.

    `field.lambdas` holds (lambda_0, lambda_1, lambda_2, lambda_3) with
    matching gradients; vanishes when every gradient and nabla_J is zero.
    """
    if len(field.family) != 3:
        raise ValidationError("case (b) residual needs a 3-operator family")
    if len(field.lambdas) != 4:
        raise ValidationError("case (b) needs lambda_0..lambda_3")
    U = np.asarray(U, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    xy = float(X @ Y)
    x2 = float(X @ X)
    y2 = float(Y @ Y)
    ux = float(U @ X)
    uy = float(U @ Y)
    u_l0 = field.directional(0, U)
    x_l0 = field.directional(0, X)
    y_l0 = field.directional(0, Y)
    total = (
        u_l0 * (xy**2 - x2 * y2)
        + x_l0 * (y2 * ux - uy * xy)
        + y_l0 * (x2 * uy - ux * xy)
    )
    for i in (1, 2, 3):
        J = field.family[i - 1]
        lam_i0 = field.lambdas[i] - field.lambdas[0]
        JY, JX, JU = J @ Y, J @ X, J @ U
        jyx = float(JY @ X)
        total += (
            (field.directional(i, X) - x_l0) * float(JY @ U) * jyx
            + (field.directional(i, Y) - y_l0) * float(JU @ X) * jyx
            - (field.directional(i, U) - u_l0) * jyx**2
        )
        NU = field.nabla(U, i)
        NX = field.nabla(X, i)
        NY = field.nabla(Y, i)
        total += lam_i0 * (
            (2.0 * float(NU @ X @ Y) + float(NX @ Y @ U) + float(NY @ U @ X)) * jyx
            - float(JY @ U) * float(NX @ X @ Y)
            - float(JX @ U) * float(NY @ Y @ X)
        )
    return total


def quaternion_span(family: OperatorFamily, Y) -> np.ndarray:
    """Orthonormal basis of span(Y, J_1 Y, J_2 Y, J_3 Y); 4-dimensional for Y != 0."""
    Y = np.asarray(Y, dtype=float)
    if float(Y @ Y) == 0.0:
        raise ValidationError("need Y != 0")
    from .numkit import orthonormalize

    cols = [Y] + [J @ Y for J in family]
    return orthonormalize(np.column_stack(cols))


# ---------------------------------------------------------------------------
# The octonion lemma: (Ye) L(Y) = Y F(Y)
# ---------------------------------------------------------------------------

def lemma_oct_F(a: Octonion, b: Octonion, p: Octonion, e: Octonion, Y: Octonion) -> Octonion:
    """F(Y) = <a,Y> e - <b,Y> 1 - (Ye)* p for L(Y) = <a,Y> 1 + <b,Y> e + Y* p.

    The pair satisfies (Ye) L(Y) = Y F(Y) exactly for unit imaginary e.
    """
    if not e.is_imaginary() or e.norm_sq() != 1:
        raise ValidationError("e must be a unit imaginary octonion")
    Ye = oct_mul(Y, e)
    return a.inner(Y) * e - b.inner(Y) * ONE - oct_mul(conj(Ye), p)


def lemma_oct_L(a: Octonion, b: Octonion, p: Octonion, e: Octonion, Y: Octonion) -> Octonion:
    return a.inner(Y) * ONE + b.inner(Y) * e + oct_mul(conj(Y), p)


def lemma_oct_residual(a, b, p, e, Y) -> Octonion:
    """(Ye) L(Y) - Y F(Y); the zero octonion for all inputs."""
    L = lemma_oct_L(a, b, p, e, Y)
    F = lemma_oct_F(a, b, p, e, Y)
    return oct_mul(oct_mul(Y, e), L) - oct_mul(Y, F)


def lemma_oct_quadforms(a: Octonion, b: Octonion, p: Octonion):
    """The quadratic forms C, D of the lemma's reduction, in the 6 variables of span(1, e1)^perp.

    For L of the lemma form with e = e1, the reduced operator on
    u = sum_{t=2..7} u_t e_t is L~(u) = gamma u + delta (u e) with
    gamma = <a, 1>, delta = <b, 1>; then C(u) = <L~(u), u> and
    D(u) = <L~(u), u e> satisfy |u|^2 |L~(u)|^2 = C^2 + D^2, and the
    divisibility corollary forces |u|^2 to divide each of C and D.
    Everything is computed symbolically through the multiplication table.
    """
    e = E[1]
    nvars = 6

    def sym_oct(coeff_polys):
        return list(coeff_polys)  # 8 Polys in 6 variables

    # u = sum_{t=2..7} u_t e_t with symbolic coefficients
    u = [Poly.zero(nvars) for _ in range(8)]
    for t in range(2, 8):
        u[t] = Poly.variable(nvars, t - 2)

    def oct_mul_sym(x, y):
        from .octonion import DEFAULT_TABLE

        out = [Poly.zero(nvars) for _ in range(8)]
        for i in range(8):
            if x[i].is_zero():
                continue
            for j in range(8):
                if y[j].is_zero():
                    continue
                term = x[i] * y[j]
                if DEFAULT_TABLE.sign[i][j] < 0:
                    term = -term
                k = DEFAULT_TABLE.index[i][j]
                out[k] = out[k] + term
        return out

    def const_oct(o: Octonion):
        return [Poly.constant(nvars, c) for c in o.coeffs]

    def inner_sym(x, y):
        total = Poly.zero(nvars)
        for i in range(8):
            total = total + x[i] * y[i]
        return total

    def conj_sym(x):
        return [x[0]] + [-q for q in x[1:]]

    # L(u) = <a,u> 1 + <b,u> e + u* p, then the hat reduction and the
    # projection off span(1, e):
    a_s, b_s, p_s, e_s = const_oct(a), const_oct(b), const_oct(p), const_oct(e)
    one_s = const_oct(ONE)
    au = inner_sym(a_s, u)
    bu = inner_sym(b_s, u)
    L_u = [au * one_s[i] + bu * e_s[i] for i in range(8)]
    up = oct_mul_sym(conj_sym(u), p_s)
    L_u = [L_u[i] + up[i] for i in range(8)]
    L1 = lemma_oct_L(a, b, p, E[1], ONE)
    uL1 = oct_mul_sym(conj_sym(u), const_oct(L1))
    Lhat = [L_u[i] - uL1[i] for i in range(8)]
    # strip the alpha(u) 1 + beta(u) e part
    Ltil = list(Lhat)
    Ltil[0] = Poly.zero(nvars)
    Ltil[1] = Poly.zero(nvars)
    ue = oct_mul_sym(u, e_s)
    C = inner_sym(Ltil, u)
    D = inner_sym(Ltil, ue)
    norm_u = inner_sym(u, u)
    norm_Ltil = inner_sym(Ltil, Ltil)
    return {
        "C": C,
        "D": D,
        "norm_identity_holds": (norm_u * norm_Ltil) == (C * C + D * D),
        "sum_of_squares": C * C + D * D,
        "norm_sq": norm_u,
    }
