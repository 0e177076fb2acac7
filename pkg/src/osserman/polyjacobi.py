"""Exact multivariate polynomials, reduction modulo |X|^2, and the
eigenprojection / Gram machinery for linear Clifford families.

Polynomials are dicts {exponent tuple: Fraction} with a fixed variable
count.  `reduce_mod_norm` rewrites the last variable's square as minus the
sum of the others until its degree drops below 2, which is a canonical
form in R[X]/(|X|^2) for n >= 3 (|X|^2 is irreducible there).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import AlgebraicCurvatureTensor, jacobi
from .errors import DegeneracyError, ValidationError
from .numkit import sample_unit_vectors


class Poly:
    """Multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for expo, coef in (terms.items() if isinstance(terms, dict) else terms):
                self._add_term(tuple(expo), Fraction(coef))

    def _add_term(self, expo, coef):
        if len(expo) != self.nvars:
            raise ValidationError(f"exponent tuple {expo} has wrong arity")
        if coef == 0:
            return
        new = self.terms.get(expo, Fraction(0)) + coef
        if new == 0:
            self.terms.pop(expo, None)
        else:
            self.terms[expo] = new

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        expo = [0] * nvars
        expo[i] = 1
        return Poly(nvars, {tuple(expo): Fraction(1)})

    @staticmethod
    def norm_sq(nvars: int) -> "Poly":
        p = Poly(nvars)
        for i in range(nvars):
            expo = [0] * nvars
            expo[i] = 2
            p._add_term(tuple(expo), Fraction(1))
        return p

    def copy(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return True if degree is None else degs == {degree}

    def __add__(self, other: "Poly") -> "Poly":
        p = self.copy()
        for expo, coef in other.terms.items():
            p._add_term(expo, coef)
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        p = self.copy()
        for expo, coef in other.terms.items():
            p._add_term(expo, -coef)
        return p

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        p = Poly(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                p._add_term(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return p

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        total = Fraction(0)
        exact = all(not isinstance(x, float) for x in point)
        if not exact:
            total = 0.0
            point = [float(x) for x in point]
        for expo, coef in self.terms.items():
            term = coef if exact else float(coef)
            for x, e in zip(point, expo):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for expo in sorted(self.terms, reverse=True):
            coef = self.terms[expo]
            mono = " ".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(expo) if e
            )
            bits.append(f"{coef}" + (f" {mono}" if mono else ""))
        return "Poly(" + " + ".join(bits) + ")"


def parse_poly(nvars: int, text: str) -> Poly:
    """Parse `coef x1^a1 ... xn^an` terms joined by `+` (use `+ -coef ...` for minus)."""
    p = Poly(nvars)
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            continue
        parts = raw.split()
        coef = Fraction(parts[0])
        expo = [0] * nvars
        for factor in parts[1:]:
            name, _, power = factor.partition("^")
            if not name.startswith("x"):
                raise ValidationError(f"bad variable {name!r}")
            i = int(name[1:]) - 1
            if not 0 <= i < nvars:
                raise ValidationError(f"variable index out of range in {factor!r}")
            expo[i] += int(power) if power else 1
        p._add_term(tuple(expo), coef)
    return p


def reduce_mod_norm(p: Poly) -> Poly:
    """Canonical representative of p in R[X]/(|X|^2).

    Substitutes x_n^2 -> -(x_1^2 + ... + x_{n-1}^2) until the degree in
    x_n is at most 1.  reduce(p * |X|^2) = 0, and reduce is a ring
    morphism on canonical forms.
    """
    n = p.nvars
    if n < 3:
        raise ValidationError("reduction needs at least 3 variables (irreducibility)")
    last = n - 1
    work = dict(p.terms)
    out = Poly(n)
    while work:
        expo, coef = work.popitem()
        if expo[last] < 2:
            out._add_term(expo, coef)
            continue
        base = list(expo)
        base[last] -= 2
        for i in range(last):
            sub = list(base)
            sub[i] += 2
            key = tuple(sub)
            new = work.get(key, Fraction(0)) - coef
            if new == 0:
                work.pop(key, None)
            else:
                work[key] = new
    return out


def divisible_by_norm(p: Poly) -> bool:
    """True iff |X|^2 divides p (tested by canonical reduction)."""
    return reduce_mod_norm(p).is_zero()


@dataclass
class HomPolyVec:
    """Vector of polynomials, every component homogeneous of one degree."""

    nvars: int
    degree: int
    components: list

    def __post_init__(self):
        for q in self.components:
            if q.nvars != self.nvars:
                raise ValidationError("component arity mismatch")
            if not q.is_homogeneous(self.degree) and not q.is_zero():
                raise ValidationError(f"component {q!r} is not homogeneous of degree {self.degree}")

    @staticmethod
    def linear_from_matrix(J) -> "HomPolyVec":
        """The degree-1 vector X -> J X for an exact (integer/rational) matrix."""
        J = np.asarray(J)
        n = J.shape[1]
        comps = []
        for a in range(J.shape[0]):
            q = Poly(n)
            for i in range(n):
                # Fraction() is exact for ints, Fractions and binary floats
                val = Fraction(J[a, i])
                if val:
                    expo = [0] * n
                    expo[i] = 1
                    q._add_term(tuple(expo), val)
            comps.append(q)
        return HomPolyVec(n, 1, comps)

    def dot(self, other: "HomPolyVec") -> Poly:
        out = Poly(self.nvars)
        for a, b in zip(self.components, other.components):
            out = out + a * b
        return out

    def evaluate(self, point) -> np.ndarray:
        return np.array([float(q.evaluate(point)) for q in self.components])


@dataclass
class PolyGramSystem:
    """Columns P_1(X)..P_nu(X) of the matrix A(X), with eigenvalue weights."""

    columns: list          # HomPolyVec list
    weights: tuple         # mu_1..mu_nu as exact rationals

    def __post_init__(self):
        self.weights = tuple(Fraction(w) for w in self.weights)
        if len(self.columns) != len(self.weights):
            raise ValidationError("one weight per column required")
        if self.columns:
            nv = self.columns[0].nvars
            dg = self.columns[0].degree
            for c in self.columns:
                if c.nvars != nv or c.degree != dg:
                    raise ValidationError("columns must share arity and degree")

    @staticmethod
    def from_family(family, mu) -> "PolyGramSystem":
        cols = [HomPolyVec.linear_from_matrix(J) for J in family]
        return PolyGramSystem(cols, tuple(mu))


def _jacobi_quadform_exact(R: AlgebraicCurvatureTensor) -> np.ndarray:
    """Q[a][b] = the quadratic form X -> (R_X)[a,b], as exact Polys."""
    if R.exact is None:
        raise ValidationError("gram check needs a tensor with exact components")
    n = R.dim
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            q = Poly(n)
            for i in range(n):
                for k in range(n):
                    coef = R.exact[i, b, k, a]
                    if coef:
                        expo = [0] * n
                        expo[i] += 1
                        expo[k] += 1
                        q._add_term(tuple(expo), coef)
            out[a, b] = q
    return out


def gram_residuals(sys: PolyGramSystem, R: AlgebraicCurvatureTensor,
                   powers=(1,), samples: int = 50, seed: int = 0,
                   tol: float = 1e-10) -> dict:
    """Verify the Gram identities of a linear family symbolically.

    A(X)^t A(X) = |X|^2 I_nu and A(X) Lambda A(X)^t = R_X are checked as
    exact quadratic-form equalities (degree-1 columns only).  For k >= 2
    the power identity A(X) Lambda^k A(X)^t = R_X^k is checked numerically
    at seeded unit vectors.
    """
    report = {"orthogonality_exact": True, "jacobi_exact": True, "power_residuals": {}}
    nu = len(sys.columns)
    if nu == 0:
        return report
    if sys.columns[0].degree != 1:
        raise ValidationError("general polynomial degree is unsupported; columns must be linear")
    n = sys.columns[0].nvars
    norm2 = Poly.norm_sq(n)
    for s in range(nu):
        for q in range(s, nu):
            got = sys.columns[s].dot(sys.columns[q])
            want = norm2 if s == q else Poly.zero(n)
            if got != want:
                report["orthogonality_exact"] = False
    quad = _jacobi_quadform_exact(R)
    for a in range(n):
        for b in range(n):
            acc = Poly(n)
            for s in range(nu):
                acc = acc + (sys.columns[s].components[a] * sys.columns[s].components[b]).scale(sys.weights[s])
            if not (acc - quad[a, b]).is_zero():
                report["jacobi_exact"] = False
    for k in powers:
        if k < 2:
            continue
        worst = 0.0
        for X in sample_unit_vectors(n, samples, seed):
            A = np.column_stack([c.evaluate(X) for c in sys.columns])
            lhs = A @ np.diag([float(w) ** k for w in sys.weights]) @ A.T
            M = jacobi(R, X)
            rhs = np.linalg.matrix_power(M, k)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        report["power_residuals"][k] = worst
    report["power_ok"] = all(v < tol for v in report["power_residuals"].values())
    return report


def eigenprojection_W(R: AlgebraicCurvatureTensor, spectrum, target: int,
                      X: np.ndarray) -> np.ndarray:
    """W_X = rho^-1 R_X prod_{other nonzero values v} (R_X - v |X|^2 I).

    `spectrum` lists the distinct Jacobi eigenvalues including 0; `target`
    indexes the eigenvalue lambda being projected onto.  The result scales
    the orthogonal projection onto E_{lambda |X|^2}(X) by |X|^(2k-2), with
    entries polynomial of degree 2k-2 in X.
    """
    spectrum = [float(v) for v in spectrum]
    if 0.0 not in spectrum:
        raise ValidationError("spectrum must contain the eigenvalue 0")
    lam = spectrum[target]
    if lam == 0.0:
        raise ValidationError("target eigenvalue must be nonzero")
    others = [v for i, v in enumerate(spectrum) if i != target and v != 0.0]
    rho = lam
    for v in others:
        if lam == v:
            raise DegeneracyError(f"coincident eigenvalues {lam} in the projection factor")
        rho *= lam - v
    if rho == 0.0:
        raise DegeneracyError("vanishing normalization rho")
    X = np.asarray(X, dtype=float)
    x2 = float(X @ X)
    M = jacobi(R, X)
    W = M.copy()
    eye = np.eye(R.dim)
    for v in others:
        W = W @ (M - v * x2 * eye)
    return W / rho
