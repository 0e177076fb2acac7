"""Exact octonion and bioctonion arithmetic over a fixed canonical basis.

The basis is 1, e1..e7 with multiplication encoded by seven oriented Fano
triples.  Exactly two orientation assignments are alternative and
reproduce the anchor products e1*e2 = e3, e1*e4 = e5, e1*e6 = -e7 (see
`search_orientations`); they are exchanged by negating e4..e7 and agree on
every product involving e1.  The shipped table is the Cayley-Dickson one:
quaternion block (1,2,3) doubled by e4, so e5 = e1 e4, e6 = e2 e4,
e7 = e3 e4.

Real octonions carry exact coefficients (int / Fraction), bioctonions use
complex floats with a *bilinear* scalar product <a,b> = sum a_i b_i, so
isotropic vectors (<Y,Y> = 0) exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from .errors import ValidationError
from .numkit import Xoshiro256

# Unordered Fano lines: the three through 1 are pinned by the anchor
# products; the remaining four take one point from each of the blocks
# {2,3}, {4,5}, {6,7}.
FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))

# Oriented triples of the shipped table: (a, b, c) means e_a e_b = e_c,
# extended cyclically.  Frozen output of search_orientations().
DEFAULT_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


@dataclass(frozen=True)
class MultiplicationTable:
    """Oriented Fano triples plus the derived sign/index arrays."""

    triples: tuple

    def __post_init__(self):
        idx = [[0] * 8 for _ in range(8)]
        sgn = [[0] * 8 for _ in range(8)]
        for j in range(8):
            idx[0][j] = j
            sgn[0][j] = 1
            idx[j][0] = j
            sgn[j][0] = 1
        for i in range(1, 8):
            idx[i][i] = 0
            sgn[i][i] = -1
        seen = set()
        for (a, b, c) in self.triples:
            for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                if idx[x][y] != 0 and (x, y) in seen:
                    raise ValidationError(f"pair ({x},{y}) appears on two lines")
                seen.add((x, y))
                seen.add((y, x))
                idx[x][y] = z
                sgn[x][y] = 1
                idx[y][x] = z
                sgn[y][x] = -1
        if len(seen) != 42:
            raise ValidationError("triples do not cover every pair exactly once")
        object.__setattr__(self, "index", tuple(tuple(r) for r in idx))
        object.__setattr__(self, "sign", tuple(tuple(r) for r in sgn))

    def to_text(self) -> str:
        """One `i j k sign` line per ordered basis product e_i e_j = sign e_k."""
        lines = []
        for i in range(1, 8):
            for j in range(1, 8):
                if i != j:
                    lines.append(f"{i} {j} {self.index[i][j]} {self.sign[i][j]:+d}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "MultiplicationTable":
        prods = {}
        for line in text.strip().splitlines():
            i, j, k, s = line.split()
            prods[(int(i), int(j))] = (int(k), int(s))
        triples = []
        seen_lines = set()
        for (i, j), (k, s) in prods.items():
            key = frozenset((i, j, k))
            if key in seen_lines:
                continue
            seen_lines.add(key)
            triples.append((i, j, k) if s > 0 else (j, i, k))
        t = MultiplicationTable(tuple(sorted(triples)))
        for (i, j), (k, s) in prods.items():
            if t.index[i][j] != k or t.sign[i][j] != s:
                raise ValidationError(f"inconsistent product listing at ({i},{j})")
        return t


DEFAULT_TABLE = MultiplicationTable(DEFAULT_TRIPLES)


class Octonion:
    """Octonion with exact rational coefficients in the basis 1, e1..e7."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, table: MultiplicationTable = DEFAULT_TABLE):
        coeffs = tuple(coeffs)
        if len(coeffs) != 8:
            raise ValidationError("an octonion needs 8 coefficients")
        self.coeffs = coeffs

    @staticmethod
    def unit(i: int) -> "Octonion":
        c = [0] * 8
        c[i] = 1
        return Octonion(c)

    @staticmethod
    def zero() -> "Octonion":
        return Octonion((0,) * 8)

    def __add__(self, other):
        return Octonion(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Octonion(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Octonion(tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        return Octonion(tuple(scalar * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            return Octonion(tuple(a * other for a in self.coeffs))
        return oct_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, Octonion) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Octonion({list(self.coeffs)})"

    def inner(self, other: "Octonion"):
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def norm_sq(self):
        return sum(a * a for a in self.coeffs)

    def is_imaginary(self) -> bool:
        return self.coeffs[0] == 0

    def to_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def inverse(self) -> "Octonion":
        n2 = self.norm_sq()
        if n2 == 0:
            raise ValidationError("zero octonion has no inverse")
        scale = Fraction(1, 1) / Fraction(n2) if not isinstance(n2, float) else 1.0 / n2
        return scale * conj(self)


ONE = Octonion.unit(0)
E = tuple(Octonion.unit(i) for i in range(8))


def oct_mul(a: Octonion, b: Octonion, table: MultiplicationTable = DEFAULT_TABLE) -> Octonion:
    """Bilinear product from the oriented-triple table."""
    idx, sgn = table.index, table.sign
    ac, bc = a.coeffs, b.coeffs
    out = [0] * 8
    for i in range(8):
        ai = ac[i]
        if ai == 0:
            continue
        row_i, row_s = idx[i], sgn[i]
        for j in range(8):
            bj = bc[j]
            if bj == 0:
                continue
            out[row_i[j]] += row_s[j] * ai * bj
    return Octonion(out)


def conj(a: Octonion) -> Octonion:
    """a* = 2<a,1>1 - a."""
    c = a.coeffs
    return Octonion((c[0],) + tuple(-x for x in c[1:]))


_IDENTITY_NAMES = (
    "conj_isometry",        # <a*, b*> = <a, b>
    "triple_shift",         # <a, bc> = <b*a, c> = <ac*, b>
    "left_alternative",     # a(ab) = (a^2) b
    "right_alternative",    # (ba)a = b(a^2)
    "conj_cancellation",    # a(a*b) = (ba)a* = |a|^2 b
    "exchange_right",       # (ab*)c + (ac*)b = 2<b,c> a
    "exchange_left",        # a(b*c) + b(a*c) = 2<a,b> c
    "norm_composition",     # |ab|^2 = |a|^2 |b|^2
)


def identity_suite(a: Octonion, b: Octonion, c: Octonion) -> dict:
    """Exact check of the eight composition-algebra identities on one triple.

    Returns {identity name: bool}.  Any False signals a broken table.
    """
    ca, cb, cc = conj(a), conj(b), conj(c)
    n2a = a.norm_sq()
    ab = a * b
    out = {}
    out["conj_isometry"] = ca.inner(cb) == a.inner(b)
    out["triple_shift"] = (
        a.inner(b * c) == (cb * a).inner(c) == (a * cc).inner(b)
    )
    a2 = a * a
    out["left_alternative"] = a * ab == a2 * b
    ba = b * a
    out["right_alternative"] = ba * a == b * a2
    n2b_oct = n2a * b
    out["conj_cancellation"] = (a * (ca * b) == n2b_oct) and (ba * ca == n2b_oct)
    two_bc_a = (2 * b.inner(c)) * a
    out["exchange_right"] = (a * cb) * c + (a * cc) * b == two_bc_a
    two_ab_c = (2 * a.inner(b)) * c
    out["exchange_left"] = a * (cb * c) + b * (ca * c) == two_ab_c
    out["norm_composition"] = ab.norm_sq() == n2a * b.norm_sq()
    return out


def identity_suite_failures(a, b, c):
    return [name for name, ok in identity_suite(a, b, c).items() if not ok]


def random_int_octonion(rng: Xoshiro256, low: int = -9, high: int = 10) -> Octonion:
    return Octonion(rng.integers(low, high, 8))


def validate_table(table: MultiplicationTable) -> tuple[bool, list[str]]:
    """Anticommutation, alternativity, and the three anchor products.

    Alternativity is checked on all two-unit sums a = e_i + e_j as well as
    on the units themselves: single units cannot see the associator across
    different Fano lines, so a table with one line orientation flipped
    still passes the unit-level check but fails here.
    """
    failures = []
    units = [Octonion.unit(i) for i in range(8)]

    def mul(x, y):
        return oct_mul(x, y, table)

    for i in range(1, 8):
        if mul(units[i], units[i]) != -units[0]:
            failures.append(f"e{i}^2 != -1")
        for j in range(1, 8):
            if i != j:
                anti = mul(units[i], units[j]) + mul(units[j], units[i])
                if anti != Octonion.zero():
                    failures.append(f"e{i}e{j} + e{j}e{i} != 0")
    candidates = [units[i] for i in range(8)]
    candidates += [units[i] + units[j] for i in range(1, 8) for j in range(i + 1, 8)]
    for a in candidates:
        a2 = mul(a, a)
        for k in range(8):
            b = units[k]
            if mul(a, mul(a, b)) != mul(a2, b):
                failures.append(f"alternativity fails at ({a!r}, e{k})")
                break
    anchors = (((1, 2), 3, 1), ((1, 4), 5, 1), ((1, 6), 7, -1))
    for (i, j), k, s in anchors:
        got = mul(units[i], units[j])
        if got != s * units[k]:
            failures.append(f"anchor product e{i}e{j} != {'+' if s > 0 else '-'}e{k}")
    return (not failures), failures


def search_orientations() -> list[MultiplicationTable]:
    """Brute-force the line orientations that pass validate_table.

    The three lines through 1 are pinned by the anchor products; each of
    the other four lines has two cyclic orientations, giving 16 candidates.
    Exactly two survive (all-flipped images of one another under negating
    e4..e7); DEFAULT_TRIPLES is the Cayley-Dickson member of the pair.
    """
    fixed = [(1, 2, 3), (1, 4, 5), (1, 7, 6)]
    free = [(2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    found = []
    for flips in iproduct((False, True), repeat=4):
        triples = list(fixed)
        for line, flip in zip(free, flips):
            a, b, c = line
            triples.append((b, a, c) if flip else (a, b, c))
        try:
            table = MultiplicationTable(tuple(triples))
        except ValidationError:
            continue
        ok, _ = validate_table(table)
        if ok:
            found.append(table)
    return found


# ---------------------------------------------------------------------------
# Right multiplication operators
# ---------------------------------------------------------------------------

def _basis_right_mult_int(table: MultiplicationTable = DEFAULT_TABLE):
    """Integer matrices of X -> X e_i for i = 0..7 (i = 0 is the identity)."""
    mats = []
    for i in range(8):
        M = np.zeros((8, 8), dtype=np.int64)
        for b in range(8):
            M[table.index[b][i], b] = table.sign[b][i]
        mats.append(M)
    return mats


RIGHT_MULT_INT = _basis_right_mult_int()


def right_mult_matrix(u) -> np.ndarray:
    """Float matrix of X -> X u for an octonion (or coefficient vector) u."""
    cu = u.coeffs if isinstance(u, Octonion) else u
    M = np.zeros((8, 8))
    for i in range(8):
        ci = float(cu[i])
        if ci != 0.0:
            M += ci * RIGHT_MULT_INT[i]
    return M


def j_op(u) -> np.ndarray:
    """The operator J_u : X -> X u as an 8x8 matrix, for imaginary u.

    Skew-symmetric always; orthogonal when ||u|| = 1.  j_op(e_i) are the
    seven basis operators J_i.
    """
    cu = u.coeffs if isinstance(u, Octonion) else tuple(u)
    if cu[0] != 0:
        raise ValidationError("j_op needs u orthogonal to 1")
    return right_mult_matrix(cu)


# ---------------------------------------------------------------------------
# Bioctonions
# ---------------------------------------------------------------------------

class Bioctonion:
    """Octonion with complex coefficients; the scalar product is bilinear."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (8,):
            raise ValidationError("a bioctonion needs 8 complex coefficients")
        self.coeffs = coeffs

    @staticmethod
    def unit(i: int) -> "Bioctonion":
        c = np.zeros(8, dtype=complex)
        c[i] = 1
        return Bioctonion(c)

    @staticmethod
    def from_octonion(a: Octonion) -> "Bioctonion":
        return Bioctonion([complex(float(x), 0.0) for x in a.coeffs])

    def __add__(self, other):
        return Bioctonion(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return Bioctonion(self.coeffs - other.coeffs)

    def __neg__(self):
        return Bioctonion(-self.coeffs)

    def __rmul__(self, scalar):
        return Bioctonion(scalar * self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Bioctonion):
            return Bioctonion(self.coeffs * other)
        return bioct_mul(self, other)

    def __repr__(self):
        return f"Bioctonion({self.coeffs.tolist()})"

    def inner(self, other: "Bioctonion") -> complex:
        """Bilinear product sum a_i b_i (no conjugation)."""
        return complex(np.sum(self.coeffs * other.coeffs))

    def bilinear_norm_sq(self) -> complex:
        return complex(np.sum(self.coeffs * self.coeffs))

    def is_isotropic(self, tol: float = 1e-12) -> bool:
        return abs(self.bilinear_norm_sq()) <= tol

    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))


def bioct_mul(a: Bioctonion, b: Bioctonion, table: MultiplicationTable = DEFAULT_TABLE) -> Bioctonion:
    idx, sgn = table.index, table.sign
    out = np.zeros(8, dtype=complex)
    ac, bc = a.coeffs, b.coeffs
    for i in range(8):
        ai = ac[i]
        if ai == 0:
            continue
        row_i, row_s = idx[i], sgn[i]
        for j in range(8):
            bj = bc[j]
            if bj == 0:
                continue
            out[row_i[j]] += row_s[j] * ai * bj
    return Bioctonion(out)


def bioct_conj(a: Bioctonion) -> Bioctonion:
    c = a.coeffs.copy()
    c[1:] = -c[1:]
    return Bioctonion(c)


def _row_reduce_basis(rows: np.ndarray, pivot_tol: float = 1e-10) -> np.ndarray:
    """Indices of a maximal independent subset via complex row reduction.

    Pivot threshold is relative to the largest entry of the stack.
    """
    work = np.array(rows, dtype=complex)
    scale = float(np.max(np.abs(work))) if work.size else 0.0
    if scale == 0.0:
        return np.array([], dtype=int)
    keep = []
    pivots = []
    for r in range(work.shape[0]):
        v = work[r].copy()
        for (col, pv) in pivots:
            v = v - v[col] * pv
        mags = np.abs(v)
        col = int(np.argmax(mags))
        if mags[col] > pivot_tol * scale:
            pivots.append((col, v / v[col]))
            keep.append(r)
    return np.array(keep, dtype=int)


def jspace(Y: Bioctonion, pivot_tol: float = 1e-10) -> list[Bioctonion]:
    """Basis of span_C(J_1 Y, ..., J_7 Y) = Y (O (x) C).

    Returns a maximal independent subset of the J_i Y themselves.  For
    isotropic Y this span is totally isotropic (of dimension 4).
    """
    if Y.is_zero():
        raise ValidationError("jspace needs Y != 0")
    gens = [bioct_mul(Y, Bioctonion.unit(i)) for i in range(1, 8)]
    keep = _row_reduce_basis(np.array([g.coeffs for g in gens]), pivot_tol)
    return [gens[k] for k in keep]


def lspace_generator(lam, X: Bioctonion, U: Bioctonion) -> Bioctonion:
    """sum_i lam_i <J_i X, U> J_i X with the bilinear product."""
    out = np.zeros(8, dtype=complex)
    for i in range(1, 8):
        JiX = bioct_mul(X, Bioctonion.unit(i))
        out += lam[i - 1] * JiX.inner(U) * JiX.coeffs
    return Bioctonion(out)


def lspace(Y: Bioctonion, lam, pivot_tol: float = 1e-10) -> list[Bioctonion]:
    """Basis of J Y together with the lam-weighted generators over pairs from jspace(Y)."""
    if Y.is_zero():
        raise ValidationError("lspace needs Y != 0")
    if not Y.is_isotropic():
        raise ValidationError("lspace needs an isotropic Y (<Y,Y> = 0)")
    lam = [complex(x) for x in lam]
    if len(lam) != 7:
        raise ValidationError("lspace needs 7 scalars")
    base = jspace(Y, pivot_tol)
    gens = list(base)
    for X in base:
        for U in base:
            gens.append(lspace_generator(lam, X, U))
    keep = _row_reduce_basis(np.array([g.coeffs for g in gens]), pivot_tol)
    return [gens[k] for k in keep]


def span_dim(vectors, pivot_tol: float = 1e-10) -> int:
    rows = np.array([v.coeffs if isinstance(v, Bioctonion) else v for v in vectors])
    return len(_row_reduce_basis(rows, pivot_tol))


def in_span(vector, basis, pivot_tol: float = 1e-10) -> bool:
    rows = [b.coeffs if isinstance(b, Bioctonion) else b for b in basis]
    v = vector.coeffs if isinstance(vector, Bioctonion) else vector
    return span_dim(rows + [v], pivot_tol) == span_dim(rows, pivot_tol)
