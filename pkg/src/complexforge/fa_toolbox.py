"""Finite-dimensional Hilbert complexes: adjoints, harmonic spaces,
Helmholtz splittings, geometric potentials and Friedrichs constants.

Every space carries a Gram matrix G (inner product x^T G y).  Computations
run in the Euclidean frame x~ = L^T x with G = L L^T (Cholesky); an
operator A : H_dom -> H_cod becomes A~ = L_cod^T A L_dom^-T there.
Rank decisions use the SVD: singular values below ``tol_rank * sigma_max``
count as zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.io
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import (
    ComplexViolation, NotInRange, ShapeMismatch, SingularGram, ZeroOperator,
)
from .rational_linalg import exact_rank

TOL_COMPLEX = 1e-10
TOL_RANK = 1e-10
TOL_ORTH = 1e-10
TOL_RANGE = 1e-10


class InnerProductSpace:
    """R^n with a symmetric positive-definite Gram matrix."""

    def __init__(self, dimension: int, gram=None):
        if dimension < 0:
            raise ValueError("dimension must be non-negative")
        self.dimension = int(dimension)
        if gram is None:
            self.gram = np.eye(self.dimension)
            self._chol = np.eye(self.dimension)
            self.is_euclidean = True
            return
        g = np.asarray(gram.toarray() if sp.issparse(gram) else gram, dtype=float)
        if g.shape != (self.dimension, self.dimension):
            raise ShapeMismatch(f"gram shape {g.shape} != ({dimension}, {dimension})")
        if not np.allclose(g, g.T, rtol=1e-12, atol=1e-14 * max(1.0, np.abs(g).max(initial=0))):
            raise SingularGram("gram matrix is not symmetric")
        try:
            self._chol = np.linalg.cholesky(g) if self.dimension else g
        except np.linalg.LinAlgError:
            raise SingularGram("gram matrix is not positive definite") from None
        if self.dimension and np.min(np.abs(np.diag(self._chol))) < 1e-12 * np.max(np.abs(np.diag(self._chol))):
            raise SingularGram("gram matrix is numerically singular")
        self.gram = g
        self.is_euclidean = False

    @classmethod
    def euclidean(cls, n: int) -> "InnerProductSpace":
        return cls(n)

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.linalg.norm(self.to_frame(x)))

    def to_frame(self, x):
        """L^T x (Euclidean coordinates)."""
        return x if self.is_euclidean else self._chol.T @ x

    def from_frame(self, y):
        """L^-T y."""
        if self.is_euclidean:
            return y
        return sla.solve_triangular(self._chol.T, y, lower=False)

    def __repr__(self):
        kind = "euclidean" if self.is_euclidean else "weighted"
        return f"InnerProductSpace({self.dimension}, {kind})"


class LinearOp:
    """Matrix of shape (dim codomain, dim domain) between inner-product spaces."""

    def __init__(self, matrix, domain: InnerProductSpace | None = None,
                 codomain: InnerProductSpace | None = None):
        if sp.issparse(matrix):
            matrix = matrix.toarray()
        m = np.atleast_2d(np.asarray(matrix, dtype=float))
        if np.asarray(matrix).ndim == 1 and np.asarray(matrix).size == 0:
            m = np.zeros((0, 0))
        self.matrix = m
        self.domain = domain or InnerProductSpace(m.shape[1])
        self.codomain = codomain or InnerProductSpace(m.shape[0])
        if m.shape != (self.codomain.dimension, self.domain.dimension):
            raise ShapeMismatch(
                f"matrix shape {m.shape} != ({self.codomain.dimension}, {self.domain.dimension})"
            )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearOp":
        return cls(np.zeros((rows, cols)))

    @property
    def shape(self):
        return self.matrix.shape

    def __call__(self, x):
        return self.matrix @ x

    def __matmul__(self, other: "LinearOp") -> "LinearOp":
        return LinearOp(self.matrix @ other.matrix, other.domain, self.codomain)

    def frame_matrix(self) -> np.ndarray:
        """A~ = L_cod^T A L_dom^-T."""
        a = self.matrix
        if not self.codomain.is_euclidean:
            a = self.codomain._chol.T @ a
        if not self.domain.is_euclidean and a.size:
            # right-multiply by L_dom^-T
            a = sla.solve_triangular(self.domain._chol, a.T, lower=True).T
        return a


def adjoint(op: LinearOp) -> LinearOp:
    """Hilbert adjoint A* = G_dom^-1 A^T G_cod."""
    a = op.matrix.T @ op.codomain.gram
    if not op.domain.is_euclidean and a.size:
        try:
            a = sla.cho_solve((op.domain._chol, True), a)
        except (np.linalg.LinAlgError, ValueError):
            raise SingularGram("domain gram is singular") from None
    return LinearOp(a, op.codomain, op.domain)


@dataclass
class ComplexPair:
    """H0 --a0--> H1 --a1--> H2."""

    a0: LinearOp
    a1: LinearOp

    def __post_init__(self):
        if self.a0.shape[0] != self.a1.shape[1]:
            raise ShapeMismatch(
                f"a0 maps into R^{self.a0.shape[0]} but a1 acts on R^{self.a1.shape[1]}"
            )

    @property
    def dims(self) -> tuple:
        return (self.a0.shape[1], self.a0.shape[0], self.a1.shape[0])

    @property
    def h1(self) -> InnerProductSpace:
        return self.a0.codomain


def check_complex(pair: ComplexPair, eps: float = 1e-300) -> float:
    """Relative Frobenius size of a1 a0; zero for an exact complex."""
    a0, a1 = pair.a0.matrix, pair.a1.matrix
    if a0.size == 0 or a1.size == 0:
        return 0.0
    prod = np.linalg.norm(a1 @ a0)
    if prod == 0.0:
        return 0.0
    return float(prod / (np.linalg.norm(a1) * np.linalg.norm(a0) + eps))


def _require_complex(pair: ComplexPair, tol: float) -> None:
    r = check_complex(pair)
    if r > tol:
        raise ComplexViolation(f"a1 a0 != 0 (relative residual {r:.3e} > {tol:.1e})")


def _range_basis(a: np.ndarray, tol_rank: float) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of ``a``."""
    if a.size == 0:
        return np.zeros((a.shape[0], 0))
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[0], 0))
    return u[:, s > tol_rank * s[0]]


def numerical_rank(a: np.ndarray, tol_rank: float = TOL_RANK) -> int:
    return _range_basis(np.asarray(a, dtype=float), tol_rank).shape[1]


def harmonic_basis(pair: ComplexPair, tol_rank: float = TOL_RANK,
                   tol_complex: float = TOL_COMPLEX) -> np.ndarray:
    """Gram-orthonormal basis (columns) of N(a1) intersect N(a0*)."""
    _require_complex(pair, tol_complex)
    n1 = pair.dims[1]
    if n1 == 0:
        return np.zeros((0, 0))
    stacked = np.vstack([pair.a1.frame_matrix(), pair.a0.frame_matrix().T])
    if stacked.shape[0] == 0 or not np.any(stacked):
        null = np.eye(n1)
    else:
        _, s, vt = np.linalg.svd(stacked, full_matrices=True)
        r = int(np.sum(s > tol_rank * s[0])) if s.size and s[0] > 0 else 0
        null = vt[r:].T
    return pair.h1.from_frame(null)


@dataclass
class HelmholtzSplit:
    range_a0: np.ndarray
    harmonic: np.ndarray
    range_a1_adjoint: np.ndarray
    residual_norm: float

    def parts(self) -> tuple:
        return (self.range_a0, self.harmonic, self.range_a1_adjoint)


def helmholtz_split(pair: ComplexPair, x, tol_rank: float = TOL_RANK,
                    tol_complex: float = TOL_COMPLEX) -> HelmholtzSplit:
    """x = x_R(a0) + x_harmonic + x_R(a1*), mutually gram-orthogonal.

    The two range components are least-squares projections; the harmonic
    part is what remains.  ``residual_norm`` is the relative gram norm of
    x minus the sum of the parts.
    """
    _require_complex(pair, tol_complex)
    x = np.asarray(x, dtype=float)
    h1 = pair.h1
    y = h1.to_frame(x)
    u0 = _range_basis(pair.a0.frame_matrix(), tol_rank)
    u1 = _range_basis(pair.a1.frame_matrix().T, tol_rank)
    y0 = u0 @ (u0.T @ y)
    y2 = u1 @ (u1.T @ y)
    yh = y - y0 - y2
    parts = [h1.from_frame(p) for p in (y0, yh, y2)]
    scale = np.linalg.norm(y)
    resid = np.linalg.norm(h1.to_frame(x - parts[0] - parts[1] - parts[2]))
    return HelmholtzSplit(*parts, residual_norm=float(resid / scale) if scale else float(resid))


def reduced_inverse(op: LinearOp, tol_rank: float = TOL_RANK) -> LinearOp:
    """Matrix of the geometric potential operator (inverse of the reduced operator).

    Maps codomain -> domain; on R(A) it returns the solution orthogonal to N(A).
    """
    a = op.frame_matrix()
    if a.size == 0:
        return LinearOp(np.zeros(op.shape[::-1]), op.codomain, op.domain)
    pinv = np.linalg.pinv(a, rcond=tol_rank)
    # back to original coordinates: p = L_dom^-T pinv L_cod^T y
    m = op.domain.from_frame(pinv)
    if not op.codomain.is_euclidean:
        m = m @ op.codomain._chol.T
    return LinearOp(m, op.codomain, op.domain)


def geometric_potential(op: LinearOp, y, tol_range: float = TOL_RANGE,
                        tol_rank: float = TOL_RANK) -> np.ndarray:
    """Minimal-norm p with A p = y; raises NotInRange if y is off R(A)."""
    y = np.asarray(y, dtype=float)
    p = reduced_inverse(op, tol_rank)(y)
    miss = op.codomain.norm(op(p) - y)
    ynorm = op.codomain.norm(y)
    if miss > tol_range * max(ynorm, np.finfo(float).tiny):
        raise NotInRange(f"y is not in the range (miss {miss:.3e}, |y| {ynorm:.3e})",
                         residual=op(p) - y)
    return p


def kernel_basis(op: LinearOp, tol_rank: float = TOL_RANK) -> np.ndarray:
    """Gram-orthonormal basis of N(A) (columns)."""
    a = op.frame_matrix()
    n = op.shape[1]
    if a.size == 0 or not np.any(a):
        return op.domain.from_frame(np.eye(n))
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    r = int(np.sum(s > tol_rank * s[0]))
    return op.domain.from_frame(vt[r:].T)


def friedrichs_extremal(op: LinearOp, tol_rank: float = TOL_RANK) -> tuple:
    """(c, x): the Friedrichs constant 1/sigma_min^+ and a unit vector attaining it."""
    a = op.frame_matrix()
    if a.size == 0:
        raise ZeroOperator("operator has an empty matrix")
    _, s, vt = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        raise ZeroOperator("operator is zero")
    k = int(np.sum(s > tol_rank * s[0])) - 1
    x = op.domain.from_frame(vt[k])
    return float(1.0 / s[k]), x


def friedrichs_constant(op: LinearOp, tol_rank: float = TOL_RANK) -> float:
    """Smallest c with |x| <= c |A x| on N(A)^perp."""
    return friedrichs_extremal(op, tol_rank)[0]


def potential_from_decomposition(a1: LinearOp, q1: LinearOp,
                                 tol_rank: float = TOL_RANK) -> LinearOp:
    """P = Q1 o (reduced a1)^-1, the potential induced by a regular decomposition."""
    return q1 @ reduced_inverse(a1, tol_rank)


@dataclass
class RegularDecompositionReport:
    samples: int
    max_residual: float
    q1_norm: float
    q0_norm: float
    max_adjoint_defect: float
    tol: float
    residuals: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol and self.max_adjoint_defect <= self.tol

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "max_residual": self.max_residual,
            "q1_norm": self.q1_norm,
            "q0_norm": self.q0_norm,
            "max_adjoint_defect": self.max_adjoint_defect,
            "passed": self.passed,
        }


def verify_regular_decomposition(pair: ComplexPair, q1: LinearOp, q0: LinearOp,
                                 embed1=None, embed0=None, samples: int = 100,
                                 seed: int = 0, tol: float = 1e-10) -> RegularDecompositionReport:
    """Sample x in H1 and check x = E1 q1 x + a0 E0 q0 x.

    ``embed1`` (H1+ -> H1) and ``embed0`` (H0+ -> H0) default to the
    identity.  Also reports empirical norms of q1, q0 measured against the
    graph norm |x| + |a1 x|, and the defect of <x, a0 p0> = <a0* x, p0>.
    """
    n0, n1, _ = pair.dims
    e1 = np.eye(n1) if embed1 is None else np.asarray(embed1, dtype=float)
    e0 = np.eye(n0) if embed0 is None else np.asarray(embed0, dtype=float)
    if q1.shape[1] != n1 or q0.shape[1] != n1:
        raise ShapeMismatch("decomposition operators must act on H1")
    if e1.shape != (n1, q1.shape[0]) or e0.shape != (n0, q0.shape[0]):
        raise ShapeMismatch("embedding shapes do not match the decomposition operators")
    h0, h1 = pair.a0.domain, pair.h1
    a0_adj = adjoint(pair.a0)
    rng = np.random.default_rng(seed)
    residuals = []
    q1n = q0n = defect = 0.0
    for _ in range(samples):
        x = rng.standard_normal(n1)
        p1 = e1 @ q1(x)
        p0 = e0 @ q0(x)
        xn = h1.norm(x)
        graph = xn + pair.a1.codomain.norm(pair.a1(x))
        r = h1.norm(x - p1 - pair.a0(p0))
        residuals.append(r / xn if xn else r)
        if graph:
            q1n = max(q1n, q1.codomain.norm(q1(x)) / graph)
            q0n = max(q0n, q0.codomain.norm(q0(x)) / graph)
        lhs = h1.inner(x, pair.a0(p0))
        rhs = h0.inner(a0_adj(x), p0)
        denom = max(xn * h1.norm(pair.a0(p0)), np.finfo(float).tiny)
        defect = max(defect, abs(lhs - rhs) / denom if lhs or rhs else 0.0)
    return RegularDecompositionReport(
        samples=samples,
        max_residual=max(residuals, default=0.0),
        q1_norm=q1n,
        q0_norm=q0n,
        max_adjoint_defect=defect,
        tol=tol,
        residuals=residuals,
    )


def geometric_decomposition_operators(pair: ComplexPair, tol_rank: float = TOL_RANK) -> tuple:
    """(q1, q0) from the Helmholtz split: q1 = projection onto H + R(a1*),
    q0 = geometric potential of a0 applied to the R(a0) component."""
    n1 = pair.dims[1]
    u0 = _range_basis(pair.a0.frame_matrix(), tol_rank)
    h1 = pair.h1
    # projector onto R(a0) in original coordinates
    proj0 = h1.from_frame(u0 @ u0.T @ h1.to_frame(np.eye(n1)))
    q1 = LinearOp(np.eye(n1) - proj0, h1, h1)
    q0 = reduced_inverse(pair.a0, tol_rank) @ LinearOp(proj0, h1, h1)
    return q1, q0


def complex_report(pair: ComplexPair, tol_rank: float = TOL_RANK, exact: bool = False) -> dict:
    """Machine-readable summary: dims, harmonic_dim, friedrichs, residuals."""
    dims = list(pair.dims)
    h = harmonic_basis(pair, tol_rank)
    if exact:
        r0, r1 = exact_rank(pair.a0.matrix), exact_rank(pair.a1.matrix)
    else:
        r0 = numerical_rank(pair.a0.frame_matrix(), tol_rank)
        r1 = numerical_rank(pair.a1.frame_matrix(), tol_rank)
    friedrichs = {}
    for name, op in (("a0", pair.a0), ("a1", pair.a1)):
        try:
            friedrichs[name] = friedrichs_constant(op, tol_rank)
        except ZeroOperator:
            friedrichs[name] = None
    return {
        "dims": dims,
        "ranks": [r0, r1],
        "harmonic_dim": int(h.shape[1]),
        "rank_nullity_dim": dims[1] - r0 - r1,
        "friedrichs": friedrichs,
        "residuals": {"complex": check_complex(pair)},
    }


# -- file formats

def read_matrix(path) -> LinearOp:
    """Read a Matrix Market (coordinate or array) file."""
    m = scipy.io.mmread(str(path))
    return LinearOp(m.toarray() if sp.issparse(m) else np.asarray(m))


def write_matrix(path, op: LinearOp | np.ndarray) -> None:
    m = op.matrix if isinstance(op, LinearOp) else np.asarray(op)
    scipy.io.mmwrite(str(path), sp.coo_matrix(m))


def read_vector(path) -> np.ndarray:
    text = Path(path).read_text()
    return np.array([float(t) for t in text.split()], dtype=float)


def write_vector(path, x) -> None:
    Path(path).write_text(" ".join(repr(float(v)) for v in np.asarray(x)) + "\n")


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
