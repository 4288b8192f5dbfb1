"""Angles between vectors, complex lines, and real subspaces of R^6 = C^3.

All angles are folded into [0, pi/2] by taking absolute values of inner
products, so the pi/4 line-choice guarantee is a literal principal-angle
statement.  The constructive normal form (A, B, C, lambda) of a generic real
4-plane W satisfies: (A, iA, B, iB, C, iC) orthonormal for the real part of
the metric, A spans the complex line W cap iW, and
span_R{A, iA, B, C + lambda*iB} = W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateComplexPlaneError, InvalidInputError
from .lattice import RealSubspace, RiemannForm, c2r, mul_i, r2c

INTERSECT_TOL = 1e-9


@dataclass(frozen=True)
class ComplexLine:
    """A complex line in C^3, stored as a unit direction with canonical phase
    (the first coordinate of magnitude > 1e-9 is made real positive)."""

    direction: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.direction, dtype=complex)
        if z.shape != (3,) or not np.any(z):
            raise InvalidInputError("complex line needs a nonzero 3-vector")
        z = z / np.linalg.norm(z)
        for comp in z:
            if abs(comp) > 1e-9:
                z = z * (abs(comp) / comp)
                break
        object.__setattr__(self, "direction", z)

    def as_subspace(self) -> RealSubspace:
        """The line viewed as a real 2-plane spanned by (u, iu)."""
        x = c2r(self.direction)
        return RealSubspace(np.column_stack([x, mul_i(x)]))


@dataclass(frozen=True)
class NormalForm:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    lam: float

    def frame(self) -> np.ndarray:
        """The six real vectors (A, iA, B, iB, C, iC) as columns."""
        cols = []
        for v in (self.A, self.B, self.C):
            x = c2r(v)
            cols.extend([x, mul_i(x)])
        return np.column_stack(cols)

    def reconstruct(self) -> RealSubspace:
        a = c2r(self.A)
        b = c2r(self.B)
        c = c2r(self.C)
        fourth = c + self.lam * mul_i(b)
        return RealSubspace.from_spanning(np.column_stack([a, mul_i(a), b, fourth]))


def vector_angle(v: np.ndarray, w: np.ndarray, form: RiemannForm | None = None) -> float:
    """arccos(|<v, w>_R| / (|v| |w|)) in [0, pi/2] for real 6-vectors.

    The inner product is the real part of the hermitian product, which for the
    standard metric is the euclidean product of the real 6-vectors; an optional
    Riemann form supplies a different hermitian metric.
    """
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if not np.any(v) or not np.any(w):
        raise InvalidInputError("vector angle needs nonzero vectors")
    if form is None:
        inner = float(v @ w)
        nv = float(np.linalg.norm(v))
        nw = float(np.linalg.norm(w))
    else:
        zv, zw = r2c(v), r2c(w)
        inner = float(np.real(np.conj(zv) @ form.H @ zw))
        nv = float(np.sqrt(np.real(np.conj(zv) @ form.H @ zv)))
        nw = float(np.sqrt(np.real(np.conj(zw) @ form.H @ zw)))
    return float(np.arccos(np.clip(abs(inner) / (nv * nw), 0.0, 1.0)))


def _principal_cosines(U: RealSubspace, W: RealSubspace) -> np.ndarray:
    return np.linalg.svd(U.basis.T @ W.basis, compute_uv=False)


def subspace_angle(U: RealSubspace, W: RealSubspace) -> float:
    """Smallest principal angle between two nonzero subspaces.

    Equals the infimum of vector_angle over nonzero pairs; zero iff the
    subspaces intersect nontrivially.
    """
    if U.dim == 0 or W.dim == 0:
        raise InvalidInputError("subspace angle needs nonzero subspaces")
    s = _principal_cosines(U, W)
    return float(np.arccos(np.clip(s[0], 0.0, 1.0)))


def max_principal_angle(U: RealSubspace, W: RealSubspace) -> float:
    """Largest principal angle between subspaces of equal dimension.

    Equals max over unit w in W of min over v in U of vector_angle(v, w).
    """
    if U.dim != W.dim:
        raise InvalidInputError("max principal angle needs equal dimensions")
    if U.dim == 0:
        raise InvalidInputError("max principal angle needs nonzero subspaces")
    s = _principal_cosines(U, W)
    return float(np.arccos(np.clip(s[-1], 0.0, 1.0)))


def angle_to_subspace(u: np.ndarray, W: RealSubspace) -> float:
    """Angle in [0, pi/2] between a nonzero vector and a subspace."""
    u = np.asarray(u, dtype=float)
    n = np.linalg.norm(u)
    if n == 0:
        raise InvalidInputError("angle needs a nonzero vector")
    return float(np.arccos(np.clip(np.linalg.norm(W.basis.T @ u) / n, 0.0, 1.0)))


def _complex_line_intersection(W: RealSubspace):
    """Eigen-decomposition of P_W P_iW P_W; returns (intersection dim, basis)."""
    P = W.projector()
    Pi = J_P(W)
    K = P @ Pi @ P
    ev, vecs = np.linalg.eigh((K + K.T) / 2)
    mask = ev > 1 - INTERSECT_TOL
    return int(np.sum(mask)), vecs[:, mask]


def J_P(W: RealSubspace) -> np.ndarray:
    B = mul_i(W.basis)
    return B @ B.T


def normal_form(W: RealSubspace) -> NormalForm:
    """Constructive normal form of a generic real 4-plane.

    Requires dim W = 4 and dim(W cap iW) = 2; a complex 2-plane signals the
    degenerate case instead (handled directly by choose_line).
    """
    if W.dim != 4:
        raise InvalidInputError("normal form needs a 4-dimensional subspace")
    k, vecs = _complex_line_intersection(W)
    if k >= 4:
        raise DegenerateComplexPlaneError("W is a complex 2-plane")
    if k != 2:
        raise InvalidInputError("W cap iW has unexpected dimension; basis degenerate")
    # A spans the complex line W cap iW; canonical phase makes the choice
    # independent of the eigenvector basis returned by the solver.
    A = ComplexLine(r2c(vecs[:, 0])).direction
    a = c2r(A)
    ia = mul_i(a)
    # Deterministic completion: project W's stored basis off (A, iA), keep the
    # first two independent directions in order.
    u = []
    for j in range(4):
        v = W.basis[:, j]
        v = v - a * (a @ v) - ia * (ia @ v)
        for prev in u:
            v = v - prev * (prev @ v)
        n = np.linalg.norm(v)
        if n > 1e-9:
            u.append(v / n)
        if len(u) == 2:
            break
    if len(u) != 2:
        raise InvalidInputError("failed to complete a basis of W off its complex line")
    u1, u2 = u
    kappa = float(mul_i(u1) @ u2)
    c = u2 - kappa * mul_i(u1)
    cn = float(np.linalg.norm(c))
    if cn < 1e-12:
        raise DegenerateComplexPlaneError("residual 2-plane is complex; W degenerate")
    lam = kappa / cn
    C = r2c(c / cn)
    return NormalForm(A=A, B=r2c(u1), C=C, lam=lam)


def _orthocomplement_line(W: RealSubspace) -> ComplexLine:
    """The hermitian orthocomplement of a complex 2-plane W."""
    za = r2c(W.basis[:, 0])
    zb = None
    for j in range(1, W.dim):
        cand = r2c(W.basis[:, j])
        if np.linalg.svd(np.vstack([za, cand]), compute_uv=False)[-1] > 1e-9:
            zb = cand
            break
    if zb is None:
        raise InvalidInputError("degenerate 2-plane basis")
    _, _, vh = np.linalg.svd(np.vstack([za, zb]).conj())
    return ComplexLine(vh[-1])


def choose_line(W: RealSubspace) -> ComplexLine:
    """A complex line whose angle to the 4-plane W is at least pi/4.

    Generic case: with (A, B, C, lambda) the normal form, the line is <C> when
    |lambda| > 1, <B + iC> when 0 <= lambda <= 1, and <B - iC> when
    -1 <= lambda < 0.  If W is a complex 2-plane the hermitian orthocomplement
    line is returned (angle pi/2).
    """
    if W.dim != 4:
        raise InvalidInputError("choose_line needs a 4-dimensional subspace")
    try:
        nf = normal_form(W)
    except DegenerateComplexPlaneError:
        return _orthocomplement_line(W)
    if abs(nf.lam) > 1:
        return ComplexLine(nf.C)
    if nf.lam >= 0:
        return ComplexLine(nf.B + 1j * nf.C)
    return ComplexLine(nf.B - 1j * nf.C)
