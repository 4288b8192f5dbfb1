"""Lattices in complex 3-space, Riemann forms, sublattices, and real subspaces.

Complex 3-space is identified with real 6-space throughout by interleaving
real and imaginary parts: (Re z1, Im z1, Re z2, Im z2, Re z3, Im z3).  Under
this identification multiplication by i is the fixed 6x6 matrix ``J6``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError
from .exactnum import QC, Quad, hnf_rows, qc_det3, qc_rank, quad_det, times_i

RANK_TOL = 1e-9

J6 = np.zeros((6, 6))
for _k in range(3):
    J6[2 * _k, 2 * _k + 1] = -1.0
    J6[2 * _k + 1, 2 * _k] = 1.0


def c2r(z: np.ndarray) -> np.ndarray:
    """Complex 3-vector -> interleaved real 6-vector."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(6)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def r2c(x: np.ndarray) -> np.ndarray:
    """Interleaved real 6-vector -> complex 3-vector."""
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def mul_i(x: np.ndarray) -> np.ndarray:
    """Multiply a real 6-vector (or 6xk stack of columns) by i."""
    return J6 @ x


def exact_c2r(z) -> tuple:
    """Exact QC 3-vector -> tuple of 6 Quad entries, same interleaving."""
    out = []
    for comp in z:
        out.append(comp.re)
        out.append(comp.im)
    return tuple(out)


def _orthonormalize(columns: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given columns via SVD.

    Columns are sign-canonicalized so the largest-magnitude entry is positive,
    keeping bases reproducible across runs.
    """
    M = np.atleast_2d(np.asarray(columns, dtype=float))
    if M.ndim != 2 or M.shape[0] != 6:
        raise InvalidInputError("expected real 6-row column matrix")
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] < tol:
        return np.zeros((6, 0))
    rank = int(np.sum(s > tol * s[0]))
    basis = u[:, :rank]
    for j in range(rank):
        i = int(np.argmax(np.abs(basis[:, j])))
        if basis[i, j] < 0:
            basis[:, j] = -basis[:, j]
    return basis


@dataclass(frozen=True)
class Lattice:
    """Full lattice in C^3 given by 6 generators (columns of a 3x6 complex matrix).

    ``mode`` is "floating" or "exact".  In exact mode the entries live in
    Q(sqrt(d)) + i*Q(sqrt(d)) and are stored in ``exact`` as a 3x6 nest of QC.
    """

    generators: np.ndarray
    mode: str = "floating"
    exact: tuple | None = None
    d: int = 2
    real_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        gens = np.asarray(self.generators, dtype=complex)
        if gens.shape != (3, 6):
            raise InvalidInputError("lattice generators must form a 3x6 complex matrix")
        object.__setattr__(self, "generators", gens)
        G = np.column_stack([c2r(gens[:, j]) for j in range(6)])
        object.__setattr__(self, "real_matrix", G)
        norms = np.linalg.norm(G, axis=0)
        if np.any(norms == 0) or abs(np.linalg.det(G / norms)) <= 1e-9:
            raise InvalidInputError("generators are not linearly independent over R")
        if self.mode == "exact":
            if self.exact is None:
                raise InvalidInputError("exact mode requires exact generator entries")
            if quad_det(self.exact_real_matrix()).is_zero():
                raise InvalidInputError("exact generators are dependent over R")
        elif self.mode != "floating":
            raise InvalidInputError(f"unknown arithmetic mode {self.mode!r}")

    def exact_real_matrix(self):
        """6x6 matrix of Quad entries whose columns are the generators, real form."""
        if self.exact is None:
            raise InvalidInputError("lattice has no exact data")
        cols = [exact_c2r([self.exact[i][j] for i in range(3)]) for j in range(6)]
        return [[cols[j][i] for j in range(6)] for i in range(6)]

    def exact_generator(self, j: int):
        return [self.exact[i][j] for i in range(3)]

    def combination(self, coeffs) -> np.ndarray:
        """Complex 3-vector for an integer coefficient 6-vector."""
        return self.generators @ np.asarray(coeffs, dtype=float)

    def exact_combination(self, coeffs):
        out = [QC(0, 0, self.d) for _ in range(3)]
        for j, cj in enumerate(coeffs):
            if cj:
                g = self.exact_generator(j)
                out = [o + QC(int(cj), 0, self.d) * gj for o, gj in zip(out, g)]
        return out

    @staticmethod
    def gaussian() -> "Lattice":
        """The product lattice with generators e1,e2,e3,ie1,ie2,ie3 (exact)."""
        gens = np.column_stack([np.eye(3), 1j * np.eye(3)]).astype(complex)
        exact = tuple(
            tuple(QC(int(gens[i, j].real), int(gens[i, j].imag)) for j in range(6))
            for i in range(3)
        )
        return Lattice(gens, mode="exact", exact=exact)

    @staticmethod
    def from_period_matrix(omega: np.ndarray) -> "Lattice":
        """Floating lattice with generator matrix (I | Omega)."""
        omega = np.asarray(omega, dtype=complex)
        if omega.shape != (3, 3):
            raise InvalidInputError("period matrix must be 3x3")
        return Lattice(np.column_stack([np.eye(3), omega]))

    @staticmethod
    def from_exact(entries, d: int = 2) -> "Lattice":
        """Exact lattice from a 3x6 nest of QC entries over Q(sqrt(d))."""
        exact = tuple(tuple(QC.coerce(x, d) for x in row) for row in entries)
        gens = np.array([[complex(x) for x in row] for row in exact])
        return Lattice(gens, mode="exact", exact=exact, d=d)


class RiemannForm:
    """Hermitian form H on C^3 whose imaginary part is integral on a lattice.

    The hermitian product is conjugate-linear in the first argument:
    H(x, y) = conj(x)^T H y.  ``E`` is the integer matrix E[i,j] = Im H(g_i, g_j)
    over the lattice generators.
    """

    def __init__(self, H: np.ndarray, lattice: Lattice, exact_H=None):
        H = np.asarray(H, dtype=complex)
        if H.shape != (3, 3) or np.max(np.abs(H - H.conj().T)) > 1e-12:
            raise InvalidInputError("H must be a 3x3 hermitian matrix")
        if np.min(np.linalg.eigvalsh(H)) <= 1e-9:
            raise InvalidInputError("H must be positive definite")
        self.H = H
        self.lattice = lattice
        self.exact_H = exact_H
        gens = lattice.generators
        E_float = np.imag(gens.conj().T @ H @ gens)
        E_int = np.rint(E_float).astype(np.int64)
        if np.max(np.abs(E_float - E_int)) > 1e-9:
            raise InvalidInputError("Im H is not integral on the lattice generators")
        if np.any(E_int != -E_int.T) or np.any(np.diag(E_int) != 0):
            raise InvalidInputError("E must be alternating")
        if lattice.mode == "exact" and exact_H is not None:
            for i in range(6):
                for j in range(6):
                    val = self._exact_pairing_generators(i, j)
                    if not val.is_integer() or int(val.a) != int(E_int[i, j]):
                        raise InvalidInputError("exact Im H disagrees with rounded E")
        self.E = E_int

    def _exact_pairing_generators(self, i: int, j: int) -> Quad:
        gi = self.lattice.exact_generator(i)
        gj = self.lattice.exact_generator(j)
        acc = QC(0, 0, self.lattice.d)
        for a in range(3):
            for b in range(3):
                acc = acc + gi[a].conjugate() * self.exact_H[a][b] * gj[b]
        return acc.im

    @staticmethod
    def standard(lattice: Lattice) -> "RiemannForm":
        """H = identity; the principal polarization of the Gaussian lattice."""
        exact_H = None
        if lattice.mode == "exact":
            exact_H = [[QC(1 if a == b else 0, 0, lattice.d) for b in range(3)] for a in range(3)]
        return RiemannForm(np.eye(3), lattice, exact_H=exact_H)

    def pairing(self, x: np.ndarray, y: np.ndarray) -> float:
        """The real alternating form E(x, y) = Im H(x, y) on real 6-vectors."""
        return float(np.imag(np.conj(r2c(x)) @ self.H @ r2c(y)))

    def exact_pairing(self, x, y) -> Quad:
        """Exact E(x, y) for QC 3-vectors x, y (exact H required)."""
        acc = QC(0, 0, self.lattice.d)
        for a in range(3):
            for b in range(3):
                acc = acc + x[a].conjugate() * self.exact_H[a][b] * y[b]
        return acc.im

    def pairing_on_coefficients(self, u, v) -> int:
        """E of two integer combinations of generators, exactly (via the E matrix)."""
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        return int(sum(int(u[i]) * int(self.E[i, j]) * int(v[j])
                       for i in range(6) for j in range(6)))


@dataclass(frozen=True)
class Submodule:
    """Rank-k sublattice given by a canonical k x 6 integer matrix in row HNF."""

    coefficients: np.ndarray
    lattice: Lattice

    def __post_init__(self):
        C = np.asarray(self.coefficients, dtype=np.int64)
        if C.ndim != 2 or C.shape[1] != 6:
            raise InvalidInputError("submodule coefficients must be k x 6 integers")
        H = hnf_rows(C.tolist())
        if len(H) != C.shape[0]:
            raise InvalidInputError("submodule coefficient rows are dependent")
        object.__setattr__(self, "coefficients", np.array(H, dtype=np.int64))

    @staticmethod
    def from_rows(rows, lattice: Lattice) -> "Submodule":
        """Canonical submodule generated by the given integer coefficient rows."""
        H = hnf_rows(np.asarray(rows, dtype=np.int64).tolist())
        if not H:
            raise InvalidInputError("submodule must have positive rank")
        return Submodule(np.array(H, dtype=np.int64), lattice)

    @property
    def rank(self) -> int:
        return int(self.coefficients.shape[0])

    def vectors(self) -> np.ndarray:
        """Selected lattice vectors as columns of a 3 x k complex matrix."""
        return self.lattice.generators @ self.coefficients.T.astype(float)

    def exact_vectors(self):
        return [self.lattice.exact_combination(row) for row in self.coefficients]

    def __eq__(self, other):
        return (isinstance(other, Submodule)
                and np.array_equal(self.coefficients, other.coefficients)
                and self.lattice is other.lattice)


@dataclass(frozen=True)
class RealSubspace:
    """Real subspace of R^6 carried by an orthonormal column basis.

    ``exact_span`` optionally holds exact spanning 6-vectors (Quad entries);
    ``heuristic`` marks results produced by floating integer-relation detection.
    """

    basis: np.ndarray
    exact_span: tuple | None = None
    heuristic: bool = False

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=float)
        if B.ndim != 2 or B.shape[0] != 6 or B.shape[1] > 6:
            raise InvalidInputError("basis must be 6 x d with d <= 6")
        if B.shape[1] and np.max(np.abs(B.T @ B - np.eye(B.shape[1]))) > 1e-12:
            raise InvalidInputError("basis columns must be orthonormal")
        object.__setattr__(self, "basis", B)

    @staticmethod
    def from_spanning(columns, exact_span=None, heuristic: bool = False) -> "RealSubspace":
        return RealSubspace(_orthonormalize(columns), exact_span=exact_span,
                            heuristic=heuristic)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        n = np.linalg.norm(x)
        if n == 0:
            return True
        r = x - self.basis @ (self.basis.T @ x)
        return bool(np.linalg.norm(r) <= tol * n)

    def image_under_i(self) -> "RealSubspace":
        return RealSubspace.from_spanning(mul_i(self.basis))


def subspace_intersection_dim(U: RealSubspace, W: RealSubspace, tol: float = RANK_TOL) -> int:
    """dim(U cap W) from the spectrum of P_U P_W P_U (eigenvalue-1 count)."""
    if U.dim == 0 or W.dim == 0:
        return 0
    K = U.projector() @ W.projector() @ U.projector()
    ev = np.linalg.eigvalsh((K + K.T) / 2)
    return int(np.sum(ev > 1 - tol))


def real_span(sub: Submodule) -> RealSubspace:
    """Orthonormalized real span of the selected lattice vectors; dim == rank."""
    cols = np.column_stack([c2r(v) for v in sub.vectors().T])
    exact_span = None
    if sub.lattice.mode == "exact":
        exact_span = tuple(exact_c2r(v) for v in sub.exact_vectors())
    out = RealSubspace.from_spanning(cols, exact_span=exact_span)
    if out.dim != sub.rank:
        raise InvalidInputError("selected lattice vectors are dependent over R")
    return out


def complex_span_dim(sub: Submodule) -> int:
    """Complex dimension of the C-linear span of the selected vectors."""
    if sub.lattice.mode == "exact":
        return qc_rank(sub.exact_vectors())
    s = np.linalg.svd(sub.vectors(), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > RANK_TOL * s[0]))


def is_totally_real(sub: Submodule) -> tuple[bool, complex]:
    """Determinant test for a rank-3 submodule.

    Returns (flag, witness) where the witness is det of the 3x3 matrix of
    selected vectors.  The flag is scale-invariant in floating mode:
    nonzero means |det| > 1e-9 * product of column norms.
    """
    if sub.rank != 3:
        raise InvalidInputError("totally-real test requires rank 3")
    if sub.lattice.mode == "exact":
        vecs = sub.exact_vectors()
        det = qc_det3([[vecs[j][i] for j in range(3)] for i in range(3)])
        return (not det.is_zero(), complex(det))
    M = sub.vectors()
    det = complex(np.linalg.det(M))
    scale = float(np.prod(np.linalg.norm(M, axis=0)))
    return (abs(det) > 1e-9 * scale, det)
