"""Rational closures of subspaces relative to a lattice.

The closure of a real subspace V is the smallest subspace containing V that is
spanned by lattice vectors; it models the tangent space of the topological
closure of a subgroup orbit in the torus.  In exact mode it is computed by
exact linear algebra over the coefficient field.  In floating mode it is
detected heuristically: integer relations between the lattice coordinates of V
are searched by lattice reduction, with dual accept/reject thresholds so that
an ambiguous candidate raises instead of silently corrupting the answer.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InvalidInputError, PrecisionInsufficientError
from .exactnum import QC, frac_nullspace, hnf_rows, lll_reduce, quad_solve, times_i
from .lattice import Lattice, RealSubspace, c2r, exact_c2r, mul_i

DEFAULT_HEIGHT_BOUND = 10**6
ACCEPT_RESIDUAL = 1e-10
REJECT_RESIDUAL = 1e-6


def find_integer_relations(coords: np.ndarray,
                           height_bound: int = DEFAULT_HEIGHT_BOUND,
                           accept: float = ACCEPT_RESIDUAL,
                           reject: float = REJECT_RESIDUAL) -> np.ndarray:
    """Integer vectors q with q . c == 0 for every column c of ``coords``.

    coords is 6 x k (lattice coordinates of k spanning vectors).  Candidates
    come from LLL-reducing [I_6 | N * coords] at a sweep of weights N; each
    candidate is classified by its scale-free residual
    max_j |q . c_j| / ||c_j||.  Residuals inside (accept, reject) raise
    PrecisionInsufficientError.  Returns the relation basis as HNF rows
    (possibly empty) bounded in height by ``height_bound``.
    """
    C = np.atleast_2d(np.asarray(coords, dtype=float))
    if C.shape[0] != 6:
        raise InvalidInputError("coordinate matrix must have 6 rows")
    k = C.shape[1]
    col_norms = np.linalg.norm(C, axis=0)
    if np.any(col_norms == 0):
        raise InvalidInputError("zero coordinate column")

    # Largest usable weight: beyond it, generic (non-relation) reduced vectors
    # acquire residuals that sink toward the reject threshold and the sweep
    # would cry ambiguity on perfectly generic input.  The shortest generic
    # embedded vector scales like N^(k/6), so its residual is ~ N^(k/6 - 1);
    # the exponent below keeps that scale near 1e-3, a ~1000x margin over
    # ``reject`` even for unlucky reductions.
    n_max = 10.0 ** (min(18.0 / max(6 - k, 1), 12.0))
    weights = []
    w = 1e3
    while w < n_max / 10**1.5:
        weights.append(w)
        w *= 10**1.5
    weights.append(n_max)

    found: list[list[int]] = []
    for N in weights:
        rows = []
        for i in range(6):
            row = [0] * 6
            row[i] = 1
            rows.append(row + [int(round(N * C[i, j])) for j in range(k)])
        reduced = lll_reduce(rows)
        for v in reduced:
            q = np.array(v[:6], dtype=np.int64)
            if not q.any() or np.max(np.abs(q)) > height_bound:
                continue
            residual = float(np.max(np.abs(q @ C) / col_norms))
            if residual < accept:
                found.append([int(x) for x in q])
            elif residual <= reject:
                raise PrecisionInsufficientError(
                    f"relation candidate {q.tolist()} has residual {residual:.3e} "
                    f"between accept ({accept:g}) and reject ({reject:g}) thresholds")
    if not found:
        return np.zeros((0, 6), dtype=np.int64)
    return np.array(hnf_rows(found), dtype=np.int64)


def _closure_from_relations(relations, lattice: Lattice, heuristic: bool) -> RealSubspace:
    """Subspace spanned by all lattice-coordinate vectors killed by the relations."""
    if len(relations) == 0:
        basis_coords = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    else:
        basis_coords = frac_nullspace([[Fraction(int(x)) for x in row] for row in relations])
    G = lattice.real_matrix
    cols = np.column_stack([G @ np.array([float(x) for x in v]) for v in basis_coords]) \
        if basis_coords else np.zeros((6, 0))
    exact_span = None
    if lattice.mode == "exact" and not heuristic:
        Gq = lattice.exact_real_matrix()
        exact_span = tuple(
            tuple(sum((Gq[i][j] * v[j] for j in range(6)), start=0 * Gq[i][0])
                  for i in range(6))
            for v in basis_coords)
    return RealSubspace.from_spanning(cols, exact_span=exact_span, heuristic=heuristic)


def rational_closure(V: RealSubspace, lattice: Lattice,
                     height_bound: int = DEFAULT_HEIGHT_BOUND) -> RealSubspace:
    """Smallest lattice-rational subspace containing V.

    Exact when the lattice and V both carry exact data; otherwise heuristic
    (integer-relation detection on the floating lattice coordinates, result
    flagged via ``heuristic=True``).
    """
    if V.dim == 0:
        raise InvalidInputError("closure of the zero subspace is undefined")

    if lattice.mode == "exact" and V.exact_span is not None:
        A = lattice.exact_real_matrix()
        coord_vecs = quad_solve(A, list(V.exact_span))
        # A rational functional q kills a + b*sqrt(d) iff it kills a and b.
        constraint_rows = []
        for vec in coord_vecs:
            constraint_rows.append([x.a for x in vec])
            constraint_rows.append([x.b for x in vec])
        relation_basis = frac_nullspace(constraint_rows)
        relations = [_scale_integer(v) for v in relation_basis]
        out = _closure_from_relations(np.array(hnf_rows(relations), dtype=np.int64)
                                      if relations else np.zeros((0, 6), dtype=np.int64),
                                      lattice, heuristic=False)
    else:
        coords = np.linalg.solve(lattice.real_matrix, V.basis)
        relations = find_integer_relations(coords, height_bound=height_bound)
        out = _closure_from_relations(relations, lattice, heuristic=True)

    # The closure must contain its input; a violation means a false relation
    # slipped past the thresholds.
    P = out.projector()
    for j in range(V.dim):
        v = V.basis[:, j]
        if np.linalg.norm(v - P @ v) > 1e-9:
            raise PrecisionInsufficientError(
                "detected relations exclude an input vector; heights/precision insufficient")
    return out


def _scale_integer(v):
    from math import gcd, lcm

    m = 1
    for x in v:
        m = lcm(m, Fraction(x).denominator)
    ints = [int(Fraction(x) * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g > 1 else ints


def closure_dim_complex_line(v, lattice: Lattice,
                             height_bound: int = DEFAULT_HEIGHT_BOUND) -> int:
    """Real dimension of the closure of the complex one-parameter subgroup
    in direction v (the closure of span_R{v, iv}).

    ``v`` is a complex 3-vector; pass a sequence of QC entries to use exact
    arithmetic on an exact lattice.
    """
    if isinstance(v, (list, tuple)) and v and isinstance(v[0], QC):
        if all(z.is_zero() for z in v):
            raise InvalidInputError("direction must be nonzero")
        iv = [times_i(z) for z in v]
        cols = np.column_stack([c2r(np.array([complex(z) for z in v])),
                                c2r(np.array([complex(z) for z in iv]))])
        exact_span = (exact_c2r(v), exact_c2r(iv))
        V = RealSubspace.from_spanning(cols, exact_span=exact_span)
    else:
        vv = np.asarray(v, dtype=complex)
        if vv.shape != (3,) or not np.any(vv):
            raise InvalidInputError("direction must be a nonzero complex 3-vector")
        x = c2r(vv)
        V = RealSubspace.from_spanning(np.column_stack([x, mul_i(x)]))
    return rational_closure(V, lattice, height_bound=height_bound).dim
