"""Finite ball covers of the Grassmannian of real 4-planes in R^6.

Balls use the largest principal angle, which for equal-dimensional subspaces
is exactly the condition "every vector of one subspace has a vector of the
other within the given angle".  Nets are built greedily from uniform random
samples and certified probabilistically; the pi/8 margin report is the
quantitative transversality statement the net exists for.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .angles import ComplexLine, angle_to_subspace, choose_line, max_principal_angle
from .errors import CapacityError, InvalidInputError
from .lattice import RealSubspace

BALL_SLACK = 1e-12
DEFAULT_MAX_CENTERS = 10**6
MARGIN_BALL_RADIUS = np.pi / 16
MARGIN_CONE_RADIUS = np.pi / 16
MARGIN_BOUND = np.pi / 8 - 1e-6


@dataclass(frozen=True)
class CoverNet:
    """Greedy ball net: frames (n, 6, 4), ball radius, build seed and budget.

    ``lines`` optionally carries one chosen complex line direction per center.
    """

    eps: float
    seed: int
    probe_budget: int
    centers: np.ndarray
    lines: np.ndarray | None = None

    def __post_init__(self):
        C = np.asarray(self.centers, dtype=float)
        if C.ndim != 3 or C.shape[1:] != (6, 4):
            raise InvalidInputError("centers must be an (n, 6, 4) stack of frames")
        if not (0 < self.eps <= np.pi / 2 + BALL_SLACK):
            raise InvalidInputError("eps must lie in (0, pi/2]")
        if self.lines is not None and len(self.lines) != len(C):
            raise InvalidInputError("one line per center required")
        object.__setattr__(self, "centers", C)

    @property
    def size(self) -> int:
        return int(self.centers.shape[0])

    def center_subspace(self, i: int) -> RealSubspace:
        return RealSubspace(self.centers[i])


def random_4planes(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform 4-planes as orthonormalized Gaussian 6x4 frames, shape (n, 6, 4)."""
    A = rng.standard_normal((n, 6, 4))
    Q, R = np.linalg.qr(A)
    s = np.sign(np.einsum("nii->ni", R))
    s[s == 0] = 1.0
    return Q * s[:, None, :]


def _sin2_max(frames_a: np.ndarray, frames_b: np.ndarray) -> np.ndarray:
    """sin^2 of the largest principal angle for every (a, b) pair; shape (na, nb).

    Two of the four principal angles between 4-planes in R^6 are always zero,
    so the nonzero sin^2 values are the two top eigenvalues of I - G^T G with
    G the 4x4 frame product, and the largest follows from trace identities:
    with t1 = tr(I - G^T G) and t2 = tr((I - G^T G)^2),
    sin^2(theta_max) = (t1 + sqrt(2 t2 - t1^2)) / 2.
    """
    na = frames_a.shape[0]
    nb = frames_b.shape[0]
    out = np.empty((na, nb))
    # Tile so the (a, b, 4, 4) temporaries stay cache-friendly.
    ta, tb = 128, 512
    for i in range(0, na, ta):
        ai = frames_a[i:i + ta]
        Ai = np.ascontiguousarray(ai.transpose(0, 2, 1))[:, None]  # (a, 1, 4, 6)
        for j in range(0, nb, tb):
            bj = frames_b[j:j + tb][None]                          # (1, b, 6, 4)
            G = np.matmul(Ai, bj)
            g2 = (G * G).sum(axis=(2, 3))
            S = np.matmul(G.transpose(0, 1, 3, 2), G)
            s4 = (S * S).sum(axis=(2, 3))
            t1 = 4.0 - g2
            t2 = 4.0 - 2.0 * g2 + s4
            disc = np.maximum(2.0 * t2 - t1 * t1, 0.0)
            out[i:i + ta, j:j + tb] = (t1 + np.sqrt(disc)) / 2.0
    return np.clip(out, 0.0, 1.0)


def _covered(probes: np.ndarray, centers: np.ndarray, eps: float,
             chunk: int = 256) -> np.ndarray:
    """Boolean mask: probe i lies in some ball B(center, eps)."""
    m = probes.shape[0]
    out = np.zeros(m, dtype=bool)
    if centers.shape[0] == 0:
        return out
    thr = np.sin(min(eps + BALL_SLACK, np.pi / 2)) ** 2
    for start in range(0, centers.shape[0], chunk):
        cs = centers[start:start + chunk]
        todo = np.flatnonzero(~out)
        if todo.size == 0:
            break
        s2 = _sin2_max(cs, probes[todo])
        out[todo] = np.any(s2 <= thr, axis=0)
    return out


def in_ball(Hp: RealSubspace, H: RealSubspace, eps: float) -> bool:
    """max_principal_angle(Hp, H) <= eps + 1e-12."""
    if Hp.dim != H.dim:
        raise InvalidInputError("ball membership needs equal dimensions")
    return max_principal_angle(Hp, H) <= eps + BALL_SLACK


def build_cover(eps: float, seed: int, probe_budget: int,
                max_centers: int = DEFAULT_MAX_CENTERS,
                batch: int = 1024) -> CoverNet:
    """Greedy net: every uncovered sample becomes a center; building stops once
    ``probe_budget`` consecutive samples land in existing balls.

    The sampling sequence is a fixed function of ``seed``, and the insertion
    scan is sequential, so the result does not depend on ``batch``.
    """
    if not (0 < eps <= np.pi / 2 + BALL_SLACK):
        raise InvalidInputError("eps must lie in (0, pi/2]")
    if probe_budget < 10**4:
        raise InvalidInputError("probe budget must be at least 10^4")
    rng = np.random.default_rng(seed)
    buf = np.zeros((256, 6, 4))
    n = 0
    consecutive = 0
    while consecutive < probe_budget:
        probes = random_4planes(rng, batch)
        covered = _covered(probes, buf[:n], eps)
        for i in range(batch):
            if covered[i]:
                consecutive += 1
                if consecutive >= probe_budget:
                    break
            else:
                if n >= max_centers:
                    raise CapacityError(
                        f"net exceeded {max_centers} centers at eps={eps:.6g}")
                if n == buf.shape[0]:
                    buf = np.concatenate([buf, np.zeros_like(buf)], axis=0)
                buf[n] = probes[i]
                n += 1
                consecutive = 0
                if i + 1 < batch:
                    # newly inserted ball may cover the rest of this batch
                    covered[i + 1:] |= _covered(probes[i + 1:], probes[i][None], eps)
    return CoverNet(eps=float(eps), seed=int(seed), probe_budget=int(probe_budget),
                    centers=buf[:n].copy())


def verify_cover(net: CoverNet, probes: int, seed: int) -> float:
    """Fraction of fresh uniform samples covered by the net (1.0 = certificate)."""
    if probes < 1:
        raise InvalidInputError("need at least one probe")
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = probes
    while remaining > 0:
        b = min(remaining, 4096)
        sample = random_4planes(rng, b)
        hits += int(np.sum(_covered(sample, net.centers, net.eps)))
        remaining -= b
    return hits / probes


def _sample_in_ball(rng: np.random.Generator, frame: np.ndarray, radius: float,
                    count: int) -> np.ndarray:
    """Frames of 4-planes within max principal angle ``radius`` of ``frame``.

    Geodesic construction: the normal space of a 4-plane in R^6 allows two
    independent principal rotations; both angles are drawn from [0, radius].
    """
    P = frame @ frame.T
    out = np.empty((count, 6, 4))
    for i in range(count):
        delta = (np.eye(6) - P) @ rng.standard_normal((6, 4))
        Q, _, Vt = np.linalg.svd(delta, full_matrices=False)
        theta = np.zeros(4)
        theta[:2] = rng.uniform(0.0, radius, 2)
        V = Vt.T
        out[i] = frame @ (V * np.cos(theta)) @ Vt + Q @ (np.sin(theta)[:, None] * Vt)
    return out


def _sample_near_line(rng: np.random.Generator, line: ComplexLine,
                      radius: float, count: int) -> np.ndarray:
    """Unit 6-vectors within angle ``radius`` of the line's real 2-plane."""
    L = line.as_subspace().basis
    psi = rng.uniform(0.0, 2 * np.pi, count)
    inside = L @ np.column_stack([np.cos(psi), np.sin(psi)]).T
    raw = rng.standard_normal((6, count))
    raw -= L @ (L.T @ raw)
    raw /= np.linalg.norm(raw, axis=0)
    phi = rng.uniform(0.0, radius, count)
    return (inside * np.cos(phi) + raw * np.sin(phi)).T


@dataclass(frozen=True)
class MarginReport:
    net: CoverNet
    min_margins: np.ndarray
    violations: list

    @property
    def min_margin(self) -> float:
        return float(np.min(self.min_margins)) if len(self.min_margins) else float("nan")

    @property
    def ok(self) -> bool:
        return not self.violations


def assign_lines_and_margin(net: CoverNet, probes_per_ball: int, seed: int = 0,
                            ball_radius: float = MARGIN_BALL_RADIUS,
                            cone_radius: float = MARGIN_CONE_RADIUS,
                            bound: float = MARGIN_BOUND) -> MarginReport:
    """Choose a complex line for each ball and verify the angle margin.

    For each center H_i, sampled 4-planes H' in B(H_i, ball_radius) and
    sampled directions u within ``cone_radius`` of the chosen line must keep
    angle(u, H') >= ``bound``; the smallest observed margin per ball is
    reported, and any violation is returned with its witness pair.
    """
    if probes_per_ball < 1:
        raise InvalidInputError("need at least one probe per ball")
    n = net.size
    if net.lines is not None:
        lines = [ComplexLine(v) for v in np.asarray(net.lines, dtype=complex)]
    else:
        lines = [choose_line(net.center_subspace(i)) for i in range(n)]
    min_margins = np.empty(n)
    violations = []
    for i in range(n):
        rng = np.random.default_rng([seed, i])
        planes = _sample_in_ball(rng, net.centers[i], ball_radius, probes_per_ball)
        dirs = _sample_near_line(rng, lines[i], cone_radius, probes_per_ball)
        # angle(u, H') = arccos |H'^T u| with orthonormal frames
        comp = np.einsum("mik,mi->mk", planes, dirs, optimize=True)
        margins = np.arccos(np.clip(np.linalg.norm(comp, axis=1), 0.0, 1.0))
        j = int(np.argmin(margins))
        min_margins[i] = margins[j]
        if margins[j] < bound:
            violations.append({"ball": i, "margin": float(margins[j]),
                               "plane": planes[j].tolist(), "direction": dirs[j].tolist()})
    out_net = replace(net, lines=np.array([l.direction for l in lines]))
    return MarginReport(net=out_net, min_margins=min_margins, violations=violations)
