"""Frequency-wise scaled relative graphs of complex matrices.

A matrix M sampled at one frequency induces the planar point set

    { (|Mu|/|u|) * exp(+-j * angle(u, Mu)) : u != 0 },

which is symmetric about the real axis.  Writing x = Re z and
g = |z|^2, every such point satisfies x = u*Hu/u*u with H the Hermitian
part of M and g = u*Gu/u*u with G = M*M.  The joint numerical range of
(H, G) is convex, so the set is traced by sweeping support directions
of that range with an eigen-solve per direction and mapping each
support point (x, g) to x +- j*sqrt(g - x^2).

The module also carries the chord/disk over-approximations and the
distance calculus for convex sets symmetric about the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SrgComputationError",
    "SrgSlice",
    "SymmetricRegion",
    "Disk",
    "trace_srg",
    "tight_chord",
    "disk_approx",
    "projection_metrics",
    "symmetric_distance",
    "minkowski_distance_to_origin",
    "convex_hull_points",
]


class SrgComputationError(RuntimeError):
    """Eigen-solver failure while tracing a scaled relative graph."""


@dataclass(frozen=True)
class SrgSlice:
    """SRG of one matrix at one frequency: a conjugate-closed boundary trace."""

    omega: float
    boundary: np.ndarray  # complex points, closed under conjugation
    dim: int

    @property
    def upper(self) -> np.ndarray:
        return self.boundary[self.boundary.imag >= 0.0]


@dataclass(frozen=True)
class SymmetricRegion:
    """Convex hull of a slice with its real-axis projection metrics.

    ``center``/``half_width`` describe the projection interval
    [lo, hi]: center = (hi + lo)/2, half_width = (hi - lo)/2.
    """

    hull: np.ndarray  # complex vertices, counter-clockwise
    center: float
    half_width: float
    lo: float
    hi: float


@dataclass(frozen=True)
class Disk:
    """Closed disk centered on the real axis."""

    center: float
    radius: float

    def contains(self, points, tol: float = 1e-9) -> bool:
        pts = np.asarray(points, dtype=complex)
        return bool(np.all(np.abs(pts - self.center) <= self.radius + tol))


def _hull2d(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull of an (n, 2) real array, CCW vertices.

    Degenerate inputs collapse to the distinct extreme points (a single
    point, or the two endpoints of a segment).
    """
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def build(seq):
        chain: list[np.ndarray] = []
        for p in seq:
            while len(chain) > 1:
                v0, v1 = chain[-2], chain[-1]
                if (v1[0] - v0[0]) * (p[1] - v0[1]) - (p[0] - v0[0]) * (v1[1] - v0[1]) <= 0.0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) < 3:
        return np.unique(hull, axis=0)
    return hull


def convex_hull_points(points) -> np.ndarray:
    """Convex hull of complex points, returned as CCW complex vertices."""
    pts = np.asarray(points, dtype=complex).ravel()
    hull = _hull2d(np.column_stack([pts.real, pts.imag]))
    return hull[:, 0] + 1j * hull[:, 1]


def _support_points(matrix: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Support points (x, g) of the joint numerical range, one per sweep angle."""
    herm = (matrix + matrix.conj().T) / 2.0
    gram = matrix.conj().T @ matrix
    ang = np.linspace(0.0, 2.0 * np.pi, q, endpoint=False)
    pencil = np.cos(ang)[:, None, None] * herm + np.sin(ang)[:, None, None] * gram
    try:
        _, vecs = np.linalg.eigh(pencil)
    except np.linalg.LinAlgError as exc:
        raise SrgComputationError(f"eigen-solver failed during SRG sweep: {exc}")
    u = vecs[..., -1]  # top eigenvector per angle; eigh normalizes
    x = np.einsum("qi,ij,qj->q", u.conj(), herm, u).real
    g = np.einsum("qi,ij,qj->q", u.conj(), gram, u).real
    return x, g


def _densify_range_boundary(x: np.ndarray, g: np.ndarray, q: int) -> np.ndarray:
    """Walk the support polygon in the (x, g) plane, subdividing its edges.

    Interior edge samples are chords of a convex set, hence valid range
    points; subdividing keeps flat stretches (degenerate numerical
    ranges) from collapsing to two support points.
    """
    poly = _hull2d(np.column_stack([x, g]))
    if len(poly) == 1:
        return poly
    if len(poly) == 2:
        t = np.linspace(0.0, 1.0, max(q, 2))[:, None]
        return poly[0] + t * (poly[1] - poly[0])
    edges = np.roll(poly, -1, axis=0) - poly
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    perimeter = lengths.sum()
    pieces = []
    for vertex, edge, length in zip(poly, edges, lengths):
        n_sub = max(1, int(math.ceil(2.0 * q * length / perimeter)))
        t = np.linspace(0.0, 1.0, n_sub, endpoint=False)[:, None]
        pieces.append(vertex + t * edge)
    return np.concatenate(pieces)


def trace_srg(matrix, q: int = 360, omega: float = float("nan")) -> SrgSlice:
    """Trace the SRG boundary of a square complex matrix.

    ``q`` is the number of support directions swept over the joint
    numerical range; each costs one Hermitian eigen-solve.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"SRG needs a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("empty matrix")
    if q < 8:
        raise ValueError("need at least 8 sweep angles")

    x, g = _support_points(m, q)
    samples = _densify_range_boundary(x, g, q)
    xs, gs = samples[:, 0], samples[:, 1]
    # Cauchy-Schwarz gives g >= x^2; negative residue is rounding noise.
    y = np.sqrt(np.maximum(gs - xs * xs, 0.0))
    upper = xs + 1j * y
    boundary = np.concatenate([upper, upper.conj()])
    return SrgSlice(omega=float(omega), boundary=boundary, dim=m.shape[0])


def tight_chord(sl: SrgSlice) -> SymmetricRegion:
    """Frequency-wise convex hull of the slice boundary."""
    if sl.boundary.size == 0:
        raise ValueError("empty slice")
    hull = convex_hull_points(sl.boundary)
    lo = float(sl.boundary.real.min())
    hi = float(sl.boundary.real.max())
    return SymmetricRegion(
        hull=hull,
        center=(hi + lo) / 2.0,
        half_width=(hi - lo) / 2.0,
        lo=lo,
        hi=hi,
    )


def disk_approx(sl: SrgSlice) -> Disk:
    """Smallest enclosing disk with center constrained to the real axis.

    f(a) = max_z |z - a| is convex in the real center a; minimized by
    ternary search over the projection interval.
    """
    if sl.boundary.size == 0:
        raise ValueError("empty slice")
    pts = sl.boundary
    lo = float(pts.real.min())
    hi = float(pts.real.max())

    def radius_at(a: float) -> float:
        return float(np.abs(pts - a).max())

    for _ in range(100):
        if hi - lo <= 1e-10 * max(1.0, abs(lo), abs(hi)):
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if radius_at(m1) <= radius_at(m2):
            hi = m2
        else:
            lo = m1
    center = (lo + hi) / 2.0
    return Disk(center=center, radius=radius_at(center))


def projection_metrics(matrix) -> tuple[float, float]:
    """(center, half-width) of the SRG's real-axis projection.

    The projection is exactly the numerical range of the Hermitian part,
    so the bounds are its extreme eigenvalues.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got shape {m.shape}")
    try:
        eigs = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    except np.linalg.LinAlgError as exc:
        raise SrgComputationError(f"eigen-solver failed on Hermitian part: {exc}")
    lo, hi = float(eigs[0]), float(eigs[-1])
    return (hi + lo) / 2.0, (hi - lo) / 2.0


def symmetric_distance(
    c_a: float, r_a: float, mu_a: float, c_b: float, r_b: float, mu_b: float
) -> float:
    """Distance between two scaled convex sets symmetric about the real axis.

    Each set is summarized by the (center, half-width) of its real-axis
    projection; scaling by mu maps (c, r) to (mu*c, |mu|*r) and the
    distance reduces to the gap between the projected intervals.
    """
    if r_a < 0.0 or r_b < 0.0:
        raise ValueError("half-widths must be non-negative")
    return max(0.0, abs(mu_a * c_a - mu_b * c_b) - (abs(mu_a) * r_a + abs(mu_b) * r_b))


def minkowski_distance_to_origin(terms) -> float:
    """Distance from a Minkowski sum of scaled symmetric sets to the origin.

    ``terms`` iterates over (center, half_width, gamma) triples; the
    result is max(0, |sum c_k g_k| - sum r_k |g_k|).
    """
    shift = 0.0
    spread = 0.0
    for c, r, gamma in terms:
        if r < 0.0:
            raise ValueError("half-widths must be non-negative")
        shift += c * gamma
        spread += r * abs(gamma)
    return max(0.0, abs(shift) - spread)
