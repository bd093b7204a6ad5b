"""Singular quadrature on geometric meshes.

All integrals in this package reduce to the form

    integral_0^L  u^p * G(u) du

with an endpoint power weight u^p and a factor G that is bounded (and usually
Holder continuous) near u = 0.  Each mesh cell contributes

    m_k * G(c_k),      m_k = integral of u^p over the cell,
                       c_k = u^p-weighted centroid of the cell,

both in closed form, so the rule is exact whenever G is affine on a cell.  The
mesh is geometric from a relative floor up to L, which spreads the cells evenly
across the scales where a power kernel carries its mass.  For p <= -1 (the
Marchaud difference kernels) the floor cell is excluded and its contribution is
modeled analytically with the declared Holder exponent of the difference.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "power_cells",
    "singular_cells",
    "two_sided_cells",
    "refine_levels",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Resolution knobs for the singular quadrature.

    n_nodes is the cell count per singular direction for one-dimensional
    integrals; the double and triple integrals use n_outer and n_triple cells
    per direction.  grading is either "auto" (exponents chosen
    from the declared regularity) or a fixed mesh-grading exponent used for
    far-end clustering.  split_radius is the relative radius below which an
    inner difference integral switches to its near-singularity zone, and
    tail_floor the relative scale below which differences are modeled by the
    local power law instead of being evaluated.
    """

    n_nodes: int = 4096
    n_outer: int = 512
    n_triple: int = 96
    grading: float | str = "auto"
    split_radius: float = 1.0 / 16.0
    tail_floor: float = 1e-12
    tol: float = 1e-5

    def __post_init__(self) -> None:
        if self.n_nodes < 8:
            raise ValueError("n_nodes must be at least 8")
        if isinstance(self.grading, str):
            if self.grading != "auto":
                raise ValueError("grading must be a number >= 1 or 'auto'")
        elif self.grading < 1.0:
            raise ValueError("grading must be >= 1")
        if not 0.0 < self.split_radius < 1.0:
            raise ValueError("split_radius must lie in (0, 1)")
        if not 0.0 < self.tail_floor < 1.0:
            raise ValueError("tail_floor must lie in (0, 1)")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")

    def grading_override(self) -> float | None:
        """The fixed mesh exponent, or None when grading is "auto"."""
        return None if self.grading == "auto" else float(self.grading)

    def scaled(self, factor: float) -> "QuadratureConfig":
        """A copy with every cell count scaled by `factor` (floored at 8)."""
        return replace(
            self,
            n_nodes=max(8, int(self.n_nodes * factor)),
            n_outer=max(8, int(self.n_outer * factor)),
            n_triple=max(8, int(self.n_triple * factor)),
        )


@dataclass(frozen=True)
class QuadResult:
    """Value of a quadrature together with its node-doubling diagnostics."""

    value: float
    error_estimate: float
    converged: bool
    levels: tuple[float, ...] = ()

    def __float__(self) -> float:
        return self.value


def power_cells(edges: np.ndarray, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact masses and centroids of u^p over the cells of an ascending mesh.

    Returns (mass, centroid) with mass_k = int_{e_k}^{e_k+1} u^p du and
    centroid_k = int u^{p+1} du / mass_k.  Requires p > -1 whenever the first
    edge is 0.
    """
    e = np.asarray(edges, dtype=float)
    width = e[1:] - e[:-1]
    mid = 0.5 * (e[1:] + e[:-1])
    with np.errstate(all="ignore"):
        if p == -1.0:
            mass = np.log(e[1:] / e[:-1])
        else:
            q = p + 1.0
            mass = (e[1:] ** q - e[:-1] ** q) / q
        q2 = p + 2.0
        first = (e[1:] ** q2 - e[:-1] ** q2) / q2
        centroid = first / mass
    # thin cells: the closed forms cancel catastrophically, midpoint rule is exact enough
    narrow = (width <= 1e-8 * np.abs(mid)) | ~np.isfinite(centroid)
    if np.any(narrow):
        mass = np.where(narrow, width * mid**p, mass)
        centroid = np.where(narrow, mid, centroid)
    # keep nodes strictly inside their cells despite rounding
    centroid = np.minimum(np.maximum(centroid, e[:-1]), e[1:])
    return mass, centroid


def graded_edges(lo: float, hi: float, n: int, g: float) -> np.ndarray:
    """n cells on [lo, hi] clustered toward hi with grading exponent g."""
    xi = (np.arange(n + 1) / n) ** g
    return hi - (hi - lo) * xi[::-1]


def singular_cells(
    length: float,
    p: float,
    n: int,
    floor_rel: float,
    far_grading: float = 1.0,
    split: float = 1.0,
    grading: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Cells for int_0^length u^p G(u) du with the singular point at u=0.

    The mesh is algebraically graded toward u=0; `grading` overrides the
    exponent, which otherwise defaults to the value giving a second-order
    composite rule: 2/(p+1) for integrable weights (p > -1, smooth G) and
    2/(p+2) for difference kernels (p <= -1, where G vanishes linearly at 0
    on the scales the mesh resolves).  If split < 1 the grading
    applies on [0, split*length] and the far band [split*length, length] is
    graded toward u=length with exponent far_grading, for integrands rough at
    the far end.

    For p > -1 the first cell starts at 0 and carries its exact weight mass,
    so nothing is dropped.  For p <= -1 cells are truncated at the relative
    floor and the caller must model the remaining [0, floor] tail.

    Returns (mass, centroid) arrays.
    """
    if length <= 0.0:
        raise ValueError("length must be positive")
    if grading is not None:
        g = float(grading)
    else:
        g = 2.0 / (p + 2.0) if p <= -1.0 else max(1.0, 2.0 / (p + 1.0))
    if split < 1.0:
        n_near = max(4, n // 2)
        n_far = max(4, n - n_near)
        near_hi = split * length
        edges_near = near_hi * (np.arange(n_near + 1) / n_near) ** g
        edges_far = graded_edges(near_hi, length, n_far, far_grading)
        edges = np.concatenate([edges_near, edges_far[1:]])
    else:
        edges = length * (np.arange(n + 1) / n) ** g
    if p <= -1.0:
        floor = floor_rel * length
        edges = np.unique(np.clip(edges, floor, length))
        if edges[0] > floor:
            edges = np.concatenate([[floor], edges])
        if edges.size < 2:
            edges = np.array([floor, length])
    mass, centroid = power_cells(edges, p)
    return mass, centroid


def two_sided_cells(
    a: float,
    b: float,
    p_a: float,
    p_b: float,
    n: int,
    floor_rel: float,
    grading: float | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Weights and nodes for int_a^b (t-a)^{p_a} (b-t)^{p_b} G(t) dt.

    The interval is split at its midpoint; each half extracts its own endpoint
    power exactly and folds the opposite (smooth there) power factor into the
    weight at the node.  Requires p_a, p_b > -1.

    Returns (weights, nodes, dist_a, dist_b) where dist_a = t - a and
    dist_b = b - t are carried in exact cell coordinates: deeply graded nodes
    can sit closer to an endpoint than float subtraction from the node could
    resolve, and the singular power factors must be formed from the true
    distances.
    """
    half = 0.5 * (b - a)
    m_lo, c_lo = singular_cells(half, p_a, n // 2, floor_rel, grading=grading)
    t_lo = a + c_lo
    d_lo_b = (b - a) - c_lo
    w_lo = m_lo * d_lo_b**p_b
    m_hi, c_hi = singular_cells(half, p_b, n - n // 2, floor_rel, grading=grading)
    t_hi = b - c_hi
    d_hi_a = (b - a) - c_hi
    w_hi = m_hi * d_hi_a**p_a
    nodes = np.concatenate([t_lo, t_hi[::-1]])
    weights = np.concatenate([w_lo, w_hi[::-1]])
    dist_a = np.concatenate([c_lo, d_hi_a[::-1]])
    dist_b = np.concatenate([d_lo_b, c_hi[::-1]])
    return weights, nodes, dist_a, dist_b


def refine_levels(
    evaluate: Callable[[int], float],
    n: int,
    tol: float,
    scale_floor: float = 0.0,
) -> QuadResult:
    """Run `evaluate` at cell counts n/4, n/2, n and Richardson-extrapolate.

    The empirical order is fitted from the two successive differences; if it
    is stable the extrapolated value is returned with the extrapolation step
    as the error estimate, otherwise the finest value with the last difference
    as the estimate.  `converged` reflects the node-doubling test at 10*tol
    relative to max(|value|, scale_floor).
    """
    ns = [max(8, n // 4), max(8, n // 2), n]
    vals = [evaluate(k) for k in ns]
    d1 = vals[1] - vals[0]
    d2 = vals[2] - vals[1]
    scale = max(abs(vals[2]), scale_floor, 1e-300)
    if abs(d2) <= 1e-15 * scale:
        return QuadResult(vals[2], abs(d2), True, tuple(vals))
    order = np.log2(abs(d1) / abs(d2)) if d1 != 0.0 else np.inf
    if 1.5 <= order <= 2.5:
        order = 2.0  # the composite rule's theoretical order; snapping keeps
        # extrapolation linear in the integrand when the fit is only noise
    if np.isfinite(order) and 0.5 <= order <= 4.5:
        corr = d2 / (2.0**order - 1.0)
        value = vals[2] + corr
        # the correction magnitude plus a cushion for order-fit noise
        err = abs(corr) + 0.5 * abs(d2)
    else:
        value = vals[2]
        err = 1.5 * abs(d2)
    converged = abs(d2) <= 10.0 * tol * scale
    return QuadResult(value, err, converged, tuple(vals))


def combine_results(results: Sequence[QuadResult], coeffs: Sequence[float]) -> QuadResult:
    """Linear combination of QuadResults with summed error estimates."""
    value = float(sum(c * r.value for c, r in zip(coeffs, results)))
    err = float(sum(abs(c) * r.error_estimate for c, r in zip(coeffs, results)))
    converged = all(r.converged for r in results)
    return QuadResult(value, err, converged)
