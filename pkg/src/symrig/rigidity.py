"""Bar-and-joint frameworks and infinitesimal rigidity decisions.

The rigidity matrix has one row per bar {u, v}: the d entries p_u - p_v
in the columns of u, the d entries p_v - p_u in the columns of v, zeros
elsewhere. Rank decisions use SVD with a relative cutoff after rescaling
the configuration to the unit box.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from ._numeric import numeric_rank
from .errors import InvalidFramework, UnsupportedDim
from .graphs import Graph

__all__ = [
    "Framework",
    "RigidityReport",
    "rigidity_matrix",
    "numeric_rank",
    "affine_span_dim",
    "trivial_motion_basis",
    "rigidity_verdict",
]


@dataclass(frozen=True, eq=False)
class Framework:
    """A graph together with joint coordinates, one row per vertex."""

    graph: Graph
    coords: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.coords, dtype=float)
        if p.ndim != 2 or p.shape[0] != self.graph.n:
            raise InvalidFramework(
                f"expected coordinates of shape ({self.graph.n}, d), got {np.shape(self.coords)}"
            )
        if p.shape[1] not in (2, 3):
            raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {p.shape[1]}")
        p.setflags(write=False)
        object.__setattr__(self, "coords", p)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def dim(self) -> int:
        return int(self.coords.shape[1])

    def edge_violations(self, tol: float = 1e-8) -> list[tuple[int, int]]:
        """Bars whose endpoints coincide within tol."""
        bad = []
        for u, v in self.graph.sorted_edges():
            if np.linalg.norm(self.coords[u] - self.coords[v]) <= tol:
                bad.append((u, v))
        return bad

    def validate(self, tol: float = 1e-8) -> None:
        bad = self.edge_violations(tol)
        if bad:
            names = ", ".join(f"{{{self.graph.labels[u]}, {self.graph.labels[v]}}}" for u, v in bad)
            raise InvalidFramework(f"coincident bar endpoints: {names}")


@dataclass(frozen=True)
class RigidityReport:
    rank: int
    bar_count: int
    dof_count: int
    affine_span_dim: int
    trivial_dim: int
    infinitesimally_rigid: bool
    independent: bool
    isostatic: bool

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "bar_count": self.bar_count,
            "dof_count": self.dof_count,
            "affine_span_dim": self.affine_span_dim,
            "trivial_dim": self.trivial_dim,
            "infinitesimally_rigid": self.infinitesimally_rigid,
            "independent": self.independent,
            "isostatic": self.isostatic,
        }


def rigidity_matrix(framework: Framework) -> np.ndarray:
    """The |E| x (d n) rigidity matrix, rows ordered by sorted edge list.

    Degenerate bars with coincident endpoints simply contribute zero rows,
    so no validity check is made here.
    """
    g, p = framework.graph, framework.coords
    d = framework.dim
    rows = np.zeros((g.edge_count, d * g.n))
    for r, (u, v) in enumerate(g.sorted_edges()):
        diff = p[u] - p[v]
        rows[r, d * u: d * u + d] = diff
        rows[r, d * v: d * v + d] = -diff
    return rows


def affine_span_dim(coords: np.ndarray, rtol: float = 1e-8) -> int:
    """Dimension of the affine span of the points (0 for a single point)."""
    p = np.asarray(coords, dtype=float)
    if p.shape[0] <= 1:
        return 0
    diffs = p[0] - p[1:]
    scale = np.max(np.abs(diffs))
    if scale > 0:
        diffs = diffs / scale
    return numeric_rank(diffs, rtol)


def trivial_motion_basis(framework: Framework) -> np.ndarray:
    """Spanning set of trivial infinitesimal motions, one per row.

    d translations plus one rotation field u(v) = A p_v for each basis
    element A of the skew-symmetric matrices. The rows may be linearly
    dependent for degenerate configurations.
    """
    p = framework.coords
    n, d = p.shape
    fields = []
    for k in range(d):
        t = np.zeros((n, d))
        t[:, k] = 1.0
        fields.append(t.reshape(-1))
    for a, b in combinations(range(d), 2):
        skew = np.zeros((d, d))
        skew[a, b] = 1.0
        skew[b, a] = -1.0
        fields.append((p @ skew.T).reshape(-1))
    return np.array(fields)


def rigidity_verdict(framework: Framework, rank_rtol: float = 1e-8, framework_tol: float = 1e-8) -> RigidityReport:
    """Decide infinitesimal rigidity, independence, and isostaticity.

    Rigid means rank equals d n - C(d+1, 2), or the graph is complete on
    affinely independent points. Independent means rank equals the bar
    count; isostatic means both.
    """
    framework.validate(framework_tol)
    g = framework.graph
    n, d = framework.n, framework.dim
    p = framework.coords
    scale = float(np.max(np.abs(p)))
    if scale > 0:
        p = p / scale
    scaled = Framework(g, p)
    rmat = rigidity_matrix(scaled)
    rank = numeric_rank(rmat, rank_rtol)
    affine = affine_span_dim(p, rank_rtol)
    trivial = numeric_rank(trivial_motion_basis(scaled), rank_rtol)
    rigid = rank == d * n - comb(d + 1, 2) or (g.is_complete() and affine == n - 1)
    independent = rank == g.edge_count
    return RigidityReport(
        rank=rank,
        bar_count=g.edge_count,
        dof_count=d * n,
        affine_span_dim=affine,
        trivial_dim=trivial,
        infinitesimally_rigid=rigid,
        independent=independent,
        isostatic=rigid and independent,
    )
