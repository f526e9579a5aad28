"""The symmetric configuration space of a class and generic sampling.

For a group operation x with assigned automorphism alpha, a configuration
p (stacked joint coordinates) lies in the class exactly when

    blockdiag(M_x, ..., M_x) p = (P_alpha kron I_d) p    for every x,

so the space U of all such configurations is the kernel of the stacked
constraint matrix. Almost every point of U realizes the maximal rank the
class can attain, which makes one sampled witness a sound certificate for
rigidity properties of the whole class; negative verdicts from sampling
remain probabilistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import kernel_basis
from .classify import TypeAssignment, is_homomorphism
from .errors import (
    InconsistentPropagation,
    NotAHomomorphism,
    NotAnAutomorphism,
    SamplingExhausted,
)
from .graphs import Graph, is_automorphism
from .groups import LinearSubspace, SymmetryGroup, fixed_subspace
from .rigidity import Framework, rigidity_verdict

KERNEL_RTOL = 1e-9


def symmetry_constraint_matrix(group: SymmetryGroup, phi: TypeAssignment, x_index: int, n: int) -> np.ndarray:
    """The (d n) x (d n) block matrix of the constraint for one operation."""
    op = group.elements[x_index]
    d = group.dim
    perm = phi[x_index]
    block = np.kron(np.eye(n), op.matrix)
    pmat = np.zeros((n, n))
    for i in range(n):
        pmat[i, perm(i)] = 1.0
    return block - np.kron(pmat, np.eye(d))


def _stacked_constraints(graph: Graph, group: SymmetryGroup, phi: TypeAssignment) -> np.ndarray:
    if len(phi) != len(group):
        raise NotAnAutomorphism(f"type assigns {len(phi)} images for a group of order {len(group)}")
    for op, perm in zip(group.elements, phi.images):
        if not is_automorphism(graph, perm):
            raise NotAnAutomorphism(f"image for {op.label} is not an automorphism")
    blocks = []
    for x in range(len(group)):
        if x == 0 and phi[0].is_identity():
            continue
        blocks.append(symmetry_constraint_matrix(group, phi, x, graph.n))
    dn = group.dim * graph.n
    if not blocks:
        return np.zeros((0, dn))
    return np.vstack(blocks)


@dataclass(frozen=True, eq=False)
class ConfigSpaceBasis:
    """Orthonormal basis of the symmetric configuration space, rows are vectors."""

    graph: Graph
    group: SymmetryGroup
    phi: TypeAssignment
    basis: np.ndarray

    @property
    def k(self) -> int:
        return int(self.basis.shape[0])

    @property
    def dim(self) -> int:
        return self.group.dim

    def coords_from(self, weights: np.ndarray) -> np.ndarray:
        """Configuration for a coefficient vector, reshaped to (n, d)."""
        w = np.asarray(weights, dtype=float)
        vec = w @ self.basis if self.k else np.zeros(self.group.dim * self.graph.n)
        return vec.reshape(self.graph.n, self.group.dim)


def config_space_basis(graph: Graph, group: SymmetryGroup, phi: TypeAssignment, rtol: float = KERNEL_RTOL) -> ConfigSpaceBasis:
    """Orthonormal kernel basis of the stacked symmetry constraints.

    The identity operation contributes a block only if its assigned
    automorphism is not the identity permutation. With no constraints at
    all the basis is the canonical one for the full configuration space.
    """
    stack = _stacked_constraints(graph, group, phi)
    return ConfigSpaceBasis(graph=graph, group=group, phi=phi, basis=kernel_basis(stack, rtol))


def constraint_residual(basis_or_graph, group: SymmetryGroup, phi: TypeAssignment, coords: np.ndarray) -> float:
    """Largest violation of the class constraints by a configuration."""
    graph = basis_or_graph.graph if isinstance(basis_or_graph, ConfigSpaceBasis) else basis_or_graph
    p = np.asarray(coords, dtype=float).reshape(graph.n, group.dim)
    worst = 0.0
    for x in range(len(group)):
        moved = p @ group.elements[x].matrix.T
        target = p[list(phi[x].images)]
        worst = max(worst, float(np.max(np.abs(moved - target))))
    return worst


def class_is_empty(graph: Graph, basis: ConfigSpaceBasis, tol: float = 1e-9) -> tuple[bool, list[tuple[int, int]]]:
    """Exact emptiness test: a class is empty iff some bar is forced to zero length.

    A bar {u, v} is forced exactly when the linear functional p_u - p_v
    vanishes on every basis vector of U, which makes every member of the
    class degenerate on that bar.
    """
    d = basis.group.dim
    offending = []
    for u, v in graph.sorted_edges():
        if basis.k == 0:
            offending.append((u, v))
            continue
        diff = basis.basis[:, d * u: d * u + d] - basis.basis[:, d * v: d * v + d]
        if np.max(np.abs(diff)) <= tol:
            offending.append((u, v))
    return (len(offending) > 0, offending)


def _draw_config(basis: ConfigSpaceBasis, rng: np.random.Generator, retries: int, framework_tol: float) -> Framework:
    g = basis.graph
    if basis.k == 0:
        coords = np.zeros((g.n, basis.dim))
        f = Framework(g, coords)
        if f.edge_violations(framework_tol):
            raise SamplingExhausted("the class is empty: its only configuration collapses a bar")
        return f
    for _ in range(retries):
        weights = rng.uniform(-1.0, 1.0, basis.k)
        coords = basis.coords_from(weights)
        peak = np.max(np.abs(coords))
        if peak <= framework_tol:
            continue
        coords = coords / peak
        f = Framework(g, coords)
        if not f.edge_violations(framework_tol):
            return f
    raise SamplingExhausted(f"no valid framework in {retries} draws")


def sample_config(
    basis: ConfigSpaceBasis,
    seed: int = 0,
    retries: int = 100,
    framework_tol: float = 1e-8,
) -> Framework:
    """Draw a framework from the class, rescaled to the unit box.

    Coefficients are uniform on [-1, 1]^k; draws that collapse a bar are
    rejected. The result satisfies the class constraints by construction.
    """
    rng = np.random.default_rng(seed)
    return _draw_config(basis, rng, retries, framework_tol)


def draw_samples(
    basis: ConfigSpaceBasis,
    count: int,
    seed: int = 0,
    retries: int = 100,
    framework_tol: float = 1e-8,
) -> list[Framework]:
    """count frameworks from one seeded stream (deterministic for a seed)."""
    rng = np.random.default_rng(seed)
    return [_draw_config(basis, rng, retries, framework_tol) for _ in range(count)]


@dataclass(frozen=True, eq=False)
class OrbitStructure:
    """Vertex orbits of a homomorphic type, with per-representative freedom."""

    graph: Graph
    orbits: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    fixed_spaces: tuple[LinearSubspace, ...]

    def degrees_of_freedom(self) -> int:
        return sum(space.dim for space in self.fixed_spaces)


def orbit_structure(graph: Graph, group: SymmetryGroup, phi: TypeAssignment) -> OrbitStructure:
    """Vertex orbits under the assigned automorphisms, for homomorphic types.

    Each representative may be placed anywhere in the intersection of the
    fixed subspaces of its stabilizing operations; the rest of its orbit
    is then forced. Non-homomorphic assignments are rejected because orbit
    propagation is only consistent along a group action.
    """
    if not is_homomorphism(group, phi):
        raise NotAHomomorphism("orbit structure needs a homomorphic type")
    n = graph.n
    seen = [False] * n
    orbits = []
    reps = []
    spaces = []
    for v in range(n):
        if seen[v]:
            continue
        orbit = sorted({phi[x](v) for x in range(len(group))})
        for w in orbit:
            seen[w] = True
        stabilizer_rows = []
        for x in range(len(group)):
            if phi[x](v) == v:
                stabilizer_rows.append(group.elements[x].matrix - np.eye(group.dim))
        if stabilizer_rows:
            space = LinearSubspace(group.dim, kernel_basis(np.vstack(stabilizer_rows), KERNEL_RTOL))
        else:
            space = LinearSubspace(group.dim, np.eye(group.dim))
        orbits.append(tuple(orbit))
        reps.append(v)
        spaces.append(space)
    return OrbitStructure(graph=graph, orbits=tuple(orbits), representatives=tuple(reps), fixed_spaces=tuple(spaces))


def _ball_point(space: LinearSubspace, rng: np.random.Generator) -> np.ndarray:
    if space.dim == 0:
        return np.zeros(space.ambient_dim)
    while True:
        w = rng.uniform(-1.0, 1.0, space.dim)
        if np.linalg.norm(w) <= 1.0:
            return w @ space.basis


def orbit_sample(
    structure: OrbitStructure,
    group: SymmetryGroup,
    phi: TypeAssignment,
    seed: int = 0,
    retries: int = 100,
    framework_tol: float = 1e-8,
    membership_tol: float = 1e-8,
) -> Framework:
    """Sample by placing each orbit representative and propagating.

    Representatives are drawn uniformly from the unit ball of their fixed
    subspace; every other joint position is the image of its representative
    under some operation. Draws that collapse a bar are rejected.
    """
    g = structure.graph
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        coords = np.full((g.n, group.dim), np.nan)
        for rep, space in zip(structure.representatives, structure.fixed_spaces):
            point = _ball_point(space, rng)
            for x in range(len(group)):
                target = phi[x](rep)
                image = group.elements[x].matrix @ point
                if np.isnan(coords[target, 0]):
                    coords[target] = image
                elif np.max(np.abs(coords[target] - image)) > membership_tol:
                    raise InconsistentPropagation(
                        f"joint {g.labels[target]} received two positions differing by more than {membership_tol}"
                    )
        residual = constraint_residual(g, group, phi, coords)
        if residual > membership_tol:
            raise InconsistentPropagation(f"propagated configuration violates the class constraints by {residual:.2e}")
        f = Framework(g, coords)
        if not f.edge_violations(framework_tol):
            return f
    raise SamplingExhausted(f"no valid framework in {retries} draws")


@dataclass(frozen=True)
class SymGenericReport:
    """Verdicts for a whole class from seeded witness sampling."""

    k: int
    empty: bool
    offending_edges: tuple[tuple[int, int], ...]
    samples_drawn: int
    ranks: tuple[int, ...]
    max_rank: int
    infinitesimally_rigid: bool
    independent: bool
    isostatic: bool
    witness: np.ndarray | None

    def to_dict(self, labels: tuple[str, ...] | None = None) -> dict:
        out = {
            "k": self.k,
            "empty": self.empty,
            "offending_edges": [
                [labels[u], labels[v]] if labels else [u, v] for u, v in self.offending_edges
            ],
            "samples_drawn": self.samples_drawn,
            "max_rank": self.max_rank,
            "infinitesimally_rigid": self.infinitesimally_rigid,
            "independent": self.independent,
            "isostatic": self.isostatic,
            "note": "positive verdicts carry a sampled witness; negative verdicts are probabilistic",
        }
        if self.witness is not None:
            if labels:
                out["witness"] = {labels[i]: [float(c) for c in row] for i, row in enumerate(self.witness)}
            else:
                out["witness"] = [[float(c) for c in row] for row in self.witness]
        return out


def sym_generic_verdict(
    graph: Graph,
    group: SymmetryGroup,
    phi: TypeAssignment,
    trials: int = 20,
    seed: int = 0,
    rank_rtol: float = 1e-8,
    framework_tol: float = 1e-8,
) -> SymGenericReport:
    """Classify a whole class by sampling: empty, or rigidity verdicts.

    One sampled witness certifies a positive verdict for almost all
    members of the class; a negative verdict only reports that no witness
    appeared within the trial budget.
    """
    basis = config_space_basis(graph, group, phi)
    empty, offending = class_is_empty(graph, basis)
    if empty:
        return SymGenericReport(
            k=basis.k, empty=True, offending_edges=tuple(offending), samples_drawn=0,
            ranks=(), max_rank=0, infinitesimally_rigid=False, independent=False,
            isostatic=False, witness=None,
        )
    rng = np.random.default_rng(seed)
    ranks = []
    best = None
    rigid = independent = isostatic = False
    witness = None
    for _ in range(trials):
        f = _draw_config(basis, rng, 100, framework_tol)
        report = rigidity_verdict(f, rank_rtol, framework_tol)
        ranks.append(report.rank)
        if report.isostatic and not isostatic:
            witness = f.coords
        elif report.infinitesimally_rigid and not rigid and witness is None:
            witness = f.coords
        rigid = rigid or report.infinitesimally_rigid
        independent = independent or report.independent
        isostatic = isostatic or report.isostatic
        if best is None or report.rank > best[0]:
            best = (report.rank, f.coords)
    if witness is None and best is not None:
        witness = best[1]
    return SymGenericReport(
        k=basis.k, empty=False, offending_edges=(), samples_drawn=trials,
        ranks=tuple(ranks), max_rank=max(ranks), infinitesimally_rigid=rigid,
        independent=independent, isostatic=isostatic, witness=witness,
    )
