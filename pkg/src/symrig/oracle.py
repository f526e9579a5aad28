"""Independent slow checks used to validate the fast paths.

Everything here trades speed for directness: full permutation scans
instead of pruned search, exact integer elimination instead of SVD, and
minor-by-minor genericity checks instead of a single rank. Hard input
caps keep the run times sane; exceeding a cap raises instead of silently
downgrading the check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

import numpy as np

from ._numeric import kernel_basis
from .classify import TypeAssignment
from .errors import CapExceeded, ExplosionGuard, NotInSymmetryClass, NotRationalizable
from .graphs import Graph, Permutation
from .groups import SymmetryGroup

BRUTE_MAX_VERTICES = 9
BRUTE_MAX_ORDER = 6
GENERIC_MAX_VERTICES = 4
MAX_TYPE_PRODUCT = 100_000


@dataclass(frozen=True)
class BruteForceTypes:
    """Full type catalog found by unpruned search."""

    valid_sets: tuple[tuple[Permutation, ...], ...]
    types: tuple[TypeAssignment, ...]
    normalized: tuple[TypeAssignment, ...]

    @property
    def coincidence(self) -> tuple[Permutation, ...]:
        """Automorphisms fixing the configuration: the identity's valid set."""
        return self.valid_sets[0]


def brute_force_type_search(
    graph: Graph,
    coords: np.ndarray,
    group: SymmetryGroup,
    tol: float = 1e-8,
    max_vertices: int = BRUTE_MAX_VERTICES,
    max_order: int = BRUTE_MAX_ORDER,
) -> BruteForceTypes:
    """Every type assignment, by scanning all n! vertex bijections.

    The valid set of each operation is collected independently, then the
    catalog is the full Cartesian product. No coset or witness reasoning
    is used, which is the point: this is the cross-check for the fast
    enumeration.
    """
    if graph.n > max_vertices:
        raise CapExceeded(f"brute force capped at {max_vertices} vertices, got {graph.n}")
    if len(group) > max_order:
        raise CapExceeded(f"brute force capped at group order {max_order}, got {len(group)}")
    p = np.asarray(coords, dtype=float)
    edge_set = graph.edges
    autos = []
    for images in itertools.permutations(range(graph.n)):
        if all(
            ((images[u], images[v]) if images[u] < images[v] else (images[v], images[u])) in edge_set
            for u, v in edge_set
        ):
            autos.append(Permutation(images))
    valid_sets = []
    for op in group.elements:
        moved = p @ op.matrix.T
        good = tuple(a for a in autos if np.max(np.abs(moved - p[list(a.images)])) <= tol)
        valid_sets.append(good)
    if any(len(vs) == 0 for vs in valid_sets):
        return BruteForceTypes(valid_sets=tuple(valid_sets), types=(), normalized=())
    total = 1
    for vs in valid_sets:
        total *= len(vs)
        if total > MAX_TYPE_PRODUCT:
            raise ExplosionGuard(f"type catalog would exceed {MAX_TYPE_PRODUCT} entries")
    types = tuple(TypeAssignment(images=combo) for combo in itertools.product(*valid_sets))
    normalized = tuple(t for t in types if t[0].is_identity())
    return BruteForceTypes(valid_sets=tuple(valid_sets), types=types, normalized=normalized)


@dataclass(frozen=True)
class GenericCheckReport:
    """Outcome of the all-minors genericity check."""

    generic: bool
    minors_checked: int
    vanishing_at_point: int
    failing_minor: tuple[tuple[int, ...], tuple[int, ...]] | None

    def __bool__(self) -> bool:
        return self.generic


def _complete_rigidity_matrix(p: np.ndarray) -> np.ndarray:
    n, d = p.shape
    rows = np.zeros((comb(n, 2), d * n))
    for r, (u, v) in enumerate(itertools.combinations(range(n), 2)):
        rows[r, d * u: d * u + d] = p[u] - p[v]
        rows[r, d * v: d * v + d] = p[v] - p[u]
    return rows


def _minor_vanishes(sub: np.ndarray, tol: float) -> bool:
    sigma = np.linalg.svd(sub, compute_uv=False)
    if sigma[0] == 0.0:
        return True
    return bool(sigma[-1] <= tol * max(1.0, sigma[0]))


def exhaustive_generic_check(
    coords: np.ndarray,
    group: SymmetryGroup,
    images: tuple[Permutation, ...],
    evals: int = 8,
    tol: float = 1e-9,
    seed: int = 0,
    max_vertices: int = GENERIC_MAX_VERTICES,
) -> GenericCheckReport:
    """Decide genericity of a configuration within its class, minor by minor.

    A configuration is generic for its class when every square submatrix
    of the complete-graph rigidity matrix that is singular there is
    singular everywhere on the class's configuration space. Identical
    vanishing is tested at seeded random members of the space, so a False
    is definitive while a True is correct up to a measure-zero accident.
    """
    p = np.asarray(coords, dtype=float)
    n, d = p.shape
    if n > max_vertices:
        raise CapExceeded(f"minor scan capped at {max_vertices} vertices, got {n}")
    if d != 2:
        raise CapExceeded("minor scan only implemented in the plane")
    if len(images) != len(group):
        raise NotInSymmetryClass(f"{len(images)} images for a group of order {len(group)}")
    peak = np.max(np.abs(p))
    if peak > 0:
        p = p / peak

    # constraint stack for the class, built here rather than imported
    blocks = []
    for op, perm in zip(group.elements, images):
        if op.is_identity() and perm.is_identity():
            continue
        pmat = np.zeros((n, n))
        for i in range(n):
            pmat[i, perm(i)] = 1.0
        blocks.append(np.kron(np.eye(n), op.matrix) - np.kron(pmat, np.eye(d)))
    stack = np.vstack(blocks) if blocks else np.zeros((0, d * n))
    if blocks and np.max(np.abs(stack @ p.reshape(-1))) > 1e-7:
        raise NotInSymmetryClass("configuration violates the class constraints")
    space = kernel_basis(stack)

    rng = np.random.default_rng(seed)
    eval_points = []
    for _ in range(evals):
        q = (rng.uniform(-1.0, 1.0, space.shape[0]) @ space).reshape(n, d)
        qpeak = np.max(np.abs(q))
        eval_points.append(q / qpeak if qpeak > 0 else q)
    matrices = [_complete_rigidity_matrix(q) for q in eval_points]
    base = _complete_rigidity_matrix(p)

    rows_total, cols_total = base.shape
    checked = 0
    vanishing = 0
    for size in range(1, min(rows_total, cols_total) + 1):
        for row_pick in itertools.combinations(range(rows_total), size):
            for col_pick in itertools.combinations(range(cols_total), size):
                checked += 1
                sub = base[np.ix_(row_pick, col_pick)]
                if not _minor_vanishes(sub, tol):
                    continue
                vanishing += 1
                for mat in matrices:
                    if not _minor_vanishes(mat[np.ix_(row_pick, col_pick)], tol):
                        return GenericCheckReport(
                            generic=False, minors_checked=checked,
                            vanishing_at_point=vanishing,
                            failing_minor=(row_pick, col_pick),
                        )
    return GenericCheckReport(
        generic=True, minors_checked=checked, vanishing_at_point=vanishing, failing_minor=None,
    )


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination, exact."""
    mat = [list(r) for r in rows]
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(nc):
        pivot_row = next((i for i in range(r, nr) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                mat[i][j] = (mat[r][c] * mat[i][j] - mat[i][c] * mat[r][j]) // prev
            mat[i][c] = 0
        prev = mat[r][c]
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


def kernel_oracle(matrix: np.ndarray, denom_bound: int = 10**6, snap_tol: float = 1e-9) -> int:
    """Kernel dimension by exact rational elimination, no SVD anywhere.

    Entries must be recognizably rational (denominator up to denom_bound
    within snap_tol), which holds for constraint stacks whose group
    matrices have exact entries like 0, +-1, +-0.5. Entries with no such
    form raise NotRationalizable; callers must not feed stacks built from
    irrational rotations, whose continued-fraction convergents can slip
    under snap_tol and rationalize to a nearby wrong matrix.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2:
        raise ValueError("kernel_oracle expects a 2d array")
    rows, cols = a.shape
    if rows == 0:
        return cols
    int_rows = []
    for row in a:
        fracs = []
        for x in row:
            f = Fraction(float(x)).limit_denominator(denom_bound)
            if abs(f - Fraction(float(x))) > snap_tol:
                raise NotRationalizable(f"entry {x!r} has no rational form with denominator <= {denom_bound}")
            fracs.append(f)
        mult = lcm(*(f.denominator for f in fracs))
        int_rows.append([int(f * mult) for f in fracs])
    return cols - _bareiss_rank(int_rows)
