"""Classifying symmetric realizations by type.

A type assigns to every group operation x a graph automorphism alpha_x
such that moving a joint by x lands on the joint of alpha_x(v):

    x(p(v)) = p(alpha_x(v))   for all vertices v.

Realizations of a graph under a group split into classes indexed by
these assignments. Given one witness automorphism for x, the full set of
valid choices for x is its coset by the coincidence automorphisms, so a
catalog is determined by one base type plus that subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (
    DimensionMismatch,
    ExplosionGuard,
    LengthMismatch,
    NotAnAutomorphism,
    NotInSymmetryClass,
)
from .graphs import (
    AUTOMORPHISM_CAP,
    Graph,
    Permutation,
    automorphisms,
    coincidence_automorphisms,
    format_cycles,
    is_automorphism,
)
from .groups import SymmetryGroup

MAX_TYPE_PRODUCT = 100_000


@dataclass(frozen=True)
class TypeAssignment:
    """One automorphism per group element, parallel to the element list."""

    images: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> Permutation:
        return self.images[i]

    def as_dict(self, group: SymmetryGroup, graph: Graph) -> dict[str, str]:
        return {op.label: format_cycles(perm, graph.labels) for op, perm in zip(group.elements, self.images)}


@dataclass(frozen=True)
class TypeCatalog:
    """Base type, coincidence subgroup, and per-element valid sets."""

    base: TypeAssignment
    coincidence_group: tuple[Permutation, ...]
    valid_sets: tuple[tuple[Permutation, ...], ...]

    @property
    def count(self) -> int:
        total = 1
        for s in self.valid_sets:
            total *= len(s)
        return total

    def normalized_count(self) -> int:
        total = 1
        for s in self.valid_sets[1:]:
            total *= len(s)
        return total


def identity_type(group: SymmetryGroup, n: int) -> TypeAssignment:
    return TypeAssignment(tuple(Permutation.identity(n) for _ in group.elements))


def _check_shapes(graph: Graph, coords: np.ndarray, group: SymmetryGroup) -> np.ndarray:
    p = np.asarray(coords, dtype=float)
    if p.ndim != 2 or p.shape[0] != graph.n:
        raise LengthMismatch(f"expected coordinates of shape ({graph.n}, d), got {p.shape}")
    if p.shape[1] != group.dim:
        raise DimensionMismatch(f"coordinates are {p.shape[1]}d but the group acts on {group.dim}d")
    return p


def verify_type(
    graph: Graph,
    coords: np.ndarray,
    group: SymmetryGroup,
    phi: TypeAssignment,
    tol: float = 1e-8,
) -> bool:
    """Check x(p(v)) = p(phi_x(v)) for all x and v, and that bars have length > tol."""
    p = _check_shapes(graph, coords, group)
    if len(phi) != len(group):
        raise LengthMismatch(f"type assigns {len(phi)} images for a group of order {len(group)}")
    for op, perm in zip(group.elements, phi.images):
        if not is_automorphism(graph, perm):
            raise NotAnAutomorphism(
                f"image for {op.label} is not an automorphism: {format_cycles(perm, graph.labels)}"
            )
    for u, v in graph.edges:
        if np.linalg.norm(p[u] - p[v]) <= tol:
            return False
    for op, perm in zip(group.elements, phi.images):
        moved = p @ op.matrix.T
        if np.max(np.linalg.norm(moved - p[list(perm.images)], axis=1)) > tol:
            return False
    return True


def find_base_type(
    graph: Graph,
    coords: np.ndarray,
    group: SymmetryGroup,
    tol: float = 1e-8,
    cap: int = AUTOMORPHISM_CAP,
) -> TypeAssignment | None:
    """Search one witness automorphism per group element, independently.

    Returns the assignment made of the lexicographically first witness for
    each element, or None when some element has no witness (the realization
    does not have the full symmetry) or the configuration is not a framework.
    """
    p = _check_shapes(graph, coords, group)
    for u, v in graph.edges:
        if np.linalg.norm(p[u] - p[v]) <= tol:
            return None
    auts = automorphisms(graph, cap)
    images = []
    for op in group.elements:
        moved = p @ op.matrix.T
        witness = None
        for alpha in auts:
            if np.max(np.linalg.norm(moved - p[list(alpha.images)], axis=1)) <= tol:
                witness = alpha
                break
        if witness is None:
            return None
        images.append(witness)
    return TypeAssignment(tuple(images))


def enumerate_types(
    graph: Graph,
    coords: np.ndarray,
    group: SymmetryGroup,
    tol: float = 1e-8,
    normalized: bool = False,
    cap: int = AUTOMORPHISM_CAP,
    max_product: int = MAX_TYPE_PRODUCT,
) -> tuple[TypeCatalog, list[TypeAssignment]]:
    """All types of a realization: cosets of the coincidence subgroup.

    With normalized=True the identity operation is pinned to the identity
    automorphism, leaving |Aut(G,p)| ^ (|S| - 1) assignments.
    """
    base = find_base_type(graph, coords, group, tol, cap)
    if base is None:
        raise NotInSymmetryClass("the realization admits no type for this group")
    coincidence = coincidence_automorphisms(graph, np.asarray(coords, dtype=float), tol, cap)
    valid_sets = []
    for witness in base.images:
        coset = sorted(witness.compose(beta) for beta in coincidence)
        valid_sets.append(tuple(coset))
    catalog = TypeCatalog(base=base, coincidence_group=tuple(coincidence), valid_sets=tuple(valid_sets))
    slots = list(catalog.valid_sets)
    if normalized:
        slots[0] = (Permutation.identity(graph.n),)
    total = 1
    for s in slots:
        total *= len(s)
    if total > max_product:
        raise ExplosionGuard(f"{total} type assignments exceed the guard of {max_product}")
    types = [TypeAssignment(combo) for combo in product(*slots)]
    return catalog, types


def is_homomorphism(group: SymmetryGroup, phi: TypeAssignment) -> bool:
    """True iff phi respects the group product: phi(x y) = phi(x) phi(y)."""
    if len(phi) != len(group):
        raise LengthMismatch(f"type assigns {len(phi)} images for a group of order {len(group)}")
    for i in range(len(group)):
        for j in range(len(group)):
            k = group.multiply(i, j)
            if phi[k] != phi[i].compose(phi[j]):
                return False
    return True


def find_homomorphic_type(
    graph: Graph,
    coords: np.ndarray,
    group: SymmetryGroup,
    tol: float = 1e-8,
    cap: int = AUTOMORPHISM_CAP,
    max_product: int = MAX_TYPE_PRODUCT,
) -> TypeAssignment | None:
    """First type in catalog order that is a homomorphism, if any.

    Any homomorphism sends the identity operation to the identity
    automorphism, so only the normalized catalog needs scanning. With a
    trivial coincidence group the unique type is returned directly.
    """
    catalog, types = enumerate_types(graph, coords, group, tol, normalized=True, cap=cap, max_product=max_product)
    if len(catalog.coincidence_group) == 1:
        return types[0]
    for phi in types:
        if is_homomorphism(group, phi):
            return phi
    return None


def restrict_type(group: SymmetryGroup, phi: TypeAssignment, subgroup: SymmetryGroup) -> TypeAssignment:
    """Restrict a type along a subgroup inclusion, matching elements by matrix."""
    if group.dim != subgroup.dim:
        raise DimensionMismatch("subgroup dimension differs")
    images = []
    for op in subgroup.elements:
        images.append(phi[group.index_of(op.matrix)])
    return TypeAssignment(tuple(images))
