"""Finite simple graphs, vertex permutations, and automorphism search.

Vertices are indexed 0..n-1 internally and carry printable labels
(defaulting to "v1".."vn") used by cycle notation and the file formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

import numpy as np

from .errors import BadPermutation, CapExceeded, LengthMismatch, SelfLoop

AUTOMORPHISM_CAP = 12


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on 0..n-1 in one-line notation: images[i] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise BadPermutation(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def compose(self, other: "Permutation") -> "Permutation":
        """Apply other first, then self: (self.compose(other))(i) = self(other(i))."""
        if len(other) != len(self):
            raise LengthMismatch(f"cannot compose permutations of lengths {len(self)} and {len(other)}")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at its smallest member."""
        seen = [False] * len(self.images)
        out: list[tuple[int, ...]] = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on labeled vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...]

    @staticmethod
    def make(n: int, edge_list, labels: tuple[str, ...] | None = None) -> "Graph":
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        if labels is None:
            labels = tuple(f"v{i + 1}" for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be distinct and match the vertex count")
        norm: list[tuple[int, int]] = []
        for u, v in edge_list:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"self loop at vertex {labels[u] if 0 <= u < n else u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        return Graph(n=n, edges=frozenset(norm), labels=labels)

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph.make(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @staticmethod
    def cycle(n: int) -> "Graph":
        return Graph.make(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "Graph":
        return Graph.make(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        adj = self.adjacency()
        return [len(a) for a in adj]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise BadPermutation(f"unknown vertex name {label!r}") from None


def is_automorphism(graph: Graph, perm: Permutation) -> bool:
    """True iff perm maps the edge set of graph onto itself."""
    if len(perm) != graph.n:
        raise LengthMismatch(f"permutation length {len(perm)} does not match n={graph.n}")
    for u, v in graph.edges:
        a, b = perm(u), perm(v)
        if (min(a, b), max(a, b)) not in graph.edges:
            return False
    return True


@lru_cache(maxsize=128)
def _automorphisms_cached(graph: Graph, cap: int) -> tuple[Permutation, ...]:
    if graph.n > cap:
        raise CapExceeded(f"automorphism search capped at {cap} vertices, got {graph.n}")
    n = graph.n
    adj = graph.adjacency()
    deg = [len(a) for a in adj]
    images = [-1] * n
    used = [False] * n
    found: list[Permutation] = []

    def extend(k: int) -> None:
        if k == n:
            found.append(Permutation(tuple(images)))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[k]:
                continue
            ok = True
            for j in range(k):
                if (j in adj[k]) != (images[j] in adj[w]):
                    ok = False
                    break
            if ok:
                images[k] = w
                used[w] = True
                extend(k + 1)
                used[w] = False
                images[k] = -1

    extend(0)
    return tuple(found)


def automorphisms(graph: Graph, cap: int = AUTOMORPHISM_CAP) -> list[Permutation]:
    """All automorphisms of graph in lexicographic order of image sequence.

    Backtracking with degree and partial-adjacency pruning. Exact and
    deterministic; refuses graphs larger than cap.
    """
    return list(_automorphisms_cached(graph, cap))


def coincidence_automorphisms(
    graph: Graph,
    coords: np.ndarray,
    tol: float = 1e-9,
    cap: int = AUTOMORPHISM_CAP,
) -> list[Permutation]:
    """Automorphisms that fix every joint position: p(alpha(v)) = p(v) within tol."""
    p = np.asarray(coords, dtype=float)
    if p.shape[0] != graph.n:
        raise LengthMismatch(f"coordinate rows {p.shape[0]} do not match n={graph.n}")
    out = []
    for alpha in automorphisms(graph, cap):
        moved = p[list(alpha.images)] - p
        if np.max(np.linalg.norm(moved, axis=1)) <= tol:
            out.append(alpha)
    return out


def format_cycles(perm: Permutation, labels: tuple[str, ...], include_fixed: bool = False) -> str:
    """Serialize a permutation as cycle notation over vertex labels, "id" if trivial."""
    if len(perm) != len(labels):
        raise LengthMismatch("permutation and label list differ in length")
    cycles = perm.cycles(include_fixed=include_fixed)
    if not cycles:
        return "id"
    return "".join("(" + " ".join(labels[i] for i in cyc) + ")" for cyc in cycles)


def parse_cycles(text: str, labels: tuple[str, ...]) -> Permutation:
    """Parse cycle notation like "(v1 v2)(v5 v6)" over the given labels.

    "id" and "()" denote the identity. Fixed points may be written as
    singleton cycles; every label may appear at most once.
    """
    n = len(labels)
    index = {name: i for i, name in enumerate(labels)}
    stripped = text.strip()
    if stripped in ("id", "()", ""):
        return Permutation.identity(n)
    if stripped.count("(") != stripped.count(")"):
        raise BadPermutation(f"unbalanced parentheses in {text!r}")
    images = list(range(n))
    seen: set[int] = set()
    rest = stripped
    while rest:
        rest = rest.lstrip()
        if not rest:
            break
        if not rest.startswith("("):
            raise BadPermutation(f"expected '(' in {text!r}")
        close = rest.find(")")
        if close < 0:
            raise BadPermutation(f"unbalanced parentheses in {text!r}")
        body = rest[1:close].replace(",", " ")
        rest = rest[close + 1:]
        names = body.split()
        if not names:
            continue
        ids = []
        for name in names:
            if name not in index:
                raise BadPermutation(f"unknown vertex name {name!r} in {text!r}")
            ids.append(index[name])
        for i in ids:
            if i in seen:
                raise BadPermutation(f"vertex {labels[i]!r} appears twice in {text!r}")
            seen.add(i)
        for pos, i in enumerate(ids):
            images[i] = ids[(pos + 1) % len(ids)]
    return Permutation(tuple(images))
