"""Plain SVG drawings of frameworks, with mirror overlays.

Spatial configurations are drawn with a fixed orthographic camera: the
scene is rotated 30 degrees about the vertical axis, then 20 degrees
about the horizontal axis, and depth is dropped. Coincident joints are
drawn as concentric circles with a multiplicity badge so collapsed
configurations stay readable.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnsupportedDim
from .groups import SymmetryGroup, fixed_subspace
from .rigidity import Framework

COINCIDENCE_TOL = 1e-8

_STYLE = (
    ".bar{stroke:#444;stroke-width:2;stroke-linecap:round}"
    ".joint{fill:#fff;stroke:#0a61c9;stroke-width:2}"
    ".badge{font:11px sans-serif;fill:#0a61c9}"
    ".label{font:11px sans-serif;fill:#333}"
    ".mirror{stroke:#c0392b;stroke-width:1.5;stroke-dasharray:6 4;fill:none}"
)


def _projection(dim: int) -> np.ndarray:
    if dim == 2:
        return np.eye(2)
    if dim != 3:
        raise UnsupportedDim(f"can only draw in dimension 2 or 3, got {dim}")
    az, el = math.radians(30.0), math.radians(20.0)
    rot_y = np.array([
        [math.cos(az), 0.0, math.sin(az)],
        [0.0, 1.0, 0.0],
        [-math.sin(az), 0.0, math.cos(az)],
    ])
    rot_x = np.array([
        [1.0, 0.0, 0.0],
        [0.0, math.cos(el), -math.sin(el)],
        [0.0, math.sin(el), math.cos(el)],
    ])
    return (rot_x @ rot_y)[:2]


def _coincidence_clusters(coords: np.ndarray, tol: float) -> list[list[int]]:
    """Joints closer than tol grouped together, clusters ordered by lowest member."""
    n = coords.shape[0]
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if np.max(np.abs(coords[i] - coords[j])) <= tol:
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [sorted(members) for _, members in sorted(groups.items())]


def _mirror_elements(group: SymmetryGroup):
    """Reflections whose fixed set is a hyperplane (a line in 2d, a plane in 3d)."""
    out = []
    for op in group.elements:
        if op.det > 0:
            continue
        space = fixed_subspace(op)
        if space.dim == op.dim - 1:
            out.append((op, space))
    return out


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_svg(
    framework: Framework,
    group: SymmetryGroup | None = None,
    width: int = 480,
    height: int = 480,
    margin: float = 40.0,
    label_joints: bool = False,
) -> str:
    """SVG text for a framework: bars, joints, badges, and mirror overlays.

    Every joint contributes one circle; coincident joints become
    concentric circles around one center plus a multiplicity badge.
    Mirror overlays are drawn when a group is supplied: dashed lines in
    the plane, dashed projected outlines of the plane in space.
    """
    coords = framework.coords
    proj = _projection(framework.dim)
    flat = coords @ proj.T

    # scene bounds include the origin whenever overlays are anchored there
    anchor = flat if group is None else np.vstack([flat, np.zeros((1, 2))])
    low = anchor.min(axis=0)
    high = anchor.max(axis=0)
    span = float(max(high[0] - low[0], high[1] - low[1], 1e-6))
    scale = (min(width, height) - 2 * margin) / span
    center = (low + high) / 2.0

    def place(point: np.ndarray) -> tuple[float, float]:
        x = (point[0] - center[0]) * scale + width / 2.0
        y = -(point[1] - center[1]) * scale + height / 2.0
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<style>{_STYLE}</style>",
    ]

    if group is not None:
        reach = span * 0.75
        for op, space in _mirror_elements(group):
            if framework.dim == 2:
                direction = space.basis[0]
                a = place(proj @ (reach * direction))
                b = place(proj @ (-reach * direction))
                parts.append(
                    f'<line class="mirror" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                    f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}"/>'
                )
            else:
                b1, b2 = space.basis
                points = []
                for step in range(33):
                    theta = 2.0 * math.pi * step / 32
                    spot = reach * (math.cos(theta) * b1 + math.sin(theta) * b2)
                    x, y = place(proj @ spot)
                    points.append(f"{_fmt(x)},{_fmt(y)}")
                parts.append(f'<polyline class="mirror" points="{" ".join(points)}"/>')

    for u, v in framework.graph.sorted_edges():
        a = place(flat[u])
        b = place(flat[v])
        parts.append(
            f'<line class="bar" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
            f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}"/>'
        )

    for cluster in _coincidence_clusters(coords, COINCIDENCE_TOL):
        x, y = place(flat[cluster[0]])
        for ring, _vertex in enumerate(cluster):
            radius = 5.0 + 4.0 * ring
            parts.append(f'<circle class="joint" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}"/>')
        outer = 5.0 + 4.0 * (len(cluster) - 1)
        if len(cluster) > 1:
            parts.append(
                f'<text class="badge" x="{_fmt(x + outer + 3)}" y="{_fmt(y - outer - 3)}">'
                f"×{len(cluster)}</text>"
            )
        if label_joints:
            names = " ".join(framework.graph.labels[i] for i in cluster)
            parts.append(
                f'<text class="label" x="{_fmt(x + outer + 3)}" y="{_fmt(y + outer + 11)}">{names}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
