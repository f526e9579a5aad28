"""Orthogonal symmetry operations and the Schoenflies point-group catalog.

Orientation conventions, fixed for the whole library:
  * 2d: rotations are counterclockwise; the default mirror line is the
    x-axis (override with mirror_angle, the angle of the mirror line).
  * 3d: the principal rotation axis is z; the default Cs mirror is the
    xz-plane (normal along y); the first secondary half-turn axis of the
    dihedral families is x; the diagonal mirror of Dmd bisects adjacent
    secondary axes (line angle pi/(2m), override with mirror_angle).
  * Cubic and icosahedral groups are axis-aligned: 4-fold (or 2-fold)
    axes along the coordinate axes, 3-fold axes along body diagonals,
    icosahedral 5-fold axis through (0, 1, golden_ratio).

Group elements are canonicalized by snapping entries that are within
1e-12 of 0, +-0.5, +-1, and deduplicated at 1e-9 max-entry distance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import atan2, cos, degrees, pi, sin, sqrt

import numpy as np

from ._numeric import kernel_basis, snap_matrix
from .errors import (
    BadParam,
    DimensionMismatch,
    NonOrthogonalGenerator,
    NotClosedWithinBound,
    OrderBoundExceeded,
    UnknownName,
    UnsupportedDim,
)

MAX_GROUP_ORDER = 200
MATCH_TOL = 1e-9


class OrthogonalOp:
    """A d x d orthogonal matrix with a printable label."""

    __slots__ = ("matrix", "label")

    def __init__(self, matrix, label: str = ""):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NonOrthogonalGenerator(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] not in (2, 3):
            raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {m.shape[0]}")
        if np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) > 1e-9:
            raise NonOrthogonalGenerator("matrix is not orthogonal within 1e-9")
        if abs(abs(float(np.linalg.det(m))) - 1.0) > 1e-9:
            raise NonOrthogonalGenerator("matrix determinant is not +-1 within 1e-9")
        m = snap_matrix(m)
        m.setflags(write=False)
        self.matrix = m
        self.label = label

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def det(self) -> float:
        return float(np.sign(np.linalg.det(self.matrix)))

    def is_identity(self, tol: float = MATCH_TOL) -> bool:
        return bool(np.max(np.abs(self.matrix - np.eye(self.dim))) <= tol)

    def relabeled(self, label: str) -> "OrthogonalOp":
        return OrthogonalOp(self.matrix, label)

    def __repr__(self) -> str:
        return f"OrthogonalOp({self.label or 'unnamed'}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class LinearSubspace:
    """A linear subspace given by an orthonormal basis, one vector per row."""

    ambient_dim: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def project(self, vec: np.ndarray) -> np.ndarray:
        v = np.asarray(vec, dtype=float)
        if self.dim == 0:
            return np.zeros_like(v)
        return self.basis.T @ (self.basis @ v)

    def contains(self, vec: np.ndarray, tol: float = 1e-9) -> bool:
        v = np.asarray(vec, dtype=float)
        scale = max(1.0, float(np.linalg.norm(v)))
        return bool(np.linalg.norm(v - self.project(v)) <= tol * scale)


@dataclass(frozen=True, eq=False)
class SymmetryGroup:
    """A finite orthogonal group; element 0 is always the identity."""

    dim: int
    elements: tuple[OrthogonalOp, ...]
    name: str = ""
    _stack: np.ndarray = field(init=False, repr=False)
    _by_label: dict = field(init=False, repr=False)
    _mul_cache: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("a group needs at least the identity element")
        if not self.elements[0].is_identity():
            raise ValueError("element 0 must be the identity")
        stack = np.stack([op.matrix for op in self.elements])
        object.__setattr__(self, "_stack", stack)
        object.__setattr__(self, "_by_label", {op.label: i for i, op in enumerate(self.elements)})
        object.__setattr__(self, "_mul_cache", {})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(op.label for op in self.elements)

    def matrices(self) -> np.ndarray:
        return self._stack

    def index_of(self, matrix: np.ndarray, tol: float = MATCH_TOL) -> int:
        diffs = np.max(np.abs(self._stack - np.asarray(matrix, dtype=float)), axis=(1, 2))
        idx = int(np.argmin(diffs))
        if diffs[idx] > tol:
            raise UnknownName(f"matrix is not an element of {self.name or 'group'} (best match off by {diffs[idx]:.2e})")
        return idx

    def label_index(self, label: str) -> int:
        if label not in self._by_label:
            raise UnknownName(f"no element labeled {label!r} in {self.name or 'group'}")
        return self._by_label[label]

    def multiply(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._mul_cache:
            self._mul_cache[key] = self.index_of(self._stack[i] @ self._stack[j])
        return self._mul_cache[key]

    def inverse_index(self, i: int) -> int:
        return self.index_of(self._stack[i].T)

    def __repr__(self) -> str:
        return f"SymmetryGroup({self.name or 'unnamed'}, dim={self.dim}, order={len(self)})"


# ---------------------------------------------------------------------------
# elementary matrix builders


def rot2(theta: float) -> np.ndarray:
    c, s = cos(theta), sin(theta)
    return np.array([[c, -s], [s, c]])


def mirror2(line_angle: float) -> np.ndarray:
    """Reflection across the line through the origin at the given angle."""
    c, s = cos(2.0 * line_angle), sin(2.0 * line_angle)
    return np.array([[c, s], [s, -c]])


def rot3(axis, theta: float) -> np.ndarray:
    u = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(u)
    if norm == 0:
        raise BadParam("rotation axis must be nonzero")
    u = u / norm
    k = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return np.eye(3) + sin(theta) * k + (1.0 - cos(theta)) * (k @ k)


def mirror3(normal) -> np.ndarray:
    n = np.asarray(normal, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise BadParam("mirror normal must be nonzero")
    n = n / norm
    return np.eye(3) - 2.0 * np.outer(n, n)


def element_order(op: OrthogonalOp, bound: int = MAX_GROUP_ORDER) -> int:
    """Least k >= 1 with op^k = identity, within the bound."""
    m = op.matrix
    power = m.copy()
    eye = np.eye(op.dim)
    for k in range(1, bound + 1):
        if np.max(np.abs(power - eye)) <= MATCH_TOL:
            return k
        power = power @ m
    raise OrderBoundExceeded(f"no power up to {bound} returns to the identity")


def fixed_subspace(op: OrthogonalOp, rtol: float = 1e-9) -> LinearSubspace:
    """Pointwise-fixed subspace of an operation: the kernel of (M - I)."""
    return LinearSubspace(op.dim, kernel_basis(op.matrix - np.eye(op.dim), rtol))


# ---------------------------------------------------------------------------
# labeling by geometric classification


def _angle_fraction(angle: float, max_den: int = 60) -> tuple[int, int] | None:
    """Express angle as 2*pi*k/m if possible, returning reduced (k, m)."""
    x = (angle / (2.0 * pi)) % 1.0
    frac = Fraction(x).limit_denominator(max_den)
    if abs(float(frac) - x) > 1e-9:
        return None
    if frac.denominator == 1:
        return (0, 1)
    return (frac.numerator, frac.denominator)


def _fmt_deg(angle: float, period: float) -> str:
    d = degrees(angle % period)
    rounded = round(d)
    if abs(d - rounded) <= 1e-6:
        return str(int(rounded) % int(round(degrees(period))))
    return f"{d:.4f}"


def _signed_3d_angle(m: np.ndarray, angle: float) -> float:
    """Angle in (0, 2*pi) about the canonically oriented rotation axis.

    The trace only gives the angle up to sign; the antisymmetric part is
    2 sin(angle) times the axis, so orienting the axis to have positive
    first significant coordinate fixes the sense.
    """
    v = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    for c in v:
        if abs(c) > 1e-9:
            return angle if c > 0 else 2.0 * pi - angle
    return angle


def _base_label(m: np.ndarray, dim: int) -> str:
    eye = np.eye(dim)
    if np.max(np.abs(m - eye)) <= MATCH_TOL:
        return "Id"
    if dim == 2:
        if np.linalg.det(m) > 0:
            angle = atan2(m[1, 0], m[0, 0]) % (2.0 * pi)
            frac = _angle_fraction(angle)
            if frac is None or frac == (0, 1):
                return f"R({_fmt_deg(angle, 2.0 * pi)})"
            k, order = frac
            return f"C{order}" if k == 1 else f"C{order}^{k}"
        line_angle = (atan2(m[1, 0], m[0, 0]) / 2.0) % pi
        return f"s({_fmt_deg(line_angle, pi)})"
    # dim == 3
    if np.max(np.abs(m + eye)) <= MATCH_TOL:
        return "i"
    if np.linalg.det(m) > 0:
        cos_t = min(1.0, max(-1.0, (np.trace(m) - 1.0) / 2.0))
        angle = _signed_3d_angle(m, float(np.arccos(cos_t)))
        frac = _angle_fraction(angle)
        if frac is None or frac == (0, 1):
            return f"R({_fmt_deg(angle, 2.0 * pi)})"
        k, order = frac
        return f"C{order}" if k == 1 else f"C{order}^{k}"
    if np.max(np.abs(m - m.T)) <= MATCH_TOL and abs(np.trace(m) - 1.0) <= MATCH_TOL:
        normal = kernel_basis(m + eye, 1e-9)
        n = normal[0] if normal.shape[0] else np.array([0.0, 0.0, 1.0])
        if abs(abs(n[2]) - 1.0) <= 1e-9:
            return "sh"
        if abs(n[2]) <= 1e-9:
            line_angle = atan2(-n[0], n[1]) % pi
            return f"sv({_fmt_deg(line_angle, pi)})"
        return "s"
    cos_t = min(1.0, max(-1.0, (np.trace(m) + 1.0) / 2.0))
    angle = _signed_3d_angle(m, float(np.arccos(cos_t)))
    frac = _angle_fraction(angle)
    if frac is None or frac == (0, 1):
        return f"S({_fmt_deg(angle, 2.0 * pi)})"
    k, order = frac
    return f"S{order}" if k == 1 else f"S{order}^{k}"


def _assign_labels(mats: list[np.ndarray], dim: int, overrides: dict[int, str] | None = None) -> list[str]:
    overrides = overrides or {}
    base = [overrides.get(i) or _base_label(m, dim) for i, m in enumerate(mats)]
    counts: dict[str, int] = {}
    for b in base:
        counts[b] = counts.get(b, 0) + 1
    seen: dict[str, int] = {}
    out = []
    for b in base:
        if counts[b] == 1:
            out.append(b)
        else:
            seen[b] = seen.get(b, 0) + 1
            out.append(f"{b}#{seen[b]}")
    return out


def _wrap(mats: list[np.ndarray], dim: int, name: str, overrides: dict[int, str] | None = None) -> SymmetryGroup:
    labels = _assign_labels(mats, dim, overrides)
    ops = tuple(OrthogonalOp(m, lab) for m, lab in zip(mats, labels))
    return SymmetryGroup(dim=dim, elements=ops, name=name)


# ---------------------------------------------------------------------------
# closure of generated groups


def _find(mats: list[np.ndarray], m: np.ndarray, tol: float = MATCH_TOL) -> int | None:
    for i, e in enumerate(mats):
        if np.max(np.abs(e - m)) <= tol:
            return i
    return None


def close_group(generators, max_order: int = MAX_GROUP_ORDER, name: str = "closure") -> SymmetryGroup:
    """Close a generator list under products, identity first, no duplicates.

    Breadth-first closure with snapping after every product; aborts with
    NotClosedWithinBound once more than max_order elements appear.
    """
    gens = [g.matrix if isinstance(g, OrthogonalOp) else np.asarray(g, dtype=float) for g in generators]
    if not gens:
        raise BadParam("need at least one generator")
    dims = {g.shape for g in gens}
    if len(dims) != 1:
        raise DimensionMismatch(f"generators of mixed shapes {sorted(dims)}")
    checked = [OrthogonalOp(g).matrix for g in gens]
    dim = checked[0].shape[0]
    elems: list[np.ndarray] = [np.eye(dim)]
    frontier = list(checked)
    while frontier:
        g = frontier.pop(0)
        if _find(elems, g) is not None:
            continue
        elems.append(g)
        if len(elems) > max_order:
            raise NotClosedWithinBound(f"closure exceeded {max_order} elements")
        for e in elems:
            frontier.append(snap_matrix(g @ e))
            frontier.append(snap_matrix(e @ g))
    return _wrap(elems, dim, name)


# ---------------------------------------------------------------------------
# Schoenflies catalog

_GOLDEN = (1.0 + sqrt(5.0)) / 2.0

_POLYHEDRAL_GENS = {
    "T": lambda: [np.diag([-1.0, -1.0, 1.0]), np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])],
    "Td": lambda: _POLYHEDRAL_GENS["T"]() + [np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])],
    "Th": lambda: _POLYHEDRAL_GENS["T"]() + [-np.eye(3)],
    "O": lambda: [np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
                  np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])],
    "Oh": lambda: _POLYHEDRAL_GENS["O"]() + [-np.eye(3)],
    "I": lambda: [rot3((0.0, 1.0, _GOLDEN), 2.0 * pi / 5.0), np.diag([-1.0, -1.0, 1.0])],
    "Ih": lambda: _POLYHEDRAL_GENS["I"]() + [-np.eye(3)],
}

_LITERALS_3D = {"C1", "Cs", "Ci", "T", "Td", "Th", "O", "Oh", "I", "Ih"}
_TEMPLATES = {"Cm": "C", "Cmv": "Cv", "Cmh": "Ch", "Dm": "D", "Dmh": "Dh", "Dmd": "Dd", "S2m": "S"}
_NUMERIC_RE = re.compile(r"^([CDS])(\d+)(v|h|d)?$")


def _parse_name(name: str, dim: int, m: int | None) -> tuple[str, int]:
    """Resolve a Schoenflies name to (family, m). family uses C/Cv/Ch/D/Dh/Dd/S codes."""
    if dim not in (2, 3):
        raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {dim}")
    literals = {"C1", "Cs"} if dim == 2 else _LITERALS_3D
    if name in literals:
        return (name, 0)
    if name in _TEMPLATES:
        if m is None:
            raise BadParam(f"{name} requires the parameter m")
        family, order = _TEMPLATES[name], int(m)
        if name == "S2m":
            order = 2 * order
    else:
        match = _NUMERIC_RE.match(name)
        if match is None:
            raise UnknownName(f"unknown Schoenflies name {name!r} in dimension {dim}")
        family = match.group(1) + (match.group(3) or "")
        order = int(match.group(2))
        if m is not None and m != order:
            raise BadParam(f"parameter m={m} contradicts name {name!r}")
    allowed = {"C", "Cv"} if dim == 2 else {"C", "Cv", "Ch", "D", "Dh", "Dd", "S"}
    if family not in allowed:
        raise UnknownName(f"unknown Schoenflies name {name!r} in dimension {dim}")
    if family == "S":
        if order < 4 or order % 2 != 0:
            raise BadParam(f"improper rotation groups need an even order >= 4, got S{order}")
    elif order < 2:
        raise BadParam(f"{name!r} needs m >= 2 (use C1 or Cs for the trivial cases)")
    return (family, order)


def _family_size(family: str, m: int) -> int:
    return {"C1": 1, "Cs": 2, "Ci": 2, "T": 12, "Td": 24, "Th": 24, "O": 24, "Oh": 48,
            "I": 60, "Ih": 120, "C": m, "Cv": 2 * m, "Ch": 2 * m, "D": 2 * m,
            "Dh": 4 * m, "Dd": 4 * m, "S": m}[family]


def _frame(axis, secondary) -> np.ndarray:
    w = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(w)
    if norm == 0:
        raise BadParam("axis must be nonzero")
    w = w / norm
    if secondary is None:
        cand = np.eye(3)[np.argmin(np.abs(w))]
        u = cand - np.dot(cand, w) * w
    else:
        u = np.asarray(secondary, dtype=float)
        if np.linalg.norm(u) == 0:
            raise BadParam("secondary_axis must be nonzero")
        if abs(np.dot(u / np.linalg.norm(u), w)) > 1e-9:
            raise BadParam("secondary_axis must be perpendicular to axis")
    u = u / np.linalg.norm(u)
    v = np.cross(w, u)
    return np.column_stack([u, v, w])


def schoenflies_group(
    name: str,
    dim: int,
    *,
    m: int | None = None,
    mirror_angle: float | None = None,
    axis=None,
    secondary_axis=None,
    mirror_normal=None,
) -> SymmetryGroup:
    """Build a catalog point group by Schoenflies name.

    Names embed the rotation order ("C3v") or use template form ("Cmv"
    with m=3). See the module docstring for orientation conventions and
    which parameters each family accepts.
    """
    family, order = _parse_name(name, dim, m)
    size = _family_size(family, order)
    if size > MAX_GROUP_ORDER:
        raise BadParam(f"group order {size} exceeds the bound {MAX_GROUP_ORDER}")
    display = name
    if name in _TEMPLATES:
        display = {"C": f"C{order}", "Cv": f"C{order}v", "Ch": f"C{order}h", "D": f"D{order}",
                   "Dh": f"D{order}h", "Dd": f"D{order}d", "S": f"S{order}"}[_TEMPLATES[name]]

    def reject(params: dict) -> None:
        given = [k for k, v in params.items() if v is not None]
        if given:
            raise BadParam(f"parameters {given} do not apply to {display} in dimension {dim}")

    if dim == 2:
        reject({"axis": axis, "secondary_axis": secondary_axis, "mirror_normal": mirror_normal})
        theta = 0.0 if mirror_angle is None else float(mirror_angle)
        if family == "C1":
            reject({"mirror_angle": mirror_angle})
            return _wrap([np.eye(2)], 2, display)
        if family == "Cs":
            return _wrap([np.eye(2), mirror2(theta)], 2, display, overrides={1: "s"})
        if family == "C":
            reject({"mirror_angle": mirror_angle})
            return _wrap([rot2(2.0 * pi * k / order) for k in range(order)], 2, display)
        # Cv: rotations then mirrors, mirror lines spaced pi/m starting at theta
        mats = [rot2(2.0 * pi * k / order) for k in range(order)]
        mats += [mirror2(theta + pi * k / order) for k in range(order)]
        return _wrap(mats, 2, display)

    # dim == 3
    if family in _POLYHEDRAL_GENS:
        reject({"mirror_angle": mirror_angle, "axis": axis,
                "secondary_axis": secondary_axis, "mirror_normal": mirror_normal})
        group = close_group(_POLYHEDRAL_GENS[family](), max_order=MAX_GROUP_ORDER, name=display)
        return group
    if family == "C1":
        reject({"mirror_angle": mirror_angle, "axis": axis,
                "secondary_axis": secondary_axis, "mirror_normal": mirror_normal})
        return _wrap([np.eye(3)], 3, display)
    if family == "Cs":
        reject({"mirror_angle": mirror_angle, "axis": axis, "secondary_axis": secondary_axis})
        normal = (0.0, 1.0, 0.0) if mirror_normal is None else mirror_normal
        return _wrap([np.eye(3), mirror3(normal)], 3, display, overrides={1: "s"})
    if family == "Ci":
        reject({"mirror_angle": mirror_angle, "axis": axis,
                "secondary_axis": secondary_axis, "mirror_normal": mirror_normal})
        return _wrap([np.eye(3), -np.eye(3)], 3, display)

    reject({"mirror_normal": mirror_normal})
    if family in ("C", "Ch", "S") and secondary_axis is not None:
        raise BadParam(f"secondary_axis does not apply to {display}")
    if family in ("C", "Ch", "D", "Dh", "S") and mirror_angle is not None:
        raise BadParam(f"mirror_angle does not apply to {display}")

    ez = np.array([0.0, 0.0, 1.0])
    sh = np.diag([1.0, 1.0, -1.0])
    rots = [rot3(ez, 2.0 * pi * k / order) for k in range(order)]
    if family == "C":
        mats = rots
    elif family == "Cv":
        theta = 0.0 if mirror_angle is None else float(mirror_angle)
        planes = [mirror3((-sin(theta + pi * k / order), cos(theta + pi * k / order), 0.0)) for k in range(order)]
        mats = rots + planes
    elif family == "Ch":
        mats = rots + [sh @ r for r in rots]
    elif family == "S":
        gen = sh @ rot3(ez, 2.0 * pi / order)
        mats = [np.eye(3)]
        for _ in range(order - 1):
            mats.append(snap_matrix(mats[-1] @ gen))
    else:
        half_turns = [rot3((cos(pi * k / order), sin(pi * k / order), 0.0), pi) for k in range(order)]
        dn = rots + half_turns
        if family == "D":
            mats = dn
        elif family == "Dh":
            mats = dn + [sh @ g for g in dn]
        else:  # Dd
            theta = pi / (2.0 * order) if mirror_angle is None else float(mirror_angle)
            sd = mirror3((-sin(theta), cos(theta), 0.0))
            mats = dn + [sd @ g for g in dn]
    mats = [snap_matrix(g) for g in mats]
    if axis is not None or secondary_axis is not None:
        q = _frame(ez if axis is None else axis, secondary_axis)
        mats = [snap_matrix(q @ g @ q.T) for g in mats]
    return _wrap(mats, 3, display)


def validate_group(group: SymmetryGroup, ortho_tol: float = 1e-12, match_tol: float = MATCH_TOL) -> None:
    """Check the group invariants; raises ValueError describing a violation.

    Checked: identity first, per-entry orthogonality and unit determinant
    within ortho_tol, pairwise-distinct elements, closure under products
    and inverses, unique labels.
    """
    stack = group.matrices()
    count, dim = stack.shape[0], group.dim
    eye = np.eye(dim)
    if np.max(np.abs(stack[0] - eye)) > match_tol:
        raise ValueError("element 0 is not the identity")
    for i, op in enumerate(group.elements):
        m = op.matrix
        if np.max(np.abs(m.T @ m - eye)) > ortho_tol:
            raise ValueError(f"element {i} ({op.label}) fails orthogonality at {ortho_tol}")
        if abs(abs(np.linalg.det(m)) - 1.0) > ortho_tol * 10:
            raise ValueError(f"element {i} ({op.label}) has non-unit determinant")
    for i in range(count):
        for j in range(i + 1, count):
            if np.max(np.abs(stack[i] - stack[j])) <= match_tol:
                raise ValueError(f"elements {i} and {j} coincide")
    for i in range(count):
        try:
            group.inverse_index(i)
        except UnknownName:
            raise ValueError(f"inverse of element {i} is missing") from None
        for j in range(count):
            try:
                group.multiply(i, j)
            except UnknownName:
                raise ValueError(f"product of elements {i} and {j} is missing") from None
    if len(set(group.labels)) != count:
        raise ValueError("element labels are not unique")
