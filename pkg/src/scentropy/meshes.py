"""Triangle meshes: OFF I/O, angle-deficit curvature, and the face complex.

The discrete Gaussian curvature at a vertex is its angle deficit: 2*pi minus
the incident face angles at an interior vertex, pi minus them on the
boundary.  Summed over a closed mesh the deficits equal 2*pi times the Euler
characteristic, which the tests use as an exact cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parsing import ParseError, content_lines, parse_floats, parse_ints
from .complexes import SimplicialComplex, VertexDistribution, build_complex, \
    uniform_distribution

__all__ = [
    "TriangleMesh",
    "CurvatureField",
    "parse_off",
    "format_off",
    "gaussian_curvature",
    "curvature_distribution",
    "mesh_complex",
    "export_face_weights",
]


class TriangleMesh:
    """Immutable triangle mesh with per-vertex boundary flags.

    Faces are integer triples into ``vertices``; a boundary vertex touches an
    edge used by exactly one face.
    """

    __slots__ = ("vertices", "faces", "boundary")

    def __init__(self, vertices, faces):
        verts = np.array(vertices, dtype=float)
        fcs = np.array(faces, dtype=np.intp)
        if verts.ndim != 2 or verts.shape[1] != 3 or verts.shape[0] < 1:
            raise ValueError("vertices must be a nonempty (V, 3) array")
        if not np.all(np.isfinite(verts)):
            raise ValueError("vertex coordinates must be finite")
        if fcs.ndim != 2 or fcs.shape[1] != 3 or fcs.shape[0] < 1:
            raise ValueError("faces must be a nonempty (F, 3) array")
        v = verts.shape[0]
        if fcs.min() < 0 or fcs.max() >= v:
            raise ValueError("face indices out of range")
        for k, f in enumerate(fcs):
            if len(set(f.tolist())) != 3:
                raise ValueError(f"face {k} repeats a vertex: {f.tolist()}")
        referenced = np.zeros(v, dtype=bool)
        referenced[fcs.ravel()] = True
        if not referenced.all():
            lonely = np.flatnonzero(~referenced).tolist()
            raise ValueError(f"vertices {lonely} belong to no face")

        edge_count: dict[tuple[int, int], int] = {}
        for f in fcs:
            for a, b in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                key = (int(min(a, b)), int(max(a, b)))
                edge_count[key] = edge_count.get(key, 0) + 1
        boundary = np.zeros(v, dtype=bool)
        for (a, b), cnt in edge_count.items():
            if cnt == 1:
                boundary[a] = boundary[b] = True

        verts.flags.writeable = False
        fcs.flags.writeable = False
        boundary.flags.writeable = False
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "faces", fcs)
        object.__setattr__(self, "boundary", boundary)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("TriangleMesh is immutable")

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_faces(self) -> int:
        return self.faces.shape[0]

    @property
    def n_edges(self) -> int:
        edges = set()
        for f in self.faces:
            for a, b in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                edges.add((int(min(a, b)), int(max(a, b))))
        return len(edges)

    @property
    def is_closed(self) -> bool:
        return not bool(self.boundary.any())

    def __repr__(self):
        return f"TriangleMesh(V={self.n_vertices}, F={self.n_faces})"


@dataclass(frozen=True)
class CurvatureField:
    """Per-vertex angle deficits in radians."""

    deficit: np.ndarray


def parse_off(text: str) -> TriangleMesh:
    """Parse OFF text: 'OFF', a 'V F E' counts line, V coordinate lines and
    F face lines of the form '3 i j k'."""
    lines = content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "empty OFF file") from None
    if header.strip() != "OFF":
        raise ParseError(line_no, f"expected 'OFF' header, got {header!r}")
    try:
        line_no, counts_line = next(lines)
    except StopIteration:
        raise ParseError(line_no, "missing counts line") from None
    counts = parse_ints(line_no, counts_line, "counts 'V F E'")
    if len(counts) != 3:
        raise ParseError(line_no, f"counts line must be 'V F E', got {counts_line!r}")
    n_vertices, n_faces, _ = counts
    if n_vertices < 1 or n_faces < 1:
        raise ParseError(line_no, "mesh needs at least one vertex and one face")

    vertices = []
    for _ in range(n_vertices):
        try:
            line_no, line = next(lines)
        except StopIteration:
            raise ParseError(line_no, f"expected {n_vertices} vertex lines") from None
        coords = parse_floats(line_no, line, "three coordinates")
        if len(coords) != 3:
            raise ParseError(line_no, f"expected 3 coordinates, got {len(coords)}")
        vertices.append(coords)

    faces = []
    for _ in range(n_faces):
        try:
            line_no, line = next(lines)
        except StopIteration:
            raise ParseError(line_no, f"expected {n_faces} face lines") from None
        row = parse_ints(line_no, line, "a face line '3 i j k'")
        if not row or row[0] != 3 or len(row) != 4:
            raise ParseError(line_no, f"only triangle faces are supported, got {line!r}")
        faces.append(row[1:])

    try:
        return TriangleMesh(vertices, faces)
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from exc


def format_off(mesh: TriangleMesh) -> str:
    lines = ["OFF", f"{mesh.n_vertices} {mesh.n_faces} {mesh.n_edges}"]
    lines.extend(" ".join(f"{x:.17g}" for x in row) for row in mesh.vertices)
    lines.extend("3 " + " ".join(str(i) for i in f) for f in mesh.faces)
    return "\n".join(lines) + "\n"


def gaussian_curvature(mesh: TriangleMesh) -> CurvatureField:
    """Angle deficits: 2*pi (interior) or pi (boundary) minus incident angles."""
    verts = mesh.vertices
    faces = mesh.faces
    angle_sum = np.zeros(mesh.n_vertices)
    corners = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    for at, nb1, nb2 in corners:
        u = verts[faces[:, nb1]] - verts[faces[:, at]]
        v = verts[faces[:, nb2]] - verts[faces[:, at]]
        nu = np.linalg.norm(u, axis=1)
        nv = np.linalg.norm(v, axis=1)
        area2 = np.linalg.norm(np.cross(u, v), axis=1)
        degenerate = area2 <= 1e-14 * np.maximum(1.0, nu * nv)
        if np.any(degenerate):
            bad = int(np.flatnonzero(degenerate)[0])
            raise ValueError(f"zero-area face {bad} in angle computation")
        cosang = np.clip(np.einsum("ij,ij->i", u, v) / (nu * nv), -1.0, 1.0)
        np.add.at(angle_sum, faces[:, at], np.arccos(cosang))
    flat_angle = np.where(mesh.boundary, np.pi, 2.0 * np.pi)
    deficit = flat_angle - angle_sum
    deficit.flags.writeable = False
    return CurvatureField(deficit=deficit)


def curvature_distribution(field: CurvatureField) -> tuple[VertexDistribution, bool]:
    """Vertex distribution proportional to |deficit|.

    Returns ``(distribution, used_fallback)``; a field with (numerically)
    zero total curvature falls back to uniform and flags it.
    """
    weights = np.abs(field.deficit)
    total = float(weights.sum())
    if total < 1e-12:
        return uniform_distribution(weights.size), True
    return VertexDistribution(weights), False


def mesh_complex(mesh: TriangleMesh) -> SimplicialComplex:
    """The triangles as maximal simplices over the mesh vertices."""
    seen: dict[frozenset[int], int] = {}
    for k, f in enumerate(mesh.faces):
        key = frozenset(int(i) for i in f)
        if key in seen:
            raise ValueError(f"faces {seen[key]} and {k} use the same vertices")
        seen[key] = k
    return build_complex(mesh.n_vertices,
                         [tuple(int(i) for i in f) for f in mesh.faces],
                         mode="strict")


def export_face_weights(mesh: TriangleMesh, q) -> str:
    """CSV of per-face weights plus a [0, 1] rescaling by the maximum."""
    arr = np.asarray(q, dtype=float)
    if arr.shape != (mesh.n_faces,):
        raise ValueError(f"expected {mesh.n_faces} weights, got shape {arr.shape}")
    top = float(arr.max())
    scaled = arr / top if top > 0 else np.zeros_like(arr)
    lines = ["face,q,q_scaled"]
    lines.extend(f"{i},{arr[i]:.9g},{scaled[i]:.9g}" for i in range(arr.size))
    return "\n".join(lines) + "\n"
