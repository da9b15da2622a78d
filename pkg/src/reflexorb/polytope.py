"""Lattice polytopes with exact arithmetic.

A polytope is built from integer vertex lists via an incremental convex hull
over the rationals. Facets carry primitive integer normals in the convention

    <x, normal> >= -offset    for every x in the polytope,

so a reflexive polytope is one whose facet offsets are all 1 (equivalently
the origin is the unique interior lattice point and the polar dual is again
a lattice polytope).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .errors import NotFullDimensionalError, NotReflexiveError, VertexFileError
from .linalg import rational_kernel_basis, rational_rank

Vector = tuple[int, ...]


def _primitive(vec) -> Vector:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    denoms = [Fraction(x).denominator for x in vec]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(Fraction(x) * scale) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    return rational_rank(diffs)


@dataclass(frozen=True)
class FacetInequality:
    normal: Vector
    offset: int

    def value(self, point) -> int:
        return sum(a * b for a, b in zip(point, self.normal)) + self.offset


@dataclass(frozen=True)
class Face:
    """A face of a polytope, identified by its vertex id set."""

    dim: int
    vertex_ids: tuple[int, ...]
    active_facets: tuple[int, ...]
    _polytope: "LatticePolytope" = field(compare=False, repr=False)

    def vertices(self) -> tuple[Vector, ...]:
        return tuple(self._polytope.vertices[i] for i in self.vertex_ids)

    def lattice_points(self) -> tuple[Vector, ...]:
        return self._polytope._face_points(self)[0]

    def interior_lattice_points(self) -> tuple[Vector, ...]:
        return self._polytope._face_points(self)[1]


class LatticePolytope:
    """Full-dimensional lattice polytope with exact facet data."""

    def __init__(self, vertices, facets, *, _skip_checks=False):
        self.vertices: tuple[Vector, ...] = tuple(tuple(v) for v in vertices)
        self.facets: tuple[FacetInequality, ...] = tuple(facets)
        self.n: int = len(self.vertices[0]) if self.vertices else 0
        self._faces_by_dim: dict[int, tuple[Face, ...]] | None = None
        self._points_cache: dict[int, tuple[Vector, ...]] = {}
        self._face_points_cache: dict[tuple[int, ...], tuple[tuple[Vector, ...], tuple[Vector, ...]]] = {}

    @classmethod
    def from_vertices(cls, points) -> "LatticePolytope":
        """Convex hull of integer points. Duplicates are dropped; points that
        end up inside the hull are not vertices. Raises
        NotFullDimensionalError when the points do not span."""
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise NotFullDimensionalError("no points given")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of mixed dimension")
        if _affine_rank(pts) < n:
            raise NotFullDimensionalError(
                f"points span an affine subspace of dimension {_affine_rank(pts)} < {n}"
            )
        verts, ineqs = _convex_hull(pts, n)
        facets = tuple(FacetInequality(normal, offset) for normal, offset in sorted(ineqs))
        return cls(verts, facets)

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self.n == other.n
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.n, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(n={self.n}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    # -- membership and points ------------------------------------------------

    def contains(self, point, k: int = 1) -> bool:
        """Membership in the k-fold dilate."""
        return all(
            sum(a * b for a, b in zip(point, f.normal)) >= -k * f.offset
            for f in self.facets
        )

    def lattice_points(self, k: int = 1) -> tuple[Vector, ...]:
        """All lattice points of the k-fold dilate, in lexicographic order."""
        if k < 1:
            raise ValueError("dilate factor must be >= 1")
        if k not in self._points_cache:
            lo = [min(v[i] for v in self.vertices) * k for i in range(self.n)]
            hi = [max(v[i] for v in self.vertices) * k for i in range(self.n)]
            pts = tuple(
                p
                for p in product(*(range(lo[i], hi[i] + 1) for i in range(self.n)))
                if self.contains(p, k)
            )
            self._points_cache[k] = pts
        return self._points_cache[k]

    def interior_lattice_points(self) -> tuple[Vector, ...]:
        """Lattice points saturating no facet inequality."""
        return tuple(
            p
            for p in self.lattice_points()
            if all(f.value(p) > 0 for f in self.facets)
        )

    # -- reflexivity and duality ----------------------------------------------

    def is_reflexive(self) -> bool:
        return all(f.offset == 1 for f in self.facets)

    def polar_dual(self) -> "LatticePolytope":
        """Polar dual polytope; vertices are the facet normals."""
        if not self.is_reflexive():
            raise NotReflexiveError(
                "polar dual is a lattice polytope only for reflexive input"
            )
        return LatticePolytope.from_vertices([f.normal for f in self.facets])

    # -- face lattice ----------------------------------------------------------

    def faces(self, dim: int | None = None):
        """Faces of the polytope: all proper faces plus the polytope itself.

        With dim given, returns the tuple of faces of that dimension; without,
        a dict mapping dimension to face tuples.
        """
        if self._faces_by_dim is None:
            self._faces_by_dim = self._build_face_lattice()
        if dim is None:
            return self._faces_by_dim
        return self._faces_by_dim.get(dim, ())

    def proper_faces(self):
        out = []
        for d in sorted(self.faces()):
            if d < self.n:
                out.extend(self.faces(d))
        return out

    def face_by_vertex_ids(self, vertex_ids) -> Face:
        key = tuple(sorted(vertex_ids))
        for f in self.faces(_affine_rank([self.vertices[i] for i in key])):
            if f.vertex_ids == key:
                return f
        raise KeyError(f"no face with vertex ids {key}")

    def _build_face_lattice(self):
        nverts = len(self.vertices)
        incidence = []
        for f in self.facets:
            incidence.append(
                frozenset(
                    i for i, v in enumerate(self.vertices) if f.value(v) == 0
                )
            )
        full = frozenset(range(nverts))
        seen = {full}
        queue = [full]
        while queue:
            cur = queue.pop()
            for fs in incidence:
                g = cur & fs
                if g and g not in seen:
                    seen.add(g)
                    queue.append(g)
        by_dim: dict[int, list[Face]] = {}
        for vs in seen:
            ids = tuple(sorted(vs))
            pts = [self.vertices[i] for i in ids]
            d = _affine_rank(pts)
            active = tuple(
                i for i, fs in enumerate(incidence) if vs <= fs
            )
            face = Face(d, ids, active, self)
            by_dim.setdefault(d, []).append(face)
        return {
            d: tuple(sorted(faces, key=lambda f: f.vertex_ids))
            for d, faces in sorted(by_dim.items())
        }

    def _face_points(self, face: Face):
        key = face.vertex_ids
        if key not in self._face_points_cache:
            want = frozenset(face.active_facets)
            members = []
            interior = []
            for p in self.lattice_points():
                active = frozenset(
                    i for i, f in enumerate(self.facets) if f.value(p) == 0
                )
                if want <= active:
                    members.append(p)
                    if want == active:
                        interior.append(p)
            self._face_points_cache[key] = (tuple(members), tuple(interior))
        return self._face_points_cache[key]


def _hyperplane_through(pts, n):
    """Primitive integer (normal, rhs) with <normal, p> == rhs for all pts.

    The points must be n affinely independent points in dimension n.
    """
    if n == 1:
        return (1,), pts[0][0]
    base = pts[0]
    rows = [[p[i] - base[i] for i in range(n)] for p in pts[1:]]
    basis = rational_kernel_basis(rows)
    assert len(basis) == 1, "facet points are not affinely independent"
    normal = _primitive(basis[0])
    rhs = sum(a * b for a, b in zip(normal, base))
    return normal, rhs


def _convex_hull(pts, n):
    """Incremental convex hull with a triangulated boundary.

    Returns (vertices, inequalities); inequalities are (normal, offset) pairs
    in the <x, normal> >= -offset convention with primitive integer normals.
    """
    # affinely independent seed simplex
    seed = [0]
    for i in range(1, len(pts)):
        if _affine_rank([pts[j] for j in seed + [i]]) > len(seed) - 1:
            seed.append(i)
            if len(seed) == n + 1:
                break
    assert len(seed) == n + 1
    center = tuple(
        Fraction(sum(pts[i][j] for i in seed), n + 1) for j in range(n)
    )

    def oriented(ids):
        normal, rhs = _hyperplane_through([pts[i] for i in ids], n)
        cval = sum(a * b for a, b in zip(normal, center))
        assert cval != rhs, "degenerate facet through the interior point"
        if cval > rhs:
            normal = tuple(-x for x in normal)
            rhs = -rhs
        # outward form <normal, x> <= rhs with interior strictly below
        return normal, rhs

    simplices: dict[frozenset[int], tuple[Vector, int]] = {}
    for drop in seed:
        key = frozenset(i for i in seed if i != drop)
        simplices[key] = oriented(sorted(key))

    for i in range(len(pts)):
        if i in seed:
            continue
        p = pts[i]
        visible = [
            key
            for key, (normal, rhs) in simplices.items()
            if sum(a * b for a, b in zip(normal, p)) > rhs
        ]
        if not visible:
            continue
        ridge_count: dict[frozenset[int], int] = {}
        for key in visible:
            for drop in key:
                ridge = key - {drop}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for key in visible:
            del simplices[key]
        for ridge, cnt in ridge_count.items():
            if cnt == 1:
                new_key = ridge | {i}
                simplices[new_key] = oriented(sorted(new_key))

    # verify every input point lies beneath every facet
    for key, (normal, rhs) in simplices.items():
        for p in pts:
            assert sum(a * b for a, b in zip(normal, p)) <= rhs
    inequalities = sorted(
        {(tuple(-x for x in normal), rhs) for normal, rhs in simplices.values()}
    )
    vertices = []
    for p in pts:
        active = [
            normal
            for normal, offset in inequalities
            if sum(a * b for a, b in zip(normal, p)) == -offset
        ]
        if len(active) >= n and rational_rank(list(map(list, active))) == n:
            vertices.append(p)
    return tuple(vertices), tuple(inequalities)


# -- reflexive pairs -----------------------------------------------------------


class ReflexivePair:
    """A reflexive polytope together with its polar dual and face pairing.

    delta_polar lives in the fan lattice (its vertices are the rays of the
    normal fan); delta is the polar, whose lattice points index anticanonical
    monomials.
    """

    def __init__(self, delta_polar: LatticePolytope):
        if not delta_polar.is_reflexive():
            raise NotReflexiveError("pair requires a reflexive polytope")
        self.delta_polar = delta_polar
        self.delta = delta_polar.polar_dual()
        self.n = delta_polar.n
        check = self.delta.polar_dual()
        assert check.vertices == delta_polar.vertices, "polar duality failed to close"
        self._dual_cache: dict[tuple[int, ...], Face] = {}
        self._dual_cache_rev: dict[tuple[int, ...], Face] = {}

    @classmethod
    def from_polar(cls, delta_polar: LatticePolytope) -> "ReflexivePair":
        return cls(delta_polar)

    @classmethod
    def from_delta(cls, delta: LatticePolytope) -> "ReflexivePair":
        if not delta.is_reflexive():
            raise NotReflexiveError("pair requires a reflexive polytope")
        return cls(delta.polar_dual())

    def swapped(self) -> "ReflexivePair":
        """The pair with the two polytopes' roles exchanged."""
        return ReflexivePair(self.delta)

    def dual_face(self, face: Face) -> Face:
        """The face of delta paired with a proper face of delta_polar."""
        return self._pair(face, self.delta_polar, self.delta, self._dual_cache)

    def dual_face_of_delta(self, face: Face) -> Face:
        """The face of delta_polar paired with a proper face of delta."""
        return self._pair(face, self.delta, self.delta_polar, self._dual_cache_rev)

    def _pair(self, face, src, dst, cache):
        if face.dim >= self.n:
            raise ValueError("only proper faces have duals")
        if face.vertex_ids in cache:
            return cache[face.vertex_ids]
        src_verts = face.vertices()
        ids = tuple(
            i
            for i, w in enumerate(dst.vertices)
            if all(sum(a * b for a, b in zip(w, v)) == -1 for v in src_verts)
        )
        dual = dst.face_by_vertex_ids(ids)
        assert face.dim + dual.dim == self.n - 1, "face pairing dimension mismatch"
        cache[face.vertex_ids] = dual
        return dual


# -- vertex matrix text format --------------------------------------------------


def parse_vertex_matrix(text: str) -> list[Vector]:
    """Parse the vertex matrix text format.

    First significant line is `V n` (vertex count, dimension); the next V
    significant lines hold n integers each. `#` starts a comment. Raises
    VertexFileError with a 1-based line number on malformed input.
    """
    header: tuple[int, int] | None = None
    rows: list[Vector] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise VertexFileError("header must be `V n`", lineno)
            try:
                count, dim = int(parts[0]), int(parts[1])
            except ValueError:
                raise VertexFileError("header must hold two integers", lineno) from None
            if count < 1 or dim < 1:
                raise VertexFileError("header counts must be positive", lineno)
            header = (count, dim)
            continue
        if len(rows) == header[0]:
            raise VertexFileError(
                f"expected {header[0]} vertex rows, found more", lineno
            )
        if len(parts) != header[1]:
            raise VertexFileError(
                f"expected {header[1]} coordinates, got {len(parts)}", lineno
            )
        try:
            rows.append(tuple(int(x) for x in parts))
        except ValueError:
            raise VertexFileError("coordinates must be integers", lineno) from None
    if header is None:
        raise VertexFileError("empty input", last_line or 1)
    if len(rows) != header[0]:
        raise VertexFileError(
            f"expected {header[0]} vertex rows, got {len(rows)}", last_line
        )
    return rows


def format_vertex_matrix(vertices) -> str:
    verts = [tuple(v) for v in vertices]
    if not verts:
        raise ValueError("no vertices to format")
    lines = [f"{len(verts)} {len(verts[0])}"]
    lines.extend(" ".join(str(x) for x in v) for v in verts)
    return "\n".join(lines) + "\n"
