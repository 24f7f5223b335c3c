"""
Convex hulls in R^d with exact-sign predicates.

Hulls are built by randomized incremental insertion with a conflict graph (beneath-beyond).
Exact inputs are scaled to integers first, so that all orientation tests are integer determinants.
Facets lying in a common plane are merged into polytopal facets, and the full face lattice is derived
by intersecting facets. Point sets of lower affine rank are hulled inside their affine hull.

The faces that matter for Delaunay tessellations are the visible ones: faces having a support plane that strictly
separates the origin from the point set. Support planes of lower-dimensional faces are positive combinations of the
planes of the facets containing them, chosen so that the origin ends up strictly on the other side.

Partial UML class diagram:

```mermaid
classDiagram
    `nx.DiGraph` <|-- FaceLattice
    FaceLattice: faces(dim)
    FaceLattice: face_by_vertices(vertex_ids)
    FaceLattice: euler_characteristic()
    Hull --> FaceLattice: lattice
    Hull --> HullFacet: facets
    FaceLattice --> HullFace: nodes
    HullBuilder: seed
    HullBuilder: build(points)
```
"""
import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Annotated, Any, Iterable, Optional, Sequence

import networkx as nx

from hypertess import linalg
from hypertess.configuration import Configuration, configurable
from hypertess.linalg import Scalar
from hypertess.lorentz import DEFAULT_TOLERANCES, DegenerateError, DimensionError, DomainError, LorentzVec, Tolerances
from hypertess.models import AffinePlane

logger = logging.getLogger(__name__)

MAX_DIMENSION = 9

@dataclass(frozen = True)
class HullFacet:
    """
    A (merged, possibly non-simplicial) facet of a hull, with all points satisfying normal·x ≤ offset.
    """
    id: int
    vertex_ids: tuple[int, ...]
    outward_normal: LorentzVec
    offset: Scalar
    neighbors: tuple[int, ...]

    @property
    def plane(self) -> AffinePlane:
        return AffinePlane.from_euclidean(self.outward_normal, self.offset)

    @property
    def lorentz_normal(self) -> LorentzVec:
        return self.outward_normal.bar()

@dataclass(frozen = True)
class HullFace:
    """
    A face of a hull: its vertices, dimension, and a support plane normal·x = offset touching the hull exactly in the face.
    The whole polytope of a lower-dimensional hull is also a face; it has no support plane when the origin lies in its affine hull.
    """
    id: int
    dim: int
    vertex_ids: tuple[int, ...]
    normal: Optional[LorentzVec]
    offset: Optional[Scalar]
    visible: bool

    @property
    def support_plane(self) -> Optional[AffinePlane]:
        if self.normal is None or self.offset is None:
            return None
        return AffinePlane.from_euclidean(self.normal, self.offset)

class FaceLattice(nx.DiGraph):
    """
    The Hasse diagram of the faces of a polytope.
    Nodes are face ids with the `HullFace` stored in the node attribute "face"; edges go from a face to each of its facets.
    """

    def add_face(self, face: HullFace):
        self.add_node(face.id, face = face, dim = face.dim)

    def face(self, face_id: int) -> HullFace:
        return self.nodes[face_id]["face"]

    def faces(self, dim: Optional[int] = None) -> list[HullFace]:
        """
        Returns the faces, optionally only those of a given dimension, in id order.
        """
        return [self.nodes[i]["face"] for i in sorted(self.nodes) if dim is None or self.nodes[i]["dim"] == dim]

    def face_by_vertices(self, vertex_ids: Iterable[int]) -> Optional[HullFace]:
        key = tuple(sorted(vertex_ids))
        if not hasattr(self, "_by_vertices") or len(self._by_vertices) != self.number_of_nodes():
            self._by_vertices = {self.nodes[i]["face"].vertex_ids: i for i in self.nodes}
        i = self._by_vertices.get(key)
        return None if i is None else self.face(i)

    def children(self, face_id: int) -> list[int]:
        return sorted(self.successors(face_id))

    def parents(self, face_id: int) -> list[int]:
        return sorted(self.predecessors(face_id))

    def subfaces(self, face_id: int) -> set[int]:
        """
        Returns the ids of the face and all its faces.
        """
        return {face_id} | nx.descendants(self, face_id)

    @property
    def top_dim(self) -> int:
        return max((d for _, d in self.nodes(data = "dim")), default = -1)

    def euler_characteristic(self) -> int:
        """
        Alternating count of the faces below the top dimension, which is 1 + (-1)^(k-1) for the boundary of a k-polytope.
        """
        top = self.top_dim
        return sum((-1) ** d for _, d in self.nodes(data = "dim") if d < top)

@dataclass
class _Facet:
    vertices: tuple[int, ...]
    normal: list[Any]
    offset: Any

@configurable
class HullBuilder:
    """
    Builds convex hulls by randomized incremental insertion.
    """
    seed:            Annotated[int,   "Param", "seed of the randomized insertion order", "--seed"] = 0
    coplanar_angle:  Annotated[float, "Param", "float mode: facets whose normals differ by less than this angle (radians) are merged"] = 1e-9
    coplanar_offset: Annotated[float, "Param", "float mode: relative offset difference below which facets are merged"] = 1e-9

    def __init__(self, configuration: Optional[Configuration] = None, tol: Optional[Tolerances] = None):
        """
        Creates a hull builder.

        Args:
            configuration (Optional[Configuration]): the configuration to read. Defaults to the default configuration.
            tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        """
        (configuration or Configuration()).initialize(self)
        self.tol = tol if tol is not None else DEFAULT_TOLERANCES

    def build(self, points: Sequence[LorentzVec]) -> "Hull":
        """
        Computes the hull of a point list.

        Args:
            points (Sequence[LorentzVec]): the points, all of the same dimension.

        Returns:
            Hull: the hull, with vertex ids indexing the input list.
        """
        if not points:
            raise DegenerateError("fewer than 2 distinct points")
        d = len(points[0])
        if any(len(p) != d for p in points):
            raise DimensionError("points have different dimensions")
        if d > MAX_DIMENSION:
            raise DimensionError(f"dimension {d} exceeds the supported maximum {MAX_DIMENSION}")
        ids = self._deduplicate(points)
        if len(ids) < 2:
            raise DegenerateError("fewer than 2 distinct points")

        self.exact = all(points[i].is_exact for i in ids)
        if self.exact:
            scaled, scale = linalg.integerize([list(points[i]) for i in ids])
            self.coords = dict(zip(ids, scaled))
        else:
            scale = 1
            self.coords = {i: [float(a) for a in points[i]] for i in ids}
        self.scale_size = max(abs(float(a)) for c in self.coords.values() for a in c)

        base = self.coords[ids[0]]
        _, self.pivots = linalg.rref([[a - b for a, b in zip(self.coords[i], base)] for i in ids[1:]], self.tol.eps)
        m = len(self.pivots)
        origin_in_aff = linalg.rank([self.coords[i] for i in ids], self.tol.eps) == m
        self.proj = {i: [c[p] for p in self.pivots] for i, c in self.coords.items()}
        logger.debug("hulling %d points of affine rank %d in R^%d", len(ids), m, d)

        facets = self._incremental(ids, m)
        merged = self._merge(facets)
        return self._assemble(points, ids, m, d, scale, origin_in_aff, merged)

    def _deduplicate(self, points: Sequence[LorentzVec]) -> list[int]:
        ids: list[int] = []
        seen: set[tuple[Scalar, ...]] = set()
        for i, p in enumerate(points):
            if p.is_exact:
                if p.coords in seen:
                    logger.warning("removed duplicate point %d", i)
                    continue
                seen.add(p.coords)
            elif any(sum((float(a) - float(b)) ** 2 for a, b in zip(p, points[j])) < 1e-24 for j in ids):
                logger.warning("removed duplicate point %d", i)
                continue
            ids.append(i)
        return ids

    def _sign(self, value: Any) -> int:
        return linalg.sign(value, self.tol.eps * max(self.scale_size, 1.0) ** 2)

    def _above(self, f: _Facet, q: int) -> bool:
        return self._sign(sum(a * x for a, x in zip(f.normal, self.proj[q])) - f.offset) > 0

    def _make_facet(self, vertices: tuple[int, ...]) -> _Facet:
        p0 = self.proj[vertices[0]]
        normal = linalg.cofactor_normal([[a - b for a, b in zip(self.proj[v], p0)] for v in vertices[1:]])
        if self.exact:
            g = math.gcd(*[int(a) for a in normal])
            normal = [int(a) // g for a in normal]
        else:
            length = math.sqrt(sum(a * a for a in normal))
            normal = [a / length for a in normal]
        offset = sum(a * x for a, x in zip(normal, p0))
        # Orient outwards: the interior reference point satisfies normal·c < offset.
        if self._sign(sum(a * x for a, x in zip(normal, self.interior)) - self.interior_weight * offset) >= 0:
            normal, offset = [-a for a in normal], -offset
        return _Facet(tuple(sorted(vertices)), normal, offset)

    def _incremental(self, ids: list[int], m: int) -> list[_Facet]:
        order = list(ids)
        random.Random(self.seed).shuffle(order)
        simplex = [order[0]]
        for i in order[1:]:
            if len(simplex) == m + 1:
                break
            candidate = simplex + [i]
            p0 = self.proj[candidate[0]]
            if linalg.rank([[a - b for a, b in zip(self.proj[v], p0)] for v in candidate[1:]], self.tol.eps) == len(candidate) - 1:
                simplex = candidate
        # Interior reference: centroid of the initial simplex, kept as (sum, weight) to stay integral.
        self.interior = [sum(self.proj[v][k] for v in simplex) for k in range(m)]
        self.interior_weight = m + 1

        facets: dict[int, _Facet] = {}
        ridges: dict[frozenset[int], set[int]] = {}
        conflicts: dict[int, set[int]] = {}
        point_conflicts: dict[int, set[int]] = {i: set() for i in ids}
        next_id = itertools.count()

        def add(vertices: tuple[int, ...], candidates: Iterable[int]) -> None:
            f = self._make_facet(vertices)
            fid = next(next_id)
            facets[fid] = f
            for ridge in itertools.combinations(f.vertices, m - 1):
                ridges.setdefault(frozenset(ridge), set()).add(fid)
            conflicts[fid] = set()
            for q in candidates:
                if self._above(f, q):
                    conflicts[fid].add(q)
                    point_conflicts[q].add(fid)

        rest = [i for i in order if i not in simplex]
        for omit in simplex:
            add(tuple(v for v in simplex if v != omit), rest)

        for pid in rest:
            visible = point_conflicts.pop(pid)
            if not visible:
                continue
            horizon = []
            for fid in visible:
                for ridge in itertools.combinations(facets[fid].vertices, m - 1):
                    (other,) = ridges[frozenset(ridge)] - {fid}
                    if other not in visible:
                        horizon.append((ridge, fid, other))
            saved = {fid: conflicts[fid] for fid in visible}
            for fid in visible:
                for ridge in itertools.combinations(facets[fid].vertices, m - 1):
                    ridges[frozenset(ridge)].discard(fid)
                for q in conflicts.pop(fid):
                    if q in point_conflicts:
                        point_conflicts[q].discard(fid)
                del facets[fid]
            for ridge, fid, other in horizon:
                candidates = (saved[fid] | conflicts[other]) - {pid}
                add(ridge + (pid,), (q for q in candidates if q in point_conflicts))
        return list(facets.values())

    def _coplanar(self, f: _Facet, g: _Facet) -> bool:
        if self.exact:
            return all(sum(a * x for a, x in zip(g.normal, self.proj[v])) == g.offset for v in f.vertices)
        # Chord length of the unit normals; acos loses precision near 0.
        chord = math.sqrt(sum((a - b) ** 2 for a, b in zip(f.normal, g.normal)))
        if chord >= self.coplanar_angle:
            return False
        return abs(f.offset - g.offset) <= self.coplanar_offset * max(self.scale_size, 1.0)

    def _merge(self, facets: list[_Facet]) -> list[_Facet]:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(facets)))
        m = len(facets[0].vertices)
        by_ridge: dict[frozenset[int], list[int]] = {}
        for k, f in enumerate(facets):
            for ridge in itertools.combinations(f.vertices, m - 1):
                by_ridge.setdefault(frozenset(ridge), []).append(k)
        for pair in by_ridge.values():
            if len(pair) == 2 and self._coplanar(facets[pair[0]], facets[pair[1]]):
                graph.add_edge(*pair)
        merged = []
        for component in nx.connected_components(graph):
            first = facets[min(component)]
            vertices = tuple(sorted({v for k in component for v in facets[k].vertices}))
            merged.append(_Facet(vertices, first.normal, first.offset))
        if len(merged) < len(facets):
            logger.debug("merged %d coplanar facets into %d", len(facets), len(merged))
        return merged

    def _lift(self, normal: Sequence[Any], d: int) -> list[Any]:
        full: list[Any] = [0] * d
        for p, a in zip(self.pivots, normal):
            full[p] = a
        return full

    def _assemble(self, points: Sequence[LorentzVec], ids: list[int], m: int, d: int, scale: int, origin_in_aff: bool,
                  merged: list[_Facet]) -> "Hull":
        facet_sets = [frozenset(f.vertices) for f in merged]
        planes = {fs: f for fs, f in zip(facet_sets, merged)}
        vertices = frozenset().union(*facet_sets)
        children: dict[frozenset[int], list[frozenset[int]]] = {vertices: list(facet_sets)}
        layer = set(facet_sets)
        for _ in range(m - 1):
            below: set[frozenset[int]] = set()
            for G in layer:
                candidates = {G & F for F in facet_sets if G & F and G & F != G}
                maximal = [S for S in candidates if not any(S < T for T in candidates)]
                children[G] = maximal
                below.update(maximal)
            layer = below
        for G in layer:
            children.setdefault(G, [])
        dims = {vertices: m}
        for G, cs in sorted(children.items(), key = lambda kv: -len(kv[0])):
            for c in cs:
                dims[c] = dims[G] - 1

        # Support planes in scaled coordinates; offsets are divided by the scale at the end.
        top_normal: Optional[list[Any]] = None
        if not origin_in_aff:
            solution = linalg.solve([self.coords[i] for i in sorted(vertices)], [1] * len(vertices), self.tol.eps)
            assert solution is not None
            top_normal = [-a for a in solution]

        def support(face: frozenset[int]) -> tuple[Optional[list[Any]], Optional[Any], bool]:
            if face == vertices:
                if top_normal is None:
                    return None, None, False
                return top_normal, -1, True
            incident = [planes[F] for F in facet_sets if face <= F]
            weights = [1] * len(incident)
            if origin_in_aff:
                visible = [k for k, f in enumerate(incident) if self._sign(f.offset) < 0]
                if visible:
                    j = visible[0]
                    rest = sum(f.offset for k, f in enumerate(incident) if k != j)
                    ratio = (Fraction(rest) if self.exact else rest) / -incident[j].offset
                    weights[j] = max(1, math.floor(ratio) + 1)
            normal = self._lift([sum(w * f.normal[k] for w, f in zip(weights, incident)) for k in range(m)], d)
            offset = sum(w * f.offset for w, f in zip(weights, incident))
            if origin_in_aff:
                return normal, offset, self._sign(offset) < 0
            assert top_normal is not None
            t = Fraction(1, 2) / (abs(offset) + 1) if self.exact else 0.5 / (abs(offset) + 1)
            return [a + t * b for a, b in zip(top_normal, normal)], -1 + t * offset, True

        ordered = sorted(children, key = lambda G: (dims[G], tuple(sorted(G))))
        index = {G: k for k, G in enumerate(ordered)}
        lattice = FaceLattice()
        for G in ordered:
            normal, offset, visible = support(G)
            face = HullFace(index[G], dims[G], tuple(sorted(G)),
                            None if normal is None else LorentzVec(tuple(normal)),
                            None if offset is None else (Fraction(offset) / scale if self.exact else offset),
                            visible)
            lattice.add_face(face)
        for G, cs in children.items():
            for c in cs:
                lattice.add_edge(index[G], index[c])

        facets = []
        for k, F in enumerate(sorted(facet_sets, key = lambda F: tuple(sorted(F)))):
            f = planes[F]
            ridge_ids = lattice.children(index[F])
            neighbours = sorted({index[P] for r in ridge_ids for P in facet_sets if index[P] in lattice.parents(r)} - {index[F]})
            facets.append(HullFacet(index[F], tuple(sorted(F)), LorentzVec(tuple(self._lift(f.normal, d))),
                                    Fraction(f.offset) / scale if self.exact else f.offset, tuple(neighbours)))
        return Hull(list(points), tuple(sorted(vertices)), d, m, origin_in_aff, facets, lattice)

@dataclass
class Hull:
    """
    The convex hull of a point list.

    Attributes:
        points: the input points.
        vertex_ids: indices of the hull vertices.
        dim: the ambient dimension d.
        rank: the affine rank of the points, i.e. the dimension of the hull.
        origin_in_affine_hull: True if the origin lies in the affine hull of the points.
        facets: the merged facets, identified by their face ids.
        lattice: the face lattice, including the whole polytope as its top face.
    """
    points: list[LorentzVec]
    vertex_ids: tuple[int, ...]
    dim: int
    rank: int
    origin_in_affine_hull: bool
    facets: list[HullFacet]
    lattice: FaceLattice

    def faces(self, dim: Optional[int] = None) -> list[HullFace]:
        return self.lattice.faces(dim)

    def face(self, vertex_ids: Iterable[int]) -> Optional[HullFace]:
        return self.lattice.face_by_vertices(vertex_ids)

    def is_visible(self, face: HullFace) -> bool:
        return face.visible

def build_hull(points: Sequence[LorentzVec], seed: Optional[int] = None, tol: Optional[Tolerances] = None,
               configuration: Optional[Configuration] = None) -> Hull:
    """
    Computes the convex hull of a point list with its face lattice.

    Args:
        points (Sequence[LorentzVec]): at least two distinct points of R^d.
        seed (Optional[int]): seed of the insertion order, overriding the configuration. Defaults to None.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.

    Returns:
        Hull: the hull.
    """
    builder = HullBuilder(configuration, tol)
    if seed is not None:
        builder.seed = seed
    return builder.build(points)

def visible_faces(hull: Hull) -> list[HullFace]:
    """
    Returns the faces of a hull that have a support plane strictly separating the origin from the points,
    which are exactly the faces of the visible facets.

    Args:
        hull (Hull): the hull.

    Returns:
        list[HullFace]: the visible faces in id order.
    """
    if hull.origin_in_affine_hull and not any(f.visible for f in hull.lattice.faces(hull.rank - 1)):
        raise DomainError("the origin lies inside the hull")
    return [f for f in hull.faces() if f.visible]

def face_support_plane(hull: Hull, face: HullFace) -> AffinePlane:
    """
    Returns a support plane of a visible face in Lorentz form {x∘u = c}. It contains exactly the face's vertices
    among the points, has the remaining points strictly on one side and the origin strictly on the other.

    Args:
        hull (Hull): the hull.
        face (HullFace): a visible face of the hull.

    Returns:
        AffinePlane: the plane.
    """
    plane = face.support_plane
    if not face.visible or plane is None:
        raise DomainError(f"face {face.vertex_ids} is not visible")
    return plane
