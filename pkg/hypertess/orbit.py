"""
Truncated orbits of discrete groups of isometries of H² and the invariance diagnostics run on their tessellations.

Groups are given by generators, either as 2×2 matrices of determinant 1 acting on the upper half-plane or directly as
3×3 matrices of SO⁺(1,2). A 2×2 matrix m acts on the symmetric matrices X = [[x0 + x1, x2], [x2, x0 - x1]] by
X ↦ m X mᵀ, which preserves det X = -x∘x, so rational generators give rational orbit points.
The tessellation of a word ball only approximates the invariant tessellation of the full orbit; statistics are taken
over interior cells, whose vertices all have words some margin shorter than the truncation length.

Partial UML class diagram:

```mermaid
classDiagram
    OrbitSet --> GroupElement: elements
    OrbitSet --> HPoint: points
    OrbitExperiment --> RunResult: runs
    RunResult --> OrbitSet: orbit
    RunResult --> Tessellation: tessellation
    RunResult --> InvarianceReport: invariance
    RunResult --> CuspDiagnostic: cusp
    OrbitExperiment: max_word_length
    OrbitExperiment: interior_margin
```
"""
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Iterable, Optional, Sequence, Union

import networkx as nx
import pandas as pd

from hypertess import linalg
from hypertess.configuration import Configuration, configurable
from hypertess.datacollection import TableCollector
from hypertess.delaunay import DelaunayCell, Tessellation, delaunay_tessellation
from hypertess.linalg import Scalar
from hypertess.lorentz import DEFAULT_TOLERANCES, CausalType, DegenerateError, DimensionError, DomainError, LorentzVec, Tolerances, minkowski
from hypertess.models import AffinePlane, HPoint, Model, ModelPoint, lift

logger = logging.getLogger(__name__)

Matrix3 = tuple[tuple[Scalar, ...], ...]

_J = (-1, 1, 1)

def _matmul(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(3)), 0 * a[0][0]) for j in range(3)) for i in range(3))

def _identity(exact: bool = True) -> Matrix3:
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3))

def _invert_word(word: str) -> str:
    return word[::-1].swapcase()

@dataclass(frozen = True)
class GroupElement:
    """
    An element of SO⁺(1,2) with the word in the generators that produced it.
    Generator k is written as the k-th lower case letter and its inverse as the upper case letter.

    Attributes:
        matrix: the 3×3 matrix acting on column vectors.
        word: the generator word, empty for the identity.
        source: the 2×2 matrix the element was computed from, if any.
    """
    matrix: Matrix3
    word: str = ""
    source: Optional[tuple[tuple[Scalar, ...], ...]] = None

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Any]], word: str = "") -> "GroupElement":
        """
        Creates an element from a 3×3 matrix, checking that it lies in SO⁺(1,2).
        """
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise DimensionError("expected a 3×3 matrix")
        matrix = tuple(linalg.coerce(r) for r in rows)
        if not linalg.is_exact(a for r in matrix for a in r):
            matrix = tuple(tuple(float(a) for a in r) for r in matrix)
        element = cls(matrix, word)
        if not element.preserves_form(1e-9) or element.matrix[0][0] <= 0 or linalg.sign(linalg.determinant(matrix) - 1, 1e-9) != 0:
            raise DomainError(f"{rows} is not in SO⁺(1,2)")
        return element

    @property
    def is_exact(self) -> bool:
        return linalg.is_exact(a for r in self.matrix for a in r)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(_matmul(self.matrix, other.matrix), self.word + other.word)

    def inverse(self) -> "GroupElement":
        """
        Returns J Mᵀ J, the inverse of a matrix preserving the form with Gram matrix J = diag(-1, 1, 1).
        """
        m = self.matrix
        return GroupElement(tuple(tuple(_J[i] * m[j][i] * _J[j] for j in range(3)) for i in range(3)), _invert_word(self.word))

    def apply(self, v: LorentzVec) -> LorentzVec:
        if v.dim != 2:
            raise DimensionError(f"elements act on R^3, not R^{len(v)}")
        return LorentzVec(tuple(sum((a * b for a, b in zip(row, v)), 0 * v[0]) for row in self.matrix))

    def apply_point(self, p: HPoint) -> HPoint:
        return HPoint(self.apply(p.vec))

    def trace(self) -> Scalar:
        return sum((self.matrix[i][i] for i in range(3)), 0 * self.matrix[0][0])

    def is_identity(self) -> bool:
        return all(linalg.sign(self.matrix[i][j] - (1 if i == j else 0), 1e-12) == 0 for i in range(3) for j in range(3))

    def is_parabolic(self) -> bool:
        """
        Returns True for elements of trace 3 other than the identity, which fix exactly one light-like direction.
        """
        return linalg.sign(self.trace() - 3, 1e-9) == 0 and not self.is_identity()

    def preserves_form(self, eps: float = 0.0) -> bool:
        """
        Returns True if Mᵀ J M = J, exactly for exact matrices.
        """
        m = self.matrix
        for i in range(3):
            for j in range(3):
                value = sum((m[k][i] * _J[k] * m[k][j] for k in range(3)), 0 * m[0][0])
                if linalg.sign(value - (_J[i] if i == j else 0), eps) != 0:
                    return False
        return True

    def key(self) -> tuple[Scalar, ...]:
        if self.is_exact:
            return tuple(a for r in self.matrix for a in r)
        return tuple(round(float(a), 9) for r in self.matrix for a in r)

def sl2_to_so21(m: Sequence[Sequence[Any]], word: str = "") -> GroupElement:
    """
    Maps a 2×2 matrix of determinant 1 to the element of SO⁺(1,2) acting the same way on the upper half-plane.
    The columns of the image are the coordinates of m E mᵀ for the basis matrices E = I, diag(1, -1) and [[0, 1], [1, 0]].

    Args:
        m (Sequence[Sequence[Any]]): the matrix [[a, b], [c, d]].
        word (str, optional): the word to attach to the element. Defaults to "".

    Returns:
        GroupElement: the image, exact for rational m; m and -m have the same image.
    """
    if len(m) != 2 or any(len(r) != 2 for r in m):
        raise DimensionError("expected a 2×2 matrix")
    (a, b), (c, d) = (linalg.coerce(r) for r in m)
    if linalg.sign(a * d - b * c - 1, 1e-12) != 0:
        raise DomainError(f"{m} does not have determinant 1")

    def image(p: Scalar, q: Scalar, r: Scalar) -> tuple[Scalar, Scalar, Scalar]:
        # m [[p, q], [q, r]] mᵀ in the coordinates (x0, x1, x2)
        y00 = a * a * p + 2 * a * b * q + b * b * r
        y01 = a * c * p + (a * d + b * c) * q + b * d * r
        y11 = c * c * p + 2 * c * d * q + d * d * r
        return (y00 + y11) / 2, (y00 - y11) / 2, y01

    one, zero = (Fraction(1), Fraction(0)) if linalg.is_exact_value(a) else (1.0, 0.0)
    columns = [image(one, zero, one), image(one, zero, -one), image(zero, one, zero)]
    matrix = tuple(tuple(columns[j][i] for j in range(3)) for i in range(3))
    return GroupElement(matrix, word, ((a, b), (c, d)))

def _letters(gens: Sequence[GroupElement]) -> list[GroupElement]:
    letters = []
    for k, g in enumerate(gens):
        name = chr(ord("a") + k)
        letters.append(GroupElement(g.matrix, name, g.source))
        letters.append(GroupElement(g.inverse().matrix, name.upper()))
    return letters

def word_ball(gens: Sequence[GroupElement], L: int) -> list[GroupElement]:
    """
    Enumerates the distinct elements given by reduced words of length at most L, in breadth first order.

    Args:
        gens (Sequence[GroupElement]): the generators.
        L (int): the maximal word length.

    Returns:
        list[GroupElement]: the elements, each with its shortest word, starting with the identity.
    """
    if L < 0:
        raise DomainError(f"word length must be nonnegative, got {L}")
    exact = all(g.is_exact for g in gens)
    identity = GroupElement(_identity(exact))
    letters = _letters(gens)
    elements = [identity]
    seen = {identity.key()}
    layer = [identity]
    for _ in range(L):
        next_layer = []
        for element in layer:
            for letter in letters:
                if element.word and element.word[-1] == _invert_word(letter.word):
                    continue
                product = element @ letter
                if product.key() not in seen:
                    seen.add(product.key())
                    next_layer.append(product)
        elements.extend(next_layer)
        layer = next_layer
    return elements

@dataclass
class OrbitSet:
    """
    The points g·b for the elements g of a word ball and the base points b, without repetitions.

    Attributes:
        base_points: the base points.
        elements: the word ball.
        points: the distinct orbit points, in order of first appearance.
        provenance: (base index, word) of each point, with a shortest word.
        max_word_length: the truncation length L.
    """
    base_points: list[HPoint]
    elements: list[GroupElement]
    points: list[HPoint] = field(default_factory = list)
    provenance: list[tuple[int, str]] = field(default_factory = list)
    max_word_length: int = 0

    def __post_init__(self):
        self._index = {_point_key(p.vec): i for i, p in enumerate(self.points)}

    def add(self, point: HPoint, base: int, word: str) -> None:
        key = _point_key(point.vec)
        if key not in self._index:
            self._index[key] = len(self.points)
            self.points.append(point)
            self.provenance.append((base, word))

    def index_of(self, v: LorentzVec) -> Optional[int]:
        return self._index.get(_point_key(v))

    def word_length(self, point_id: int) -> int:
        return len(self.provenance[point_id][1])

def _point_key(v: LorentzVec) -> tuple[Scalar, ...]:
    if v.is_exact:
        return v.coords
    return tuple(round(float(a), 9) + 0.0 for a in v.coords)

def orbit_ball(gens: Sequence[GroupElement], bases: Sequence[HPoint], L: int) -> OrbitSet:
    """
    Applies every element of the word ball of length L to every base point.

    Args:
        gens (Sequence[GroupElement]): the generators.
        bases (Sequence[HPoint]): the base points.
        L (int): the word length.

    Returns:
        OrbitSet: the distinct orbit points with their provenance.
    """
    elements = word_ball(gens, L)
    orbit = OrbitSet(list(bases), elements, max_word_length = L)
    for element in elements:
        for b, base in enumerate(bases):
            orbit.add(element.apply_point(base), b, element.word)
    logger.debug("orbit ball of length %d: %d elements, %d points", L, len(elements), len(orbit.points))
    return orbit

def parabolic_fixed_directions(elements: Iterable[GroupElement]) -> list[tuple[str, LorentzVec]]:
    """
    Returns the light-like directions fixed by the parabolic elements, one entry per direction.

    Args:
        elements (Iterable[GroupElement]): the elements to inspect, e.g. a word ball.

    Returns:
        list[tuple[str, LorentzVec]]: (word of the first element found, future light-like fixed vector scaled to x0 = 1).
    """
    result: list[tuple[str, LorentzVec]] = []
    seen: set[tuple[Scalar, ...]] = set()
    for g in elements:
        if not g.is_parabolic():
            continue
        rows = [[g.matrix[i][j] - (1 if i == j else 0) for j in range(3)] for i in range(3)]
        kernel = linalg.nullspace(rows, 3, 1e-9)
        if len(kernel) != 1:
            continue
        v = LorentzVec(tuple(kernel[0]))
        v = v / v[0]
        key = _point_key(v)
        if key not in seen:
            seen.add(key)
            result.append((g.word, v))
    return result

def _cell_image(g: GroupElement, cell: DelaunayCell, orbit: OrbitSet) -> Optional[tuple[int, ...]]:
    ids = []
    for v in cell.vertex_ids:
        i = orbit.index_of(g.apply(orbit.points[v].vec))
        if i is None:
            return None
        ids.append(i)
    return tuple(sorted(ids))

@dataclass
class InvarianceReport:
    """
    Statistics of the generator action on the interior cells of a truncated orbit's tessellation.

    Attributes:
        max_word_length: the truncation length L.
        interior_cells: number of interior cells per dimension.
        orbit_counts: number of orbits of interior cells per dimension under the generators.
        frontier_cells: number of cells with a vertex of maximal word length.
        broken_images: images of interior cells under a generator that have interior vertices but are not cells.
        time_like_fraction: fraction of interior top cells whose circumsphere plane has a time-like parallel subspace.
    """
    max_word_length: int
    interior_cells: dict[int, int] = field(default_factory = dict)
    orbit_counts: dict[int, int] = field(default_factory = dict)
    frontier_cells: int = 0
    broken_images: list[tuple[int, str]] = field(default_factory = list)
    time_like_fraction: float = 0.0

    def to_dataframe(self) -> pd.DataFrame:
        collector = TableCollector({"invariance": ["max_word_length", "dim", "interior_cells", "orbits"]})
        for dim in sorted(self.interior_cells):
            collector.add_row("invariance", max_word_length = self.max_word_length, dim = dim,
                              interior_cells = self.interior_cells[dim], orbits = self.orbit_counts.get(dim, 0))
        return collector.get_table_dataframe("invariance")

def _cell_plane(cell: DelaunayCell) -> Optional[AffinePlane]:
    return cell.circumsphere.plane if cell.circumsphere is not None else cell.support_plane

def invariance_report(t: Tessellation, orbit: OrbitSet, gens: Sequence[GroupElement], margin: int = 1) -> InvarianceReport:
    """
    Groups the interior cells into orbits under the generators.
    A cell is interior if all of its vertices have words of length at most L - margin.

    Args:
        t (Tessellation): the tessellation of orbit.points.
        orbit (OrbitSet): the truncated orbit.
        gens (Sequence[GroupElement]): the generators.
        margin (int, optional): the interior margin. Defaults to 1.

    Returns:
        InvarianceReport: the statistics.
    """
    L = orbit.max_word_length
    report = InvarianceReport(L)
    limit = L - margin

    def interior(ids: Iterable[int]) -> bool:
        return all(orbit.word_length(v) <= limit for v in ids)

    cells = [c for c in t.cells() if interior(c.vertex_ids)]
    report.frontier_cells = sum(1 for c in t.cells() if any(orbit.word_length(v) == L for v in c.vertex_ids))
    if report.frontier_cells:
        logger.warning("%d cells touch the truncation frontier at word length %d and are excluded", report.frontier_cells, L)
    graph = nx.Graph()
    graph.add_nodes_from(c.id for c in cells)
    letters = _letters(gens)
    for c in cells:
        for g in letters:
            image = _cell_image(g, c, orbit)
            if image is None or not interior(image):
                continue
            target = t.cell_by_vertices(image)
            if target is None:
                report.broken_images.append((c.id, g.word))
            else:
                graph.add_edge(c.id, target.id)
    for c in cells:
        report.interior_cells[c.dim] = report.interior_cells.get(c.dim, 0) + 1
    for component in nx.connected_components(graph):
        dim = t.cell(min(component)).dim
        report.orbit_counts[dim] = report.orbit_counts.get(dim, 0) + 1

    top = [c for c in cells if c.dim == t.top_dim]
    planes = [p for p in (_cell_plane(c) for c in top) if p is not None]
    if planes:
        report.time_like_fraction = sum(1 for p in planes if p.parallel_type == CausalType.TIME_LIKE) / len(planes)
    return report

@dataclass
class CuspDiagnostic:
    """
    The Lorentz norms of the top cells' circumsphere normals, scaled so that the planes read {x∘u = -1}.
    Horospherical cells have u∘u = 0; cells approaching a cusp have u∘u tending to 0.

    Attributes:
        max_word_length: the truncation length of the tessellation.
        norms: (cell id, vertex ids, u∘u, Euclidean unit normal) per top cell not through the origin.
        candidates: for each cusp direction, (cell id, u∘u) of the top cell whose normal points closest to it.
    """
    max_word_length: int
    norms: list[tuple[int, tuple[int, ...], float, tuple[float, ...]]] = field(default_factory = list)
    candidates: list[tuple[int, float]] = field(default_factory = list)

def cusp_cell_diagnostic(t: Tessellation, directions: Sequence[LorentzVec] = (), max_word_length: int = 0) -> CuspDiagnostic:
    """
    Computes the normalized Lorentz norm of every top cell's plane and picks, for each cusp direction, the cell whose
    normal is closest to it in angle.

    Args:
        t (Tessellation): the tessellation.
        directions (Sequence[LorentzVec], optional): light-like cusp directions. Defaults to none.
        max_word_length (int, optional): the truncation length, for reporting. Defaults to 0.

    Returns:
        CuspDiagnostic: the diagnostic.
    """
    diagnostic = CuspDiagnostic(max_word_length)
    for cell in t.cells(t.top_dim):
        plane = _cell_plane(cell)
        if plane is None or linalg.sign(plane.c) == 0:
            continue
        u = plane.u / -plane.c
        size = math.sqrt(float(u.euclidean_norm_squared()))
        diagnostic.norms.append((cell.id, cell.vertex_ids, float(minkowski(u, u)), tuple(float(a) / size for a in u)))
    for p in directions:
        pf = [float(a) for a in p]
        size = math.sqrt(sum(a * a for a in pf))
        if not diagnostic.norms:
            continue
        best = max(diagnostic.norms, key = lambda row: abs(sum(a * b for a, b in zip(row[3], pf))) / size)
        diagnostic.candidates.append((best[0], best[2]))
    return diagnostic

@dataclass
class CuspTrend:
    """
    The cusp candidates of several truncation lengths, with a monotonicity verdict per cusp direction.
    """
    rows: list[tuple[int, int, int, float]]
    monotone: list[bool]

    def to_dataframe(self) -> pd.DataFrame:
        collector = TableCollector({"cusp": ["direction", "max_word_length", "cell", "norm"]})
        for direction, L, cell, norm in self.rows:
            collector.add_row("cusp", direction = direction, max_word_length = L, cell = cell, norm = norm)
        return collector.get_table_dataframe("cusp")

def cusp_trend(diagnostics: Sequence[CuspDiagnostic]) -> CuspTrend:
    """
    Collects the candidates of diagnostics ordered by truncation length and decides for each direction whether |u∘u|
    strictly decreases with the length.
    """
    ordered = sorted(diagnostics, key = lambda d: d.max_word_length)
    count = min((len(d.candidates) for d in ordered), default = 0)
    rows = []
    monotone = []
    for k in range(count):
        norms = [abs(d.candidates[k][1]) for d in ordered]
        rows.extend((k, d.max_word_length, d.candidates[k][0], d.candidates[k][1]) for d in ordered)
        monotone.append(all(a > b for a, b in zip(norms, norms[1:])))
    return CuspTrend(rows, monotone)

def bad_example_points(r_inf: Scalar, N: int) -> list[HPoint]:
    """
    Returns a locally finite point set of H² whose Delaunay triangles accumulate at a face carried by a time-like plane.
    In the upper half-plane, p₀ = i and p_{±n} = ±x_n + i/(n + 1) lie on the circle through i of radius r_n = r_inf + 1/n
    centered on the imaginary axis.

    Args:
        r_inf (Scalar): the limiting radius, greater than 1.
        N (int): the number of points on each side.

    Returns:
        list[HPoint]: the 2N + 1 float points p₀, p₁, p₋₁, p₂, p₋₂, ...
    """
    if r_inf <= 1:
        raise DomainError(f"the limiting radius must exceed 1, got {r_inf}")
    if N < 0:
        raise DomainError(f"the point count must be nonnegative, got {N}")
    r_inf = float(r_inf)
    points = [lift(ModelPoint(Model.UPPER_HALF, (0.0, 1.0)))]
    for n in range(1, N + 1):
        r = r_inf + 1 / n
        c = 1 - r
        y = 1 / (n + 1)
        x = math.sqrt(r * r - (y - c) ** 2)
        points.append(lift(ModelPoint(Model.UPPER_HALF, (x, y))))
        points.append(lift(ModelPoint(Model.UPPER_HALF, (-x, y))))
    return points

def limit_plane_defect(r_inf: Scalar) -> float:
    """
    The normalized Lorentz norm u∘u / |u|² of the plane carrying the circle of radius r_inf through i centered on the
    imaginary axis, whose normal is u = (1 - r_inf, -r_inf, 0).
    """
    r = float(r_inf)
    return (2 * r - 1) / ((1 - r) ** 2 + r * r)

@dataclass
class BadExampleReport:
    """
    The triangles (p₀, p_n, p_{n+1}) and their mirror images in the tessellation of a bad example truncation.

    Attributes:
        rows: (n, triangle present, mirror present, normalized defect u∘u / |u|² of the triangle's plane or None).
        limit_defect: the normalized defect of the limiting plane, positive since its normal is space-like.
        monotone: whether the defects of the present triangles approach the limit monotonically.
    """
    rows: list[tuple[int, bool, bool, Optional[float]]]
    limit_defect: float
    monotone: bool

    def to_dataframe(self) -> pd.DataFrame:
        collector = TableCollector({"bad_example": ["n", "triangle", "mirror", "defect"]})
        for n, triangle, mirror, defect in self.rows:
            collector.add_row("bad_example", n = n, triangle = triangle, mirror = mirror, defect = defect)
        return collector.get_table_dataframe("bad_example")

def bad_example_report(r_inf: Scalar, N: int, tol: Optional[Tolerances] = None) -> BadExampleReport:
    """
    Tessellates the bad example truncation and reports its predicted triangles.

    Args:
        r_inf (Scalar): the limiting radius, greater than 1.
        N (int): the number of points on each side.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        BadExampleReport: the report.
    """
    t = delaunay_tessellation(bad_example_points(r_inf, N), tol = tol)
    rows = []
    for n in range(1, N):
        cell = t.cell_by_vertices((0, 2 * n - 1, 2 * n + 1))
        mirror = t.cell_by_vertices((0, 2 * n, 2 * n + 2))
        defect = None
        if cell is not None and cell.circumsphere is not None:
            u = cell.circumsphere.plane.u
            defect = float(minkowski(u, u)) / float(u.euclidean_norm_squared())
        rows.append((n, cell is not None, mirror is not None, defect))
    limit = limit_plane_defect(r_inf)
    gaps = [abs(d - limit) for _, _, _, d in rows if d is not None]
    return BadExampleReport(rows, limit, all(a >= b for a, b in zip(gaps, gaps[1:])))

@dataclass
class GroupFile:
    """
    A group description: generators (2×2 of determinant 1 or 3×3 in SO⁺(1,2)), base points on the hyperboloid, and an
    optional truncation length.
    """
    generators: list[GroupElement]
    bases: list[HPoint]
    max_word_length: Optional[int] = None

    def to_json(self) -> str:
        data: dict[str, Any] = {
            "generators": [[[linalg.format_scalar(a) for a in row] for row in (g.source or g.matrix)] for g in self.generators],
            "bases": [[linalg.format_scalar(a) for a in b.coords] for b in self.bases],
        }
        if self.max_word_length is not None:
            data["max_word_length"] = self.max_word_length
        return json.dumps(data, indent = 2)

def load_group_file(source: Union[str, Path], tol: Optional[Tolerances] = None) -> GroupFile:
    """
    Reads a group file, given as a path or as the JSON text itself.
    Entries may be integers, decimals or "p/q" strings; they are read exactly unless the tolerances ask for floats.

    Args:
        source (Union[str, Path]): the path or JSON text.
        tol (Optional[Tolerances]): selects exact or float parsing. Defaults to DEFAULT_TOLERANCES.

    Returns:
        GroupFile: the group.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    text = source.read_text() if isinstance(source, Path) else source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DomainError(f"group file is not valid JSON: {e}") from None
    if not isinstance(data, dict) or "generators" not in data:
        raise DomainError("group file needs a 'generators' list")
    generators = []
    for k, rows in enumerate(data["generators"]):
        matrix = [[linalg.parse_scalar(a, tol.exact) for a in row] for row in rows]
        word = chr(ord("a") + k)
        if len(matrix) == 2:
            generators.append(sl2_to_so21(matrix, word))
        else:
            generators.append(GroupElement.from_matrix(matrix, word))
    bases = [HPoint(LorentzVec(tuple(linalg.parse_scalar(a, tol.exact) for a in b)))
             for b in data.get("bases", [[1, 0, 0]])]
    L = data.get("max_word_length")
    return GroupFile(generators, bases, None if L is None else int(L))

@dataclass
class RunResult:
    """
    The pipeline results of one truncation length.
    """
    max_word_length: int
    orbit: OrbitSet
    tessellation: Tessellation
    invariance: InvarianceReport
    cusp: CuspDiagnostic

@configurable
class OrbitExperiment:
    """
    Runs the orbit pipeline for a range of truncation lengths: orbit ball, tessellation, invariance report and cusp diagnostic.
    """
    max_word_length: Annotated[int, "Param", "largest word length of the orbit truncation", "--max-word-length"] = 3
    interior_margin: Annotated[int, "Param", "cells with all vertex words at most this much shorter than the truncation are interior"] = 1

    def __init__(self, configuration: Optional[Configuration] = None, tol: Optional[Tolerances] = None):
        """
        Creates an experiment.

        Args:
            configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.
            tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        """
        self.configuration = configuration or Configuration()
        self.configuration.initialize(self)
        self.tol = tol if tol is not None else DEFAULT_TOLERANCES
        self.runs: list[RunResult] = []

    def run(self, gens: Sequence[GroupElement], bases: Sequence[HPoint], lengths: Optional[Iterable[int]] = None) -> list[RunResult]:
        """
        Runs the pipeline for each length, in increasing order.

        Args:
            gens (Sequence[GroupElement]): the generators.
            bases (Sequence[HPoint]): the base points.
            lengths (Optional[Iterable[int]]): the truncation lengths. Defaults to 0 through max_word_length.

        Returns:
            list[RunResult]: one result per length.
        """
        if not bases:
            raise DegenerateError("an orbit needs at least one base point")
        lengths = sorted(set(lengths if lengths is not None else range(self.max_word_length + 1)))
        directions = [v for _, v in parabolic_fixed_directions(word_ball(gens, max(lengths + [4])))]
        self.runs = []
        for L in lengths:
            orbit = orbit_ball(gens, bases, L)
            t = delaunay_tessellation(orbit.points, tol = self.tol, configuration = self.configuration)
            invariance = invariance_report(t, orbit, gens, self.interior_margin)
            cusp = cusp_cell_diagnostic(t, directions, L)
            logger.info("word length %d: %d points, %d top cells", L, len(orbit.points), len(t.cells(t.top_dim)))
            self.runs.append(RunResult(L, orbit, t, invariance, cusp))
        return self.runs

    def stabilized(self) -> bool:
        """
        Returns True if the interior orbit counts of the last two runs agree.
        """
        if len(self.runs) < 2:
            return False
        return self.runs[-1].invariance.orbit_counts == self.runs[-2].invariance.orbit_counts

    def trend(self) -> CuspTrend:
        return cusp_trend([r.cusp for r in self.runs])

    def get_dataframe(self) -> pd.DataFrame:
        """
        Returns one row per run and dimension with the interior cell and orbit counts and the time-like fraction.
        """
        frames = []
        for r in self.runs:
            frame = r.invariance.to_dataframe()
            frame["points"] = len(r.orbit.points)
            frame["time_like_fraction"] = r.invariance.time_like_fraction
            frames.append(frame)
        if not frames:
            return pd.DataFrame()
        return pd.concat(frames, ignore_index = True)
