"""
Brute-force oracles for validating the hull-based pipeline.

The oracles enumerate subsets and test every candidate sphere or plane against every site. They are cubic or worse and
share nothing with `hypertess.hull` beyond the linear algebra kernel, so agreement between the two is evidence for both.
"""
import hashlib
import itertools
import json
import logging
import random
from dataclasses import dataclass, field
from typing import Annotated, Optional, Sequence

import pandas as pd

from hypertess import linalg
from hypertess.configuration import Configuration, configurable
from hypertess.datacollection import TableCollector
from hypertess.delaunay import check_complex, delaunay_tessellation
from hypertess.fixtures import random_poincare_sites
from hypertess.linalg import Scalar
from hypertess.lorentz import DEFAULT_TOLERANCES, DegenerateError, DimensionError, DomainError, LorentzVec, Tolerances, minkowski
from hypertess.models import HPoint, Model, to_model
from hypertess.voronoi import VoronoiBuilder, check_contravariance, geometric_dual, voronoi_from_tessellation

logger = logging.getLogger(__name__)

MAX_ORACLE_SITES = 12

CellSet = set[tuple[int, ...]]

def instance_hash(sites: Sequence[HPoint]) -> str:
    """
    A short hash identifying a site list, stable across runs.
    """
    text = json.dumps([[linalg.format_scalar(a) for a in s.coords] for s in sites])
    return hashlib.sha256(text.encode()).hexdigest()[:12]

@dataclass
class OracleReport:
    """
    The outcome of comparing the pipeline with one oracle on one instance.

    Attributes:
        instance: hash of the site list.
        oracle: the name of the oracle.
        match: True if the pipeline and the oracle agree.
        missing: cells (or samples) the oracle has and the pipeline lacks.
        extra: cells (or samples) the pipeline has and the oracle lacks.
    """
    instance: str
    oracle: str
    match: bool
    missing: list = field(default_factory = list)
    extra: list = field(default_factory = list)

def _compare(instance: str, oracle: str, expected: CellSet, found: CellSet) -> OracleReport:
    missing = sorted(expected - found)
    extra = sorted(found - expected)
    return OracleReport(instance, oracle, not missing and not extra, missing, extra)

def _span_coordinates(vectors: Sequence[Sequence[Scalar]], eps: float) -> list[list[Scalar]]:
    """
    Coordinates of vectors in their linear span, obtained by keeping the pivot columns of the row echelon form.
    """
    _, pivots = linalg.rref(vectors, eps)
    return [[v[p] for p in pivots] for v in vectors]

def _hyperplane_contacts(points: Sequence[Sequence[Scalar]], through_origin: bool, eps: float) -> CellSet:
    """
    Enumerates hyperplanes of R^w spanned by subsets of the points (and the origin, if through_origin) that have all
    points on one side, and returns their contact sets. For affine planes the points must be on the side away from 0.
    """
    w = len(points[0])
    size = w - 1 if through_origin else w
    contacts: CellSet = set()
    for subset in itertools.combinations(range(len(points)), size):
        rows = [list(points[i]) for i in subset]
        if through_origin:
            kernel = linalg.nullspace(rows, w, eps) if rows else [[1]]
            if len(kernel) != 1:
                continue
            normal, offset = kernel[0], 0 * kernel[0][0]
        else:
            if linalg.rank(rows, eps) < w:
                continue
            # normal·x = 1 on the plane through the subset
            normal = linalg.solve(rows, [1] * w, eps)
            assert normal is not None
            offset = 1
        values = [sum((a * b for a, b in zip(normal, p)), 0 * normal[0]) - offset for p in points]
        signs = {linalg.sign(v, eps) for v in values}
        # the origin gives normal·0 - 1 < 0, so no point may be negative; linear planes only need one side
        if signs <= {0, 1} or (through_origin and signs <= {0, -1}):
            contacts.add(tuple(i for i, s in enumerate(values) if linalg.sign(s, eps) == 0))
    return contacts

def _cone_faces(vectors: Sequence[Sequence[Scalar]], ids: tuple[int, ...], eps: float) -> CellSet:
    """
    All faces of the polytope whose vertices are given, found as faces of the cone over it, recursively by facets.
    """
    faces: CellSet = {ids}
    if len(ids) == 1:
        return faces
    coords = _span_coordinates([vectors[i] for i in ids], eps)
    for contact in _hyperplane_contacts(coords, True, eps):
        facet = tuple(ids[k] for k in contact)
        if facet and facet != ids:
            faces |= _cone_faces(vectors, facet, eps)
    return faces

def brute_force_hull_facets(points: Sequence[LorentzVec], eps: float = 1e-10) -> CellSet:
    """
    Returns the contact sets of the supporting hyperplanes spanned by d-subsets of full-dimensional points of R^d.

    Args:
        points (Sequence[LorentzVec]): points of affine rank d.
        eps (float, optional): float tolerance. Defaults to 1e-10.

    Returns:
        set[tuple[int, ...]]: the facet vertex sets.
    """
    d = len(points[0])
    base = points[0]
    if linalg.rank([list(p - base) for p in points[1:]], eps) < d:
        raise DegenerateError(f"points do not span R^{d}")
    facets: CellSet = set()
    for subset in itertools.combinations(range(len(points)), d):
        diffs = [list(points[i] - points[subset[0]]) for i in subset[1:]]
        kernel = linalg.nullspace(diffs, d, eps)
        if len(kernel) != 1:
            continue
        eta = LorentzVec(tuple(kernel[0]))
        h = eta.dot(points[subset[0]])
        values = [eta.dot(p) - h for p in points]
        signs = {linalg.sign(v, eps) for v in values}
        if signs <= {0, 1} or signs <= {0, -1}:
            facets.add(tuple(i for i, v in enumerate(values) if linalg.sign(v, eps) == 0))
    return facets

def brute_force_delaunay(sites: Sequence[HPoint], tol: Optional[Tolerances] = None) -> CellSet:
    """
    Computes the Delaunay cells as contact sets of empty hyperspheres, by enumeration.
    In the linear span of the sites, every spanning subset of the right size determines a plane; it is kept if no site
    lies strictly on the origin's side of it, which is the convex side of its hypersphere. The cells found are closed
    under taking faces.

    Args:
        sites (Sequence[HPoint]): at most 12 distinct sites.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        set[tuple[int, ...]]: the vertex sets of all cells.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    if not sites:
        raise DegenerateError("empty input")
    if len(sites) > MAX_ORACLE_SITES:
        raise DomainError(f"the brute-force oracle handles at most {MAX_ORACLE_SITES} sites, got {len(sites)}")
    if len({s.coords for s in sites}) < len(sites):
        raise DegenerateError("sites are not distinct")
    vectors = [list(s.coords) for s in sites]
    coords = _span_coordinates(vectors, tol.eps)
    cells: CellSet = set()
    for top in _hyperplane_contacts(coords, False, tol.eps):
        cells |= _cone_faces(vectors, top, tol.eps)
    return cells

def _poincare(sites: Sequence[HPoint], tol: Tolerances) -> list[tuple[Scalar, Scalar]]:
    if sites and sites[0].dim != 2:
        raise DimensionError(f"the Poincaré disk oracle works in H², not H^{sites[0].dim}")
    points = []
    for s in sites:
        p = to_model(s, Model.POINCARE).coords
        if tol.sign(1 - p[0] * p[0] - p[1] * p[1]) <= 0:
            raise DomainError(f"site {s.coords} is numerically on the boundary of the disk")
        points.append((p[0], p[1]))
    return points

def _inside_disk(center: tuple[Scalar, Scalar], r2: Scalar, tol: Tolerances) -> bool:
    """
    Returns True if the closed disk of squared radius r2 lies strictly inside the unit disk: |c| + r < 1.
    """
    A = 1 + r2 - center[0] ** 2 - center[1] ** 2
    return tol.sign(A) > 0 and tol.sign(A * A - 4 * r2) > 0 and tol.sign(1 - r2) > 0

def poincare_euclidean_oracle(sites: Sequence[HPoint], tol: Optional[Tolerances] = None) -> CellSet:
    """
    Computes the geometric-dual cells of sites in H² from their Poincaré disk coordinates: the Euclidean Delaunay
    cells having an empty circumscribed circle that lies strictly inside the unit disk, which then is a metric circle.

    Args:
        sites (Sequence[HPoint]): sites of H².
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        set[tuple[int, ...]]: the vertex sets of the dual cells.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    points = _poincare(sites, tol)
    cells: CellSet = {(i,) for i in range(len(points))}

    def sq(x: Scalar, y: Scalar) -> Scalar:
        return x * x + y * y

    for a, b, c in itertools.combinations(range(len(points)), 3):
        (ax, ay), (bx, by), (cx, cy) = points[a], points[b], points[c]
        d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if tol.sign(d) == 0:
            continue
        ux = (sq(ax, ay) * (by - cy) + sq(bx, by) * (cy - ay) + sq(cx, cy) * (ay - by)) / d
        uy = (sq(ax, ay) * (cx - bx) + sq(bx, by) * (ax - cx) + sq(cx, cy) * (bx - ax)) / d
        r2 = sq(ax - ux, ay - uy)
        power = [sq(px - ux, py - uy) - r2 for px, py in points]
        if any(tol.sign(p) < 0 for p in power):
            continue
        if _inside_disk((ux, uy), r2, tol):
            cells.add(tuple(i for i, p in enumerate(power) if tol.sign(p) == 0))

    lifted = [s.vec for s in sites]
    for a, b in itertools.combinations(range(len(points)), 2):
        (ax, ay), (bx, by) = points[a], points[b]
        m = ((ax + bx) / 2, (ay + by) / 2)
        w = (ay - by, bx - ax)
        ma2 = sq(ax - m[0], ay - m[1])
        lo: Optional[Scalar] = None
        hi: Optional[Scalar] = None
        empty = False
        # the circle through a and b centered at m + t·w has q strictly outside iff 2t·w·(q - m) < |q - m|² - |m - a|²
        for q in range(len(points)):
            if q in (a, b):
                continue
            qx, qy = points[q][0] - m[0], points[q][1] - m[1]
            alpha = 2 * (w[0] * qx + w[1] * qy)
            beta = sq(qx, qy) - ma2
            s = tol.sign(alpha)
            if s == 0:
                empty = empty or tol.sign(beta) <= 0
            elif s > 0:
                hi = beta / alpha if hi is None else min(hi, beta / alpha)
            else:
                lo = beta / alpha if lo is None else max(lo, beta / alpha)
        if empty or (lo is not None and hi is not None and tol.sign(hi - lo) <= 0):
            continue
        # the smallest hyperbolic circle through a and b is centered at their hyperbolic midpoint
        u = lifted[a] + lifted[b]
        k = minkowski(lifted[a], u)
        center = (-u[1] / (k - u[0]), -u[2] / (k - u[0]))
        t_mid = ((center[0] - m[0]) * w[0] + (center[1] - m[1]) * w[1]) / sq(w[0], w[1])

        def inside(t: Scalar) -> bool:
            cx, cy = m[0] + t * w[0], m[1] + t * w[1]
            return _inside_disk((cx, cy), sq(ax - cx, ay - cy), tol)

        if lo is not None and tol.sign(t_mid - lo) <= 0:
            keep = inside(lo)
        elif hi is not None and tol.sign(hi - t_mid) <= 0:
            keep = inside(hi)
        else:
            keep = True
        if keep:
            cells.add((a, b))
    return cells

def voronoi_membership_oracle(sites: Sequence[HPoint], samples: int = 1000, seed: int = 0,
                              tol: Optional[Tolerances] = None, configuration: Optional[Configuration] = None) -> OracleReport:
    """
    Compares the Voronoi cells containing sampled points with the nearest sites of those points.

    Args:
        sites (Sequence[HPoint]): the sites.
        samples (int, optional): the number of samples besides the sites themselves. Defaults to 1000.
        seed (int, optional): seed of the sampling. Defaults to 0.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.

    Returns:
        OracleReport: the report, listing (sample index, cells, nearest sites) of each disagreement as missing.
    """
    builder = VoronoiBuilder(configuration, tol)
    builder.sample_count = samples
    diagram = builder.build(sites)
    mismatches = builder.membership_mismatches(diagram, seed)
    return OracleReport(instance_hash(sites), "voronoi-membership", not mismatches, mismatches)

@configurable
class Corpus:
    """
    A corpus of random exact instances in H², each checked against all oracles.
    """
    instances:   Annotated[int, "Param", "number of random instances"] = 500
    min_sites:   Annotated[int, "Param", "least number of sites per instance"] = 4
    max_sites:   Annotated[int, "Param", "largest number of sites per instance"] = 12
    samples:     Annotated[int, "Param", "Voronoi membership samples per instance"] = 10000
    denominator: Annotated[int, "Param", "common denominator of the random Poincaré coordinates"] = 64

    def __init__(self, configuration: Optional[Configuration] = None, tol: Optional[Tolerances] = None):
        """
        Creates a corpus.

        Args:
            configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.
            tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        """
        self.configuration = configuration or Configuration()
        self.configuration.initialize(self)
        self.tol = tol if tol is not None else DEFAULT_TOLERANCES
        self.reports: list[OracleReport] = []

    def generate(self, seed: int = 0) -> list[list[HPoint]]:
        rng = random.Random(seed)
        return [random_poincare_sites(rng, rng.randint(self.min_sites, self.max_sites), self.denominator)
                for _ in range(self.instances)]

    def check(self, sites: Sequence[HPoint], seed: int = 0) -> list[OracleReport]:
        """
        Runs all oracles on one instance.
        """
        instance = instance_hash(sites)
        t = delaunay_tessellation(sites, tol = self.tol, configuration = self.configuration)
        dual = geometric_dual(t)
        contravariance = check_contravariance(dual)
        complex_report = check_complex(t, seed = seed, tol = self.tol)
        diagram = voronoi_from_tessellation(t)
        builder = VoronoiBuilder(self.configuration, self.tol)
        builder.sample_count = self.samples
        mismatches = builder.membership_mismatches(diagram, seed)
        reports = [
            _compare(instance, "delaunay", brute_force_delaunay(sites, self.tol), t.vertex_sets()),
            _compare(instance, "dual", poincare_euclidean_oracle(sites, self.tol), dual.cell_vertex_sets()),
            OracleReport(instance, "contravariance", contravariance.ok,
                         contravariance.reversed_inclusions + contravariance.faces_without_dual),
            OracleReport(instance, "complex", complex_report.ok, complex_report.failed_certificates),
            OracleReport(instance, "voronoi-membership", not mismatches, mismatches),
        ]
        for r in reports:
            if not r.match:
                logger.warning("instance %s disagrees with the %s oracle", instance, r.oracle)
        return reports

    def run(self, seed: int = 0) -> list[OracleReport]:
        self.reports = []
        for k, sites in enumerate(self.generate(seed)):
            self.reports.extend(self.check(sites, seed + k))
        return self.reports

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.reports)

    def get_dataframe(self) -> pd.DataFrame:
        collector = TableCollector({"oracles": ["instance", "oracle", "match", "missing", "extra"]})
        for r in self.reports:
            collector.add_row("oracles", instance = r.instance, oracle = r.oracle, match = r.match,
                              missing = len(r.missing), extra = len(r.extra))
        return collector.get_table_dataframe("oracles")

def run_corpus(configuration: Optional[Configuration] = None, seed: int = 0, tol: Optional[Tolerances] = None) -> pd.DataFrame:
    """
    Runs every oracle on a random corpus and returns one row per instance and oracle.

    Args:
        configuration (Optional[Configuration]): the configuration, carrying the corpus parameters. Defaults to the default configuration.
        seed (int, optional): seed of the corpus. Defaults to 0.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        pd.DataFrame: the reports.
    """
    corpus = Corpus(configuration, tol)
    corpus.run(seed)
    return corpus.get_dataframe()
