"""
Hyperboloid-model geometry of H^n = {x : x∘x = -1, x0 > 0}.

The module provides chart conversions, distances and geodesics, affine planes {x∘u = c} and the hyperspheres they cut out
of H^n (metric spheres, horospheres, equidistants and totally geodesic hyperplanes), convex sides, horoball formulas,
separation of a point from a finite hull, and the exact test deciding whether a set of sites has a common
equidistant point that is strictly closer to it than to a list of other sites.

Partial UML class diagram:

```mermaid
classDiagram
    HPoint --> LorentzVec: vec
    AffinePlane --> LorentzVec: u
    HalfSpace --> AffinePlane: plane
    Circumsphere --> AffinePlane: plane
    Circumsphere --> HPoint: center
    Circumsphere --> Subspace: axis
    AffinePlane: meets_hyperboloid()
    AffinePlane: parallel_type
    Circumsphere: kind
```
"""
import dataclasses
import enum
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from hypertess import linalg
from hypertess.linalg import Scalar
from hypertess.lorentz import (DEFAULT_TOLERANCES, CausalType, DegenerateError, DimensionError, DomainError, GeometryError,
                               LorentzVec, Subspace, Tolerances, classify_vector, minkowski)

logger = logging.getLogger(__name__)

def _tol(tol: Optional[Tolerances]) -> Tolerances:
    return tol if tol is not None else DEFAULT_TOLERANCES

def _half(value: Scalar) -> Scalar:
    return Fraction(value) / 2 if linalg.is_exact_value(value) else value / 2.0

class Model(enum.Enum):
    """
    The models of H^n that points can be given in.
    """
    HYPERBOLOID = "hyperboloid"
    POINCARE = "poincare_ball"
    KLEIN = "klein_ball"
    UPPER_HALF = "upper_half_space"

    @classmethod
    def parse(cls, name: str) -> "Model":
        """
        Parses a model name, accepting the short aliases used on the command line.
        """
        aliases = {"poincare": cls.POINCARE, "klein": cls.KLEIN, "halfplane": cls.UPPER_HALF, "upper_half": cls.UPPER_HALF}
        if name in aliases:
            return aliases[name]
        try:
            return cls(name)
        except ValueError:
            raise DomainError(f"unknown model {name!r}") from None

@dataclass(frozen = True)
class HPoint:
    """
    A point of the hyperboloid sheet.
    Exact points satisfy vec∘vec = -1 exactly. Float points are accepted within hyperboloid_eps·x0² and renormalized.
    """
    vec: LorentzVec

    def __post_init__(self):
        vec = self.vec if isinstance(self.vec, LorentzVec) else LorentzVec(tuple(self.vec))
        if vec.coords[0] <= 0:
            raise DomainError(f"{vec.coords} is not on the upper sheet")
        q = minkowski(vec, vec)
        if vec.is_exact:
            if q != -1:
                raise DomainError(f"{vec.coords} is not on the hyperboloid (x∘x = {q})")
        else:
            if abs(q + 1) > DEFAULT_TOLERANCES.hyperboloid_eps * max(1.0, float(vec.coords[0]) ** 2):
                raise DomainError(f"{vec.coords} is not on the hyperboloid (x∘x = {q})")
            if abs(q + 1) > 1e-12:
                vec = vec / math.sqrt(-q)
        object.__setattr__(self, "vec", vec)

    @classmethod
    def of(cls, *coords: Any) -> "HPoint":
        return cls(LorentzVec(tuple(coords)))

    @property
    def coords(self) -> tuple[Scalar, ...]:
        return self.vec.coords

    @property
    def dim(self) -> int:
        return self.vec.dim

    @property
    def is_exact(self) -> bool:
        return self.vec.is_exact

@dataclass(frozen = True)
class ModelPoint:
    """
    A point given in the coordinates of one of the models.
    """
    model: Model
    coords: tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", linalg.coerce(self.coords))
        if self.model in (Model.POINCARE, Model.KLEIN):
            if sum(c * c for c in self.coords) >= 1:
                raise DomainError(f"{self.coords} is not inside the unit ball")
        elif self.model == Model.UPPER_HALF and self.coords[-1] <= 0:
            raise DomainError(f"{self.coords} has nonpositive height")

def lift(p: ModelPoint, tol: Optional[Tolerances] = None) -> HPoint:
    """
    Maps a model point to the hyperboloid.

    Args:
        p (ModelPoint): the point.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        HPoint: the corresponding point, exact for rational Poincaré and upper half-space input,
            and for Klein input when 1 - |k|² is a rational square.
    """
    tol = _tol(tol)
    c = p.coords
    s = sum(x * x for x in c)
    if p.model == Model.HYPERBOLOID:
        return HPoint(LorentzVec(c))
    if p.model == Model.POINCARE:
        return HPoint(LorentzVec((1 + s,) + tuple(2 * x for x in c)) / (1 - s))
    if p.model == Model.KLEIN:
        root = linalg.sqrt(1 - s)
        if linalg.is_exact(c) and not linalg.is_exact_value(root):
            if tol.exact:
                raise DomainError(f"Klein point {c} has no rational lift: 1 - |k|² = {1 - s} is not a rational square")
            c = tuple(float(x) for x in c)
        return HPoint(LorentzVec((1,) + tuple(c)) / root)
    # Upper half-space: coordinates (x_1, ..., x_{n-1}, y), with i mapped to (1, 0, ..., 0).
    y = c[-1]
    x = c[:-1]
    two_y = 2 * y
    return HPoint(LorentzVec(((1 + s) / two_y, (s - 1) / two_y) + tuple(xi / y for xi in x)))

def to_model(x: HPoint, model: Model) -> ModelPoint:
    """
    Maps a point of the hyperboloid to a model.

    Args:
        x (HPoint): the point.
        model (Model): the target model.

    Returns:
        ModelPoint: the coordinates, exact for exact input.
    """
    v = x.coords
    if model == Model.HYPERBOLOID:
        return ModelPoint(model, v)
    if model == Model.POINCARE:
        return ModelPoint(model, tuple(a / (1 + v[0]) for a in v[1:]))
    if model == Model.KLEIN:
        return ModelPoint(model, tuple(a / v[0] for a in v[1:]))
    y = 1 / (v[0] - v[1])
    return ModelPoint(model, tuple(a * y for a in v[2:]) + (y,))

def project_to_hyperboloid(x: LorentzVec) -> HPoint:
    """
    Central projection x ↦ x / √(-x∘x) of a future time-like vector to H^n.
    The result is exact when -x∘x is a rational square.

    Args:
        x (LorentzVec): a time-like vector with x0 > 0.

    Returns:
        HPoint: the point on the ray through x.
    """
    q = -minkowski(x, x)
    if x.coords[0] <= 0 or classify_vector(x) != CausalType.TIME_LIKE:
        raise DomainError(f"{x.coords} is not a future time-like vector")
    return HPoint(x / linalg.sqrt(q))

def dist(x: HPoint, y: HPoint) -> float:
    """
    Hyperbolic distance arccosh(-x∘y).
    """
    return math.acosh(max(1.0, float(-minkowski(x.vec, y.vec))))

def geodesic_point(x: HPoint, y: HPoint, t: float) -> HPoint:
    """
    The point at arclength t from x along the geodesic towards y, cosh(t) x + sinh(t) n
    where n is the unit normalization of y + (x∘y) x.

    Args:
        x (HPoint): start point.
        y (HPoint): a second, distinct point.
        t (float): arclength.

    Returns:
        HPoint: the point, in float coordinates.
    """
    c = float(-minkowski(x.vec, y.vec))
    if x.vec == y.vec or c <= 1.0:
        raise DegenerateError("geodesic direction is undefined for equal points")
    xf, yf = x.vec.to_float(), y.vec.to_float()
    n = (yf - c * xf) / math.sqrt(c * c - 1)
    return HPoint(math.cosh(t) * xf + math.sinh(t) * n)

def horoball_ray(x: HPoint, u: LorentzVec, t: float, tol: Optional[Tolerances] = None) -> HPoint:
    """
    The ray e^{-t} x + sinh(t) u from a point x of the horosphere {y∘u = -1} into its horoball.

    Args:
        x (HPoint): a point with x∘u = -1.
        u (LorentzVec): a future light-like vector.
        t (float): the parameter, t ≥ 0 moves into the horoball.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        HPoint: the point, with value∘u = -e^{-t}.
    """
    tol = _tol(tol)
    if classify_vector(u, tol) != CausalType.LIGHT_LIKE or u.coords[0] <= 0:
        raise DomainError(f"{u.coords} is not a future light-like vector")
    if tol.sign(minkowski(x.vec, u) + 1) != 0:
        raise DomainError(f"x∘u = {minkowski(x.vec, u)}, expected -1")
    return HPoint(math.exp(-t) * x.vec.to_float() + math.sinh(t) * u.to_float())

class Side(enum.Enum):
    GEQ = "geq"
    LEQ = "leq"

@dataclass(frozen = True)
class AffinePlane:
    """
    The affine hyperplane {x : x∘u = c} of R^{n+1} with Lorentz normal u.
    """
    u: LorentzVec
    c: Scalar

    def __post_init__(self):
        if self.u.is_zero():
            raise DegenerateError("plane normal is zero")
        if self.u.is_exact and linalg.is_exact_value(self.c):
            object.__setattr__(self, "c", Fraction(self.c))
        else:
            object.__setattr__(self, "u", self.u.to_float())
            object.__setattr__(self, "c", float(self.c))

    @classmethod
    def from_euclidean(cls, eta: LorentzVec, h: Scalar) -> "AffinePlane":
        """
        Converts the Euclidean plane η·x = h to Lorentz form {x∘bar(η) = -h}.
        """
        return cls(eta.bar(), -h)

    def euclidean(self) -> tuple[LorentzVec, Scalar]:
        """
        Returns (η, h) with the plane equal to η·x = h.
        """
        return self.u.bar(), -self.c

    @property
    def is_exact(self) -> bool:
        return self.u.is_exact

    @property
    def normal_type(self) -> CausalType:
        return classify_vector(self.u)

    @property
    def parallel_type(self) -> CausalType:
        """
        The causal type of the parallel subspace {x∘u = 0}.
        """
        return {CausalType.TIME_LIKE: CausalType.SPACE_LIKE,
                CausalType.LIGHT_LIKE: CausalType.LIGHT_LIKE,
                CausalType.SPACE_LIKE: CausalType.TIME_LIKE}[self.normal_type]

    def parallel_subspace(self) -> Subspace:
        rows = [[-self.u.coords[0]] + list(self.u.coords[1:])]
        return Subspace(tuple(LorentzVec(tuple(b)) for b in linalg.nullspace(rows, len(self.u))))

    def value(self, x: Union[LorentzVec, HPoint]) -> Scalar:
        """
        Returns x∘u - c, the signed (unnormalized) offset of x from the plane.
        """
        v = x.vec if isinstance(x, HPoint) else x
        return minkowski(v, self.u) - self.c

    def side_of(self, x: Union[LorentzVec, HPoint], tol: Optional[Tolerances] = None) -> int:
        """
        Returns the sign of x∘u - c.
        """
        v = x.vec if isinstance(x, HPoint) else x
        scale = math.sqrt(float(self.u.euclidean_norm_squared()) * float(v.euclidean_norm_squared())) + abs(float(self.c))
        return _tol(tol).sign(self.value(v), scale)

    def contains(self, x: Union[LorentzVec, HPoint], tol: Optional[Tolerances] = None) -> bool:
        return self.side_of(x, tol) == 0

    def passes_through_origin(self, tol: Optional[Tolerances] = None) -> bool:
        return _tol(tol).sign(self.c) == 0

    def oriented(self) -> "AffinePlane":
        """
        Returns the same plane with a canonical normal direction: future pointing for time-like and light-like
        normals, first nonzero entry positive for space-like ones.
        """
        t = self.normal_type
        if t in (CausalType.TIME_LIKE, CausalType.LIGHT_LIKE):
            flip = self.u.coords[0] < 0
        else:
            size = max(abs(float(a)) for a in self.u.coords)
            flip = next(a for a in self.u.coords if abs(float(a)) > 1e-12 * size) < 0
        return AffinePlane(-self.u, -self.c) if flip else self

    def key(self) -> tuple[Scalar, ...]:
        """
        A key that is equal for equal planes, obtained by scaling the first nonzero normal entry to 1.
        """
        lead = next(a for a in self.u.coords if a != 0)
        return tuple(a / lead for a in self.u.coords) + (self.c / lead,)

    def meets_hyperboloid(self, tol: Optional[Tolerances] = None) -> bool:
        """
        Returns True if and only if the plane intersects H^n.
        On H^n, x∘u ranges over (-∞, -√(-u∘u)] for future time-like u, over (-∞, 0) for future light-like u,
        and over all reals for space-like u.
        """
        tol = _tol(tol)
        p = self.oriented()
        t = p.normal_type
        if t == CausalType.SPACE_LIKE:
            return True
        if tol.sign(p.c) >= 0:
            return False
        if t == CausalType.LIGHT_LIKE:
            return True
        return tol.sign(p.c * p.c + minkowski(p.u, p.u), float(p.c * p.c)) >= 0

@dataclass(frozen = True)
class HalfSpace:
    """
    One of the closed half-spaces {x∘u ≥ c} or {x∘u ≤ c} bounded by a plane.
    """
    plane: AffinePlane
    side: Side

    def contains(self, x: Union[LorentzVec, HPoint], strict: bool = False, tol: Optional[Tolerances] = None) -> bool:
        s = self.plane.side_of(x, tol)
        if self.side == Side.LEQ:
            s = -s
        return s > 0 if strict else s >= 0

class SphereKind(enum.Enum):
    METRIC = "metric"
    HOROSPHERE = "horosphere"
    EQUIDISTANT = "equidistant"
    TOTALLY_GEODESIC = "totally_geodesic"

@dataclass(frozen = True)
class Circumsphere:
    """
    A hypersphere of H^n, the intersection of H^n with an affine plane.
    Which fields are set depends on the kind:
    metric spheres have center and radius, horospheres the ideal vector u scaled so that the sphere is {x∘u = -1},
    equidistants the time-like axis subspace, distance and component, totally geodesic hyperplanes the axis only.
    """
    kind: SphereKind
    plane: AffinePlane
    center: Optional[HPoint] = None
    radius: Optional[float] = None
    cosh_radius_squared: Optional[Scalar] = None
    ideal: Optional[LorentzVec] = None
    axis: Optional[Subspace] = None
    distance: Optional[float] = None
    sinh_distance_squared: Optional[Scalar] = None
    component: Optional[int] = None
    unique: bool = True

    def convex_side(self) -> Union[HalfSpace, tuple[HalfSpace, HalfSpace]]:
        return convex_side(self.plane)

    def with_unique(self, unique: bool) -> "Circumsphere":
        return dataclasses.replace(self, unique = unique)

def classify_plane(plane: AffinePlane, tol: Optional[Tolerances] = None) -> Circumsphere:
    """
    Classifies the hypersphere cut out of H^n by a plane {x∘u = c}.

    Args:
        plane (AffinePlane): a plane meeting H^n.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Circumsphere: a metric sphere for time-like u, a horosphere for light-like u, an equidistant for space-like u,
            and a totally geodesic hyperplane when c = 0.
    """
    tol = _tol(tol)
    if not plane.meets_hyperboloid(tol):
        raise DomainError(f"plane {{x∘{plane.u.coords} = {plane.c}}} misses the hyperboloid")
    p = plane.oriented()
    if tol.sign(p.c) == 0:
        return Circumsphere(SphereKind.TOTALLY_GEODESIC, p, axis = p.parallel_subspace())
    t = p.normal_type
    if t == CausalType.TIME_LIKE:
        q = -minkowski(p.u, p.u)
        cosh2 = p.c * p.c / q
        return Circumsphere(SphereKind.METRIC, p, center = project_to_hyperboloid(p.u),
                            radius = math.acosh(max(1.0, math.sqrt(float(cosh2)))), cosh_radius_squared = cosh2)
    if t == CausalType.LIGHT_LIKE:
        ideal = p.u / -p.c
        return Circumsphere(SphereKind.HOROSPHERE, AffinePlane(ideal, -1), ideal = ideal)
    sinh2 = p.c * p.c / minkowski(p.u, p.u)
    return Circumsphere(SphereKind.EQUIDISTANT, p, axis = p.parallel_subspace(), distance = math.asinh(math.sqrt(float(sinh2))),
                        sinh_distance_squared = sinh2, component = tol.sign(p.c))

def plane_through(points: Sequence[LorentzVec], tol: Optional[Tolerances] = None) -> AffinePlane:
    """
    Returns the affine hyperplane of R^{n+1} spanned by n + 1 or more points.
    """
    tol = _tol(tol)
    base = points[0]
    diffs = [list(p - base) for p in points[1:]]
    d = len(base)
    if not diffs or linalg.rank(diffs, tol.eps) != d - 1:
        raise DegenerateError(f"points do not span a hyperplane of R^{d}")
    eta = LorentzVec(tuple(linalg.nullspace(diffs, d, tol.eps)[0]))
    return AffinePlane.from_euclidean(eta, eta.dot(base))

def classify_hypersphere(points: Sequence[HPoint], tol: Optional[Tolerances] = None) -> Circumsphere:
    """
    Classifies the hypersphere through points of H^n spanning an n-dimensional affine plane P of R^{n+1}.
    The parallel subspace of P decides the kind: space-like gives a metric sphere, light-like a horosphere,
    time-like an equidistant; planes through 0 give totally geodesic hyperplanes.

    Args:
        points (Sequence[HPoint]): the points.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Circumsphere: the classified hypersphere.
    """
    return classify_plane(plane_through([p.vec for p in points], tol), tol)

def convex_side(plane: AffinePlane, tol: Optional[Tolerances] = None) -> Union[HalfSpace, tuple[HalfSpace, HalfSpace]]:
    """
    Returns the half-space bounded by the plane whose intersection with H^n is convex, which is the side containing 0.
    For planes through 0 both sides are convex and both are returned.

    Args:
        plane (AffinePlane): a plane meeting H^n.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Union[HalfSpace, tuple[HalfSpace, HalfSpace]]: the convex side(s).
    """
    tol = _tol(tol)
    if not plane.meets_hyperboloid(tol):
        raise DomainError(f"plane {{x∘{plane.u.coords} = {plane.c}}} misses the hyperboloid")
    s = tol.sign(plane.c)
    if s == 0:
        return HalfSpace(plane, Side.GEQ), HalfSpace(plane, Side.LEQ)
    return HalfSpace(plane, Side.GEQ if s < 0 else Side.LEQ)

def _project_simplex(v: np.ndarray) -> np.ndarray:
    """
    Euclidean projection onto the probability simplex.
    """
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u * np.arange(1, len(v) + 1) > css - 1)[0][-1]
    theta = (css[rho] - 1) / (rho + 1)
    return np.maximum(v - theta, 0)

def _closest_weights(points: np.ndarray, x0: np.ndarray, restarts: int, seed: int) -> tuple[np.ndarray, float]:
    """
    Minimizes cosh d(x0, r(y)) = -x0∘y / √(-y∘y) over convex combinations y of the points by projected gradient.
    """
    J = np.ones(points.shape[1])
    J[0] = -1.0
    m = len(points)
    a_grad = -(points * J) @ x0

    def objective(lam: np.ndarray) -> float:
        y = lam @ points
        return float(-(x0 * J) @ y / math.sqrt(-(y * J) @ y))

    def gradient(lam: np.ndarray) -> np.ndarray:
        y = lam @ points
        a = -(x0 * J) @ y
        b = -(y * J) @ y
        b_grad = -2.0 * (points * J) @ y
        return a_grad / math.sqrt(b) - 0.5 * a * b ** -1.5 * b_grad

    rng = np.random.default_rng(seed)
    starts = [np.full(m, 1.0 / m)] + [np.eye(m)[i] for i in range(min(m, restarts))] + [rng.dirichlet(np.ones(m)) for _ in range(restarts)]
    best, best_value = starts[0], objective(starts[0])
    for lam in starts:
        value = objective(lam)
        step = 1.0
        for _ in range(2000):
            g = gradient(lam)
            while step > 1e-18:
                candidate = _project_simplex(lam - step * g)
                new_value = objective(candidate)
                if new_value <= value - 1e-4 * float(g @ (lam - candidate)):
                    break
                step /= 2
            else:
                break
            improvement = value - new_value
            lam, value = candidate, new_value
            step *= 2
            if improvement < 1e-15:
                break
        if value < best_value:
            best, best_value = lam, value
    return best, best_value

def separating_plane(C: Sequence[HPoint], x0: HPoint, tol: Optional[Tolerances] = None, restarts: int = 4, seed: int = 0) -> AffinePlane:
    """
    Returns a time-like hyperplane V = u⊥ through 0 separating a point from the convex hull of a finite set,
    with u = x0 + (x∘x0) x for the closest point x of the hull.

    Args:
        C (Sequence[HPoint]): a nonempty finite set.
        x0 (HPoint): a point outside the closed convex hull of C.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.
        restarts (int, optional): number of random restarts of the closest-point search. Defaults to 4.
        seed (int, optional): seed of the restarts. Defaults to 0.

    Returns:
        AffinePlane: the plane {x∘u = 0}, with u∘x0 > 0 and u∘y ≤ 0 for every y in C.
    """
    tol = _tol(tol)
    if not C:
        raise DegenerateError("cannot separate from an empty set")
    points = np.array([[float(a) for a in c.coords] for c in C])
    target = np.array([float(a) for a in x0.coords])
    lam, value = _closest_weights(points, target, restarts, seed)
    if value <= 1.0 + 1e-12:
        raise DomainError(f"{x0.coords} lies in the convex hull")
    i = int(np.argmax(lam))
    if lam[i] > 1 - 1e-9 and C[i].is_exact and x0.is_exact:
        x = C[i].vec
    else:
        x = project_to_hyperboloid(LorentzVec(tuple(lam @ points))).vec
        if x0.is_exact:
            x0 = HPoint(x0.vec.to_float())
    u = x0.vec + minkowski(x, x0.vec) * x
    scale = float(u.euclidean_norm_squared()) ** 0.5
    if tol.sign(minkowski(u, x0.vec), scale) <= 0 or any(tol.sign(minkowski(u, c.vec), scale * 1e3) > 0 for c in C):
        raise GeometryError("closest-point search did not converge to a separating plane")
    return AffinePlane(u, 0)

def horosphere_chart(x0: HPoint, u: LorentzVec, v: LorentzVec, tol: Optional[Tolerances] = None) -> HPoint:
    """
    The Euclidean chart F(v) = x0 + v + ½(k + v∘v) u of the horosphere {x∘u = -1} through x0, with k = 1 + x0∘x0 = 0.
    It satisfies the chord law -F(v)∘F(w) - 1 = ½ (v - w)∘(v - w).

    Args:
        x0 (HPoint): a point of the horosphere.
        u (LorentzVec): the light-like ideal vector, with x0∘u = -1.
        v (LorentzVec): a space-like offset with v∘u = 0 and v∘x0 = 0.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        HPoint: the image point.
    """
    tol = _tol(tol)
    if classify_vector(u, tol) != CausalType.LIGHT_LIKE:
        raise DomainError(f"{u.coords} is not light-like")
    if tol.sign(minkowski(x0.vec, u) + 1) != 0:
        raise DomainError(f"x0∘u = {minkowski(x0.vec, u)}, expected -1")
    if tol.sign(minkowski(v, u)) != 0 or tol.sign(minkowski(v, x0.vec)) != 0:
        raise DomainError(f"offset {v.coords} is not orthogonal to both x0 and u")
    k = 1 + minkowski(x0.vec, x0.vec)
    return HPoint(x0.vec + v + _half(k + minkowski(v, v)) * u)

def horosphere_level_shift(k: Scalar) -> float:
    """
    Signed distance ln(-1/k) from the horosphere {x∘u = -1} to the level {x∘u = k} along horoball rays.
    Negative values mean the level lies outside the horoball.
    """
    if k >= 0:
        raise DomainError(f"level {k} must be negative")
    return math.log(-1 / float(k))

@dataclass(frozen = True)
class HoroballIntersection:
    """
    The intersection of the horosphere S of u with the horoball B′ of u′, described as S ∩ U for a metric ball U.
    """
    empty: bool
    r0: Scalar
    center: Optional[HPoint] = None
    cosh_radius: Optional[Scalar] = None
    radius: Optional[float] = None

def horoball_intersection(u: LorentzVec, u2: LorentzVec, tol: Optional[Tolerances] = None) -> HoroballIntersection:
    """
    Intersects the horosphere {x∘u = -1} with the horoball {x∘u2 ≥ -1}.
    With r0 = -½ + 1/(u∘u2), the intersection is nonempty iff r0 ≤ -1, and then it equals the part of the horosphere
    inside the ball of radius arccosh(-r0) about ½u - u2/(u∘u2).

    Args:
        u (LorentzVec): future light-like vector of the horosphere.
        u2 (LorentzVec): future light-like vector of the horoball, independent of u.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        HoroballIntersection: the result.
    """
    tol = _tol(tol)
    for w in (u, u2):
        if classify_vector(w, tol) != CausalType.LIGHT_LIKE or w.coords[0] <= 0:
            raise DomainError(f"{w.coords} is not a future light-like vector")
    if linalg.rank([list(u), list(u2)], tol.eps) < 2:
        raise DegenerateError("ideal vectors are proportional")
    p = minkowski(u, u2)
    r0 = -_half(1) + 1 / p if linalg.is_exact_value(p) else -0.5 + 1 / p
    if r0 > -1:
        return HoroballIntersection(True, r0)
    center = HPoint(_half(1) * u - u2 / p if linalg.is_exact_value(p) else 0.5 * u - u2 / p)
    return HoroballIntersection(False, r0, center, -r0, math.acosh(float(-r0)))

def ideal_point(u: LorentzVec, model: Model) -> Optional[tuple[float, ...]]:
    """
    Returns the boundary point of a light-like vector in a chart, or None for the point at infinity of the upper half-space.
    """
    v = [float(a) for a in u.coords]
    if model in (Model.POINCARE, Model.KLEIN):
        return tuple(a / v[0] for a in v[1:])
    if model == Model.UPPER_HALF:
        if abs(v[0] - v[1]) <= 1e-12 * abs(v[0]):
            return None
        return tuple(a / (v[0] - v[1]) for a in v[2:]) + (0.0,)
    return tuple(v)

def equidistant_witness(sites: Sequence[HPoint], group: Sequence[int], others: Iterable[int], interior: Optional[LorentzVec],
                        tol: Optional[Tolerances] = None) -> Optional[LorentzVec]:
    """
    Decides whether some point of H^n is equidistant from the sites of a group and strictly closer to them than to each other listed site.

    In the Klein chart x = (1, k) the conditions are linear: x∘(s - s′) = 0 within the group and x∘(s - s_j) ≥ 0 against the others.
    The minimum of |k|² over that closed polyhedron is found exactly by projecting the origin onto the affine spans of
    the equalities together with every small set of active inequalities. If the minimum is below 1 and the strict system
    has a solution (`interior`), the strict system has a solution in H^n as well.

    Args:
        sites (Sequence[HPoint]): all sites.
        group (Sequence[int]): indices of the sites to be equidistant from.
        others (Iterable[int]): indices of the sites to be strictly farther from.
        interior (Optional[LorentzVec]): a vector satisfying the equalities and the strict inequalities, or None to require
            the closest point itself to be strict.
        tol (Optional[Tolerances]): comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Optional[LorentzVec]: a future time-like vector whose ray meets H^n in such a point, or None if there is none.
    """
    tol = _tol(tol)
    s0 = sites[group[0]].vec
    n = s0.dim
    exact = all(sites[i].is_exact for i in group) and (interior is None or interior.is_exact)

    def constraint(j: int) -> tuple[list[Scalar], Scalar]:
        w = s0 - sites[j].vec
        return list(w.spatial), w.coords[0]

    eq = [constraint(j) for j in group[1:]]
    ineq = [constraint(j) for j in others]
    exact = exact and all(sites[j].is_exact for j in others)
    zero = Fraction(0) if exact else 0.0
    threshold = 0.0 if exact else tol.eps * max([1.0] + [abs(float(a)) for r, b in eq + ineq for a in r + [b]])

    def feasible(k: list[Scalar], strict: bool) -> bool:
        for row, rhs in ineq:
            slack = sum((a * b for a, b in zip(row, k)), zero) - rhs
            if linalg.sign(slack, threshold) < (1 if strict else 0):
                return False
        return True

    eq_rank = linalg.rank([r for r, _ in eq], tol.eps) if eq else 0
    best: Optional[list[Scalar]] = None
    for size in range(0, n - eq_rank + 1):
        for active in itertools.combinations(range(len(ineq)), size):
            rows = [r for r, _ in eq] + [ineq[i][0] for i in active]
            rhs = [b for _, b in eq] + [ineq[i][1] for i in active]
            if not rows:
                k = [zero] * n
            else:
                gram = [[sum((a * b for a, b in zip(r1, r2)), zero) for r2 in rows] for r1 in rows]
                y = linalg.solve(gram, rhs, tol.eps)
                if y is None:
                    continue
                k = [sum((yi * r[c] for yi, r in zip(y, rows)), zero) for c in range(n)]
                if any(linalg.sign(sum((a * b for a, b in zip(r, k)), zero) - b, threshold) != 0 for r, b in zip(rows, rhs)):
                    continue
            if sum((a * a for a in k), zero) < 1 and feasible(k, strict = False):
                best = k
                break
        if best is not None:
            break
    if best is None:
        return None
    one = Fraction(1) if exact else 1.0
    base = LorentzVec((one,) + tuple(best))
    if interior is None:
        return base if feasible(best, strict = True) else None
    epsilon: Scalar = one
    for _ in range(200):
        x = base + epsilon * interior
        if x.coords[0] > 0 and minkowski(x, x) < 0:
            return x
        epsilon = epsilon / 2
    raise GeometryError("no time-like witness found along the interior direction")
