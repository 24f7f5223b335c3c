"""
Lorentzian linear algebra on R^{n+1}: the bilinear form x∘y = -x0 y0 + x1 y1 + ... + xn yn,
causal classification of vectors and subspaces, and orthogonal complements.

Every operation runs exactly when its inputs are rational and falls back to float comparisons with the
tolerances of `Tolerances` otherwise.

Partial UML class diagram:

```mermaid
classDiagram
    ValueError <|-- GeometryError
    GeometryError <|-- DimensionError
    GeometryError <|-- DegenerateError
    GeometryError <|-- DomainError
    Subspace --> LorentzVec: basis
    LorentzVec: causal_type
    LorentzVec: bar()
    Tolerances: exact
    Tolerances: eps
```
"""
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Annotated, Any, Iterator, Optional, Sequence

from hypertess import linalg
from hypertess.configuration import Configuration, configurable
from hypertess.linalg import Scalar

logger = logging.getLogger(__name__)

class GeometryError(ValueError):
    """
    Base class of all errors raised by the geometric operations.
    """

class DimensionError(GeometryError):
    """
    Operands have incompatible dimensions.
    """

class DegenerateError(GeometryError):
    """
    Input is rank deficient or contains coinciding points where distinct ones are needed.
    """

class DomainError(GeometryError):
    """
    Input lies outside the domain of an operation, e.g. a point outside a model or a vector of the wrong causal type.
    """

class CausalType(enum.Enum):
    """
    Sign class of v∘v, or of a subspace by whether it meets H^n, touches the light cone, or neither.
    """
    TIME_LIKE = "time-like"
    LIGHT_LIKE = "light-like"
    SPACE_LIKE = "space-like"
    ZERO = "zero"

@configurable
class Tolerances:
    """
    Comparison policy of the kernel.
    Exact inputs are always compared exactly; these values only govern float inputs and how input files are read.
    """
    exact:           Annotated[bool,  "Param", "read inputs as exact rationals (use --no-exact or --float for binary floats)", "--exact"] = True
    eps:             Annotated[float, "Param", "float comparison tolerance on normalized quantities", "--eps"] = 1e-10
    hyperboloid_eps: Annotated[float, "Param", "float tolerance for renormalizing points onto the hyperboloid, relative to x0²"] = 1e-9

    def __init__(self, configuration: Optional[Configuration] = None):
        """
        Creates a tolerance policy.

        Args:
            configuration (Optional[Configuration]): the configuration to read. Defaults to the default configuration.
        """
        (configuration or Configuration()).initialize(self)

    def sign(self, value: Scalar, scale: float = 1.0) -> int:
        """
        Returns the sign of a value, treating floats within eps times scale as zero.
        """
        return linalg.sign(value, self.eps * scale)

DEFAULT_TOLERANCES = Tolerances()

def _tol(tol: Optional[Tolerances]) -> Tolerances:
    return tol if tol is not None else DEFAULT_TOLERANCES

@dataclass(frozen = True)
class LorentzVec:
    """
    A vector of R^{n+1}, paired with other vectors through the Lorentz form.
    Coordinates are all Fractions (exact) or all floats.
    """
    coords: tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", linalg.coerce(self.coords))

    @classmethod
    def of(cls, *coords: Any) -> "LorentzVec":
        """
        Creates a vector from its coordinates given as separate arguments.
        """
        return cls(tuple(coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Scalar:
        return self.coords[i]

    def __add__(self, other: "LorentzVec") -> "LorentzVec":
        _check_dims(self, other)
        return LorentzVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LorentzVec") -> "LorentzVec":
        _check_dims(self, other)
        return LorentzVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LorentzVec":
        return LorentzVec(tuple(-a for a in self.coords))

    def __mul__(self, scalar: Any) -> "LorentzVec":
        return LorentzVec(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Any) -> "LorentzVec":
        if linalg.is_exact_value(scalar) and self.is_exact:
            scalar = Fraction(scalar)
        return LorentzVec(tuple(a / scalar for a in self.coords))

    @property
    def dim(self) -> int:
        """
        The n of R^{n+1}.
        """
        return len(self.coords) - 1

    @property
    def is_exact(self) -> bool:
        return linalg.is_exact(self.coords)

    @property
    def spatial(self) -> tuple[Scalar, ...]:
        return self.coords[1:]

    def dot(self, other: "LorentzVec") -> Scalar:
        """
        Euclidean inner product.
        """
        _check_dims(self, other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0) if self.is_exact and other.is_exact else 0.0)

    def euclidean_norm_squared(self) -> Scalar:
        return self.dot(self)

    def bar(self) -> "LorentzVec":
        """
        The involution negating spatial entries, so that bar(η)∘x = -η·x.
        """
        return LorentzVec((self.coords[0],) + tuple(-a for a in self.coords[1:]))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_float(self) -> "LorentzVec":
        return LorentzVec(tuple(float(a) for a in self.coords))

    def primitive(self) -> "LorentzVec":
        """
        Returns a positive multiple whose first nonzero entry has absolute value 1.
        Used as a canonical representative of a ray.
        """
        lead = next((a for a in self.coords if a != 0), None)
        if lead is None:
            return self
        return self / abs(lead)

    @cached_property
    def causal_type(self) -> CausalType:
        return classify_vector(self)

def _check_dims(x: LorentzVec, y: LorentzVec):
    if len(x.coords) != len(y.coords):
        raise DimensionError(f"dimension mismatch: {len(x.coords)} != {len(y.coords)}")

def minkowski(x: LorentzVec, y: LorentzVec) -> Scalar:
    """
    Returns the Lorentz product x∘y = -x0 y0 + Σ xi yi.

    Args:
        x (LorentzVec): first vector.
        y (LorentzVec): second vector.

    Returns:
        Scalar: the product, exact when both vectors are exact.
    """
    _check_dims(x, y)
    total = -x.coords[0] * y.coords[0]
    for a, b in zip(x.coords[1:], y.coords[1:]):
        total += a * b
    return total

def bar(v: LorentzVec) -> LorentzVec:
    """
    Converts a Euclidean normal to the Lorentz normal of the same hyperplane, and back.
    """
    return v.bar()

def classify_vector(v: LorentzVec, tol: Optional[Tolerances] = None) -> CausalType:
    """
    Classifies a vector by the sign of v∘v.
    Float vectors compare v∘v / |v|² against eps.

    Args:
        v (LorentzVec): the vector.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        CausalType: the causal type, ZERO for the zero vector.
    """
    if v.is_zero():
        return CausalType.ZERO
    q = minkowski(v, v)
    if v.is_exact:
        s = linalg.sign(q)
    else:
        s = _tol(tol).sign(q / float(v.euclidean_norm_squared()))
    return {-1: CausalType.TIME_LIKE, 0: CausalType.LIGHT_LIKE, 1: CausalType.SPACE_LIKE}[s]

def lorentz_norm(v: LorentzVec) -> float:
    """
    The Lorentz length √(v∘v) of a space-like vector.
    """
    q = minkowski(v, v)
    if q < 0:
        raise DomainError(f"{v} is time-like")
    return math.sqrt(float(q))

@dataclass(frozen = True)
class Subspace:
    """
    A linear subspace of R^{n+1} given by a linearly independent basis.
    """
    basis: tuple[LorentzVec, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise DegenerateError("a subspace needs at least one basis vector")
        for v in self.basis[1:]:
            _check_dims(self.basis[0], v)
        if linalg.rank([list(v) for v in self.basis]) < len(self.basis):
            raise DegenerateError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis[0])

    def gram(self) -> list[list[Scalar]]:
        """
        The Gram matrix of the basis under ∘.
        """
        return [[minkowski(a, b) for b in self.basis] for a in self.basis]

    def contains(self, v: LorentzVec, eps: float = 1e-10) -> bool:
        """
        Returns True if and only if v lies in the subspace.
        """
        return linalg.rank([list(b) for b in self.basis] + [list(v)], eps) == self.dim

def gram_inertia(vectors: Sequence[LorentzVec], tol: Optional[Tolerances] = None) -> tuple[int, int, int]:
    """
    Returns the inertia (negative, zero, positive) of the Gram matrix of the vectors under ∘.
    """
    return linalg.inertia([[minkowski(a, b) for b in vectors] for a in vectors], _tol(tol).eps)

def orthogonal_complement(V: Subspace, tol: Optional[Tolerances] = None) -> LorentzVec:
    """
    Returns a generator u of the Lorentz-orthogonal complement of a hyperplane V through 0.
    The kernel of the system v∘u = 0 is found by elimination, so light-like V (where u ∈ V) needs no special case.

    Args:
        V (Subspace): a subspace of dimension n in R^{n+1}.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        LorentzVec: a nonzero u with u∘v = 0 for every basis vector, its first nonzero entry positive.
    """
    if V.dim != V.ambient_dim - 1:
        raise DimensionError(f"expected a hyperplane of dimension {V.ambient_dim - 1}, got {V.dim}")
    rows = [[-v.coords[0]] + list(v.coords[1:]) for v in V.basis]
    kernel = linalg.nullspace(rows, V.ambient_dim, _tol(tol).eps)
    if len(kernel) != 1:
        raise DegenerateError("basis does not span a hyperplane")
    u = LorentzVec(tuple(kernel[0]))
    size = max(abs(float(a)) for a in u.coords)
    lead = next(a for a in u.coords if abs(float(a)) > _tol(tol).eps * size)
    return -u if lead < 0 else u

def classify_subspace(V: Subspace, tol: Optional[Tolerances] = None) -> CausalType:
    """
    Classifies a subspace: time-like if it contains a time-like vector, light-like if it otherwise
    contains a nonzero light-like vector, space-like otherwise. Decided by the inertia of the Gram matrix.

    Args:
        V (Subspace): the subspace.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        CausalType: TIME_LIKE, LIGHT_LIKE or SPACE_LIKE.
    """
    neg, zero, _ = gram_inertia(V.basis, tol)
    if neg:
        return CausalType.TIME_LIKE
    if zero:
        return CausalType.LIGHT_LIKE
    return CausalType.SPACE_LIKE
