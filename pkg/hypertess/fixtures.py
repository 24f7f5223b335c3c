"""
Named exact point sets used by the tests, the command line and the experiments.
"""
import random
from fractions import Fraction
from typing import Optional

from hypertess.lorentz import DomainError
from hypertess.models import HPoint, Model, ModelPoint, lift
from hypertess.orbit import GroupElement, sl2_to_so21

THREE_POINT_CONFIGURATIONS = ("left", "middle", "right")

def three_point(config: str) -> list[HPoint]:
    """
    Returns a triple (x, y, z) of H² with d(x, y) = d(x, z) whose circumcircle is of each of the three kinds.

    Args:
        config (str): "left" (metric circle), "middle" (horocycle) or "right" (equidistant curve).

    Returns:
        list[HPoint]: the exact points x, y, z.
    """
    F = Fraction
    if config == "left":
        coords = [(F(5, 3), 0, F(4, 3)), (F(5, 3), F(4, 3), 0), (F(5, 3), F(-4, 3), 0)]
    elif config == "middle":
        coords = [(1, 0, 0), (F(3, 2), F(1, 2), 1), (F(3, 2), F(1, 2), -1)]
    elif config == "right":
        coords = [(F(3, 2), F(1, 2), 1), (F(3, 2), F(-1, 2), 1), (F(9, 4), F(7, 4), 1)]
    else:
        raise DomainError(f"unknown configuration {config!r}, expected one of {THREE_POINT_CONFIGURATIONS}")
    return [HPoint.of(*c) for c in coords]

def square() -> list[HPoint]:
    """
    Four cocircular points (±1/2, 0), (0, ±1/2) of the Poincaré disk.
    """
    half = Fraction(1, 2)
    return [lift(ModelPoint(Model.POINCARE, c)) for c in [(half, 0), (-half, 0), (0, half), (0, -half)]]

def sweep_triple(t: Fraction) -> list[HPoint]:
    """
    Returns x = (1, 0, 0) and two points y, z at distance arccosh(5/3) from x at angles ±θ, where cos θ = (1 - t²)/(1 + t²).
    The circumcircle is metric for cos θ > 1/2, a horocycle at cos θ = 1/2 and an equidistant curve below.

    Args:
        t (Fraction): the rational parameter, with 0 < t.

    Returns:
        list[HPoint]: the exact points x, y, z.
    """
    t = Fraction(t)
    if t <= 0:
        raise DomainError(f"sweep parameter must be positive, got {t}")
    cos = (1 - t * t) / (1 + t * t)
    sin = 2 * t / (1 + t * t)
    r = Fraction(4, 3)
    return [HPoint.of(1, 0, 0), HPoint.of(Fraction(5, 3), r * cos, r * sin), HPoint.of(Fraction(5, 3), r * cos, -r * sin)]

def random_poincare_sites(rng: random.Random, count: int, denominator: int = 64, dim: int = 2,
                          radius: Optional[Fraction] = None) -> list[HPoint]:
    """
    Draws distinct exact sites from rational Poincaré coordinates with a common denominator.

    Args:
        rng (random.Random): the random generator.
        count (int): the number of sites.
        denominator (int, optional): the denominator of the coordinates. Defaults to 64.
        dim (int, optional): the dimension n. Defaults to 2.
        radius (Optional[Fraction]): the Poincaré radius the sites stay within. Defaults to 9/10.

    Returns:
        list[HPoint]: the sites.
    """
    radius = radius if radius is not None else Fraction(9, 10)
    seen: set[tuple[Fraction, ...]] = set()
    sites = []
    while len(sites) < count:
        coords = tuple(Fraction(rng.randint(-denominator, denominator), denominator) for _ in range(dim))
        if coords in seen or sum(c * c for c in coords) >= radius * radius:
            continue
        seen.add(coords)
        sites.append(lift(ModelPoint(Model.POINCARE, coords)))
    return sites

def punctured_torus_group() -> tuple[list[GroupElement], list[HPoint]]:
    """
    The free group generated by [[1, 1], [1, 2]] and [[1, -1], [-1, 2]], whose quotient is a once-punctured torus,
    with the base point (1, 0, 0).
    """
    gens = [sl2_to_so21([[1, 1], [1, 2]], "a"), sl2_to_so21([[1, -1], [-1, 2]], "b")]
    return gens, [HPoint.of(1, 0, 0)]

def parabolic_group() -> tuple[list[GroupElement], list[HPoint]]:
    """
    The cyclic group generated by the translation z ↦ z + 1 of the upper half-plane, with the base point i.
    """
    return [sl2_to_so21([[1, 1], [0, 1]], "a")], [HPoint.of(1, 0, 0)]
