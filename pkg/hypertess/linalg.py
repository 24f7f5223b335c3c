"""
Dual-mode linear algebra used by the geometric kernel.
Scalars are either exact rationals (`fractions.Fraction`) or binary floats.
Exact inputs are handled by fraction-free or rational elimination and never rounded.
Float inputs are handled with numpy, using a tolerance relative to the size of the entries.
"""
import math
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

Scalar = Union[Fraction, float]
Matrix = list[list[Scalar]]

def is_exact_value(value: Any) -> bool:
    """
    Returns True if and only if the value is an exact rational.
    """
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)

def is_exact(values: Iterable[Any]) -> bool:
    """
    Returns True if and only if every value is an exact rational.
    """
    return all(is_exact_value(v) for v in values)

def coerce(values: Iterable[Any]) -> tuple[Scalar, ...]:
    """
    Converts a sequence of numbers to a uniform scalar mode.
    If all values are exact they become Fractions, otherwise they all become floats.

    Args:
        values (Iterable[Any]): ints, Fractions or floats.

    Returns:
        tuple[Scalar, ...]: the converted values.
    """
    values = tuple(values)
    if is_exact(values):
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)

def parse_scalar(value: Union[str, int, float, Fraction], exact: bool = True) -> Scalar:
    """
    Parses a scalar from a "p/q" string, a decimal string or a number.
    Decimal strings are read exactly in exact mode.

    Args:
        value (Union[str, int, float, Fraction]): the value to parse.
        exact (bool, optional): if False, the result is a float. Defaults to True.

    Returns:
        Scalar: the parsed value.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, str):
        result = Fraction(value.strip())
    elif isinstance(value, float):
        if not exact:
            return value
        result = Fraction(value)
    else:
        result = Fraction(value)
    return result if exact else float(result)

def format_scalar(value: Scalar) -> Union[str, float]:
    """
    Formats a scalar for JSON output: exact values as "p/q" (or "p") strings, floats as numbers.
    """
    if is_exact_value(value):
        value = Fraction(value)
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return float(value)

def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """
    Returns the exact square root of a nonnegative rational, or None if it is not a rational square.
    """
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None

def sqrt(value: Scalar) -> Scalar:
    """
    Square root that stays exact for rational squares and falls back to floats otherwise.
    """
    if is_exact_value(value):
        root = rational_sqrt(Fraction(value))
        if root is not None:
            return root
    return math.sqrt(float(value))

def sign(value: Scalar, threshold: float = 0.0) -> int:
    """
    Returns the sign of a value as -1, 0 or 1.
    Exact values are compared exactly, floats within the absolute threshold count as zero.
    """
    if is_exact_value(value):
        return (value > 0) - (value < 0)
    if abs(value) <= threshold:
        return 0
    return 1 if value > 0 else -1

def _entries_scale(rows: Sequence[Sequence[Scalar]]) -> float:
    return max((abs(float(v)) for r in rows for v in r), default = 0.0)

def rref(rows: Sequence[Sequence[Scalar]], eps: float = 1e-10) -> tuple[Matrix, list[int]]:
    """
    Computes the reduced row echelon form of a matrix by Gauss-Jordan elimination with partial pivoting.
    Exact matrices are reduced over the rationals; float matrices treat entries below eps times the largest entry as zero.

    Args:
        rows (Sequence[Sequence[Scalar]]): the matrix.
        eps (float, optional): relative zero threshold in float mode. Defaults to 1e-10.

    Returns:
        tuple[Matrix, list[int]]: the nonzero rows of the reduced matrix, and the pivot column of each row.
    """
    if not rows:
        return [], []
    exact = all(is_exact(r) for r in rows)
    m: Matrix = [[Fraction(v) for v in r] if exact else [float(v) for v in r] for r in rows]
    threshold = 0.0 if exact else eps * max(_entries_scale(m), 1.0)
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        best = max(range(r, len(m)), key = lambda i: abs(m[i][col]))
        if abs(m[best][col]) <= threshold:
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][col]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if not exact:
        m = [[0.0 if abs(v) <= threshold else v for v in row] for row in m]
    return m[:r], pivots

def rank(rows: Sequence[Sequence[Scalar]], eps: float = 1e-10) -> int:
    """
    Returns the rank of a matrix.
    """
    if not rows:
        return 0
    if all(is_exact(r) for r in rows):
        return len(rref(rows)[1])
    return int(np.linalg.matrix_rank(np.array(rows, dtype = float), tol = eps * max(_entries_scale(rows), 1.0)))

def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, eps: float = 1e-10) -> list[list[Scalar]]:
    """
    Returns a basis of the kernel of a matrix with ncols columns.
    In exact mode the basis vectors have a 1 in their free coordinate.

    Args:
        rows (Sequence[Sequence[Scalar]]): the matrix, possibly without rows.
        ncols (int): the number of columns.
        eps (float, optional): relative zero threshold in float mode. Defaults to 1e-10.

    Returns:
        list[list[Scalar]]: the basis vectors.
    """
    if rows and not all(is_exact(r) for r in rows):
        a = np.array(rows, dtype = float)
        _, s, vt = np.linalg.svd(a)
        tol = eps * max(_entries_scale(rows), 1.0)
        r = int((s > tol).sum())
        return [list(map(float, v)) for v in vt[r:]]
    reduced, pivots = rref(rows)
    basis: list[list[Scalar]] = []
    for free in (c for c in range(ncols) if c not in pivots):
        v: list[Scalar] = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis

def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], eps: float = 1e-10) -> Optional[list[Scalar]]:
    """
    Returns a particular solution of the linear system rows * x = rhs, with free variables set to zero.

    Args:
        rows (Sequence[Sequence[Scalar]]): the coefficient matrix.
        rhs (Sequence[Scalar]): the right hand side.
        eps (float, optional): relative zero threshold in float mode. Defaults to 1e-10.

    Returns:
        Optional[list[Scalar]]: a solution, or None if the system is inconsistent.
    """
    ncols = len(rows[0])
    reduced, pivots = rref([list(r) + [b] for r, b in zip(rows, rhs)], eps)
    if ncols in pivots:
        return None
    exact = bool(reduced) and is_exact(reduced[0])
    x: list[Scalar] = [Fraction(0) if exact or not reduced else 0.0] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return x

def determinant(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """
    Returns the determinant of a square matrix.
    Exact matrices use fraction-free Bareiss elimination, so integer input stays integer throughout.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if not all(is_exact(r) for r in matrix):
        return float(np.linalg.det(np.array(matrix, dtype = float)))
    a = [list(r) for r in matrix]
    sgn = 1
    prev: Any = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else Fraction(num) / prev
        prev = a[k][k]
    return Fraction(sgn * a[n - 1][n - 1])

def cofactor_normal(rows: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """
    Generalized cross product: a vector orthogonal (Euclidean) to the k - 1 given vectors in R^k.
    It is zero exactly when the vectors are linearly dependent.

    Args:
        rows (Sequence[Sequence[Scalar]]): k - 1 vectors of length k.

    Returns:
        list[Scalar]: the normal vector, with entries (-1)^i times the minor omitting column i.
    """
    k = len(rows) + 1
    if k == 1:
        return [Fraction(1)]
    if not all(is_exact(r) for r in rows):
        return [float((-1) ** i * np.linalg.det(np.delete(np.array(rows, dtype = float), i, axis = 1))) for i in range(k)]
    return [(-1) ** i * determinant([r[:i] + r[i + 1:] for r in map(list, rows)]) for i in range(k)]

def inertia(gram: Sequence[Sequence[Scalar]], eps: float = 1e-10) -> tuple[int, int, int]:
    """
    Returns the inertia (negative, zero, positive) of a symmetric matrix.
    Exact matrices are diagonalized by congruence (Sylvester's law of inertia), float matrices by numpy's eigvalsh.

    Args:
        gram (Sequence[Sequence[Scalar]]): a symmetric matrix.
        eps (float, optional): relative zero threshold for eigenvalues in float mode. Defaults to 1e-10.

    Returns:
        tuple[int, int, int]: the numbers of negative, zero and positive eigenvalues.
    """
    if not all(is_exact(r) for r in gram):
        w = np.linalg.eigvalsh(np.array(gram, dtype = float))
        tol = eps * max(float(np.abs(w).max(initial = 0.0)), 1.0)
        return int((w < -tol).sum()), int((np.abs(w) <= tol).sum()), int((w > tol).sum())
    a: Matrix = [[Fraction(v) for v in r] for r in gram]
    neg = zero = pos = 0
    while a:
        k = len(a)
        idx = next((i for i in range(k) if a[i][i] != 0), None)
        if idx is None:
            pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if a[i][j] != 0), None)
            if pair is None:
                zero += k
                break
            i, j = pair
            # Congruence x_i -> x_i + x_j makes the diagonal entry 2 a_ij.
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            idx = i
        p = a[idx][idx]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [t for t in range(k) if t != idx]
        a = [[a[r][c] - a[r][idx] * a[idx][c] / p for c in rest] for r in rest]
    return neg, zero, pos

def integerize(vectors: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """
    Scales exact vectors by the least common multiple of their denominators.

    Args:
        vectors (Sequence[Sequence[Fraction]]): exact vectors.

    Returns:
        tuple[list[list[int]], int]: the integer vectors and the scale factor.
    """
    scale = 1
    for v in vectors:
        for x in v:
            scale = math.lcm(scale, Fraction(x).denominator)
    return [[int(Fraction(x) * scale) for x in v] for v in vectors], scale
