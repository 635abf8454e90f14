"""
Normalized adjacency spectra by cyclic Jacobi rotations.

The eigensolver is deterministic (fixed cyclic pivot order, no random start)
so a report is reproducible bit-for-bit on the same platform.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import ConvergenceFailure, Disconnected, NotRegular
from .graphCore import Multigraph, validate_regular
from .helper import (
    CLUSTER_TOL,
    EIGEN_ONE_TOL,
    JACOBI_TOL,
    MAX_SWEEPS,
    RESIDUAL_TOL,
    debug_print,
    format_real,
)


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: Tuple[float, ...]   # sorted descending
    lambda2: Optional[float]
    lambda_min: float
    max_residual: float
    sweeps: int = 0

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(format_real(x)) for x in self.eigenvalues],
            "lambda2": None if self.lambda2 is None else float(format_real(self.lambda2)),
            "lambda_min": float(format_real(self.lambda_min)),
            "max_residual": float(format_real(self.max_residual)),
        }


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, vectors: np.ndarray, p: int, q: int):
    """Annihilate a[p, q] with one Jacobi rotation, in place."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 1.0 / (2.0 * theta)
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0

    vec_p = vectors[:, p].copy()
    vec_q = vectors[:, q].copy()
    vectors[:, p] = c * vec_p - s * vec_q
    vectors[:, q] = s * vec_p + c * vec_q


def jacobi_eigh(matrix: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS):
    """
    Diagonalize a real symmetric matrix by cyclic Jacobi sweeps.

    Args:
        matrix: square symmetric float matrix (not modified)
        tol: stop once the off-diagonal Frobenius norm is below this value
        max_sweeps: sweep budget before ConvergenceFailure

    Returns:
        (eigenvalues, eigenvectors as columns, sweeps used)
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    vectors = np.eye(n)
    for sweep in range(max_sweeps + 1):
        off = _off_diagonal_norm(a)
        if off < tol:
            return np.diag(a).copy(), vectors, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, vectors, p, q)
    raise ConvergenceFailure(
        f"off-diagonal norm {off:.3e} still above {tol:.0e} after {max_sweeps} sweeps",
        op="normalized_spectrum",
    )


def normalized_spectrum(
    g: Multigraph,
    d: Optional[int] = None,
    max_sweeps: int = MAX_SWEEPS,
    tol: float = JACOBI_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> SpectralSummary:
    """
    Eigenvalues of adj/d, sorted descending, with a residual certificate.

    Raises ConvergenceFailure when the sweep budget runs out or when some
    eigenpair leaves a residual above residual_tol.
    """
    degree = validate_regular(g)
    if d is None:
        d = degree
    if d != degree:
        raise NotRegular(f"graph is {degree}-regular, not {d}-regular", op="normalized_spectrum")
    if d < 1:
        raise NotRegular("degree 0 graph has no normalized adjacency operator", op="normalized_spectrum")

    normalized = g.matrix().astype(np.float64) / d
    values, vectors, sweeps = jacobi_eigh(normalized, tol=tol, max_sweeps=max_sweeps)

    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    norms = np.linalg.norm(vectors, axis=0)
    vectors = vectors / norms
    residuals = np.linalg.norm(normalized @ vectors - vectors * values, axis=0)

    debug_print("Spectrum", f"n={g.n} d={d} sweeps={sweeps} max_residual={residuals.max():.2e}")
    if residuals.max() > residual_tol:
        raise ConvergenceFailure(
            f"eigenpair residual {residuals.max():.3e} exceeds {residual_tol:.0e} after {sweeps} sweeps",
            op="normalized_spectrum",
        )
    return SpectralSummary(
        eigenvalues=tuple(float(x) for x in values),
        lambda2=float(values[1]) if g.n > 1 else None,
        lambda_min=float(values[-1]),
        max_residual=float(residuals.max()),
        sweeps=sweeps,
    )


def nontrivial_spectrum(summary: SpectralSummary) -> List[float]:
    """Drop exactly one copy of the trivial eigenvalue 1."""
    values = list(summary.eigenvalues)
    if len(values) > 1 and values[1] >= 1.0 - EIGEN_ONE_TOL:
        raise Disconnected(
            "eigenvalue 1 has multiplicity > 1, the graph is disconnected",
            op="nontrivial_spectrum",
        )
    return values[1:]


def spectral_multiplicities(summary: SpectralSummary, tol: float = CLUSTER_TOL) -> List[Tuple[float, int]]:
    """Cluster the sorted eigenvalues into (representative, multiplicity) pairs."""
    clusters: List[List[float]] = []
    for value in summary.eigenvalues:
        if clusters and abs(clusters[-1][0] - value) < tol:
            clusters[-1].append(value)
        else:
            clusters.append([value])
    return [(cluster[0], len(cluster)) for cluster in clusters]


def two_sided_gap(summary: SpectralSummary) -> float:
    """1 - max |lambda| over the nontrivial spectrum."""
    rest = nontrivial_spectrum(summary)
    if not rest:
        return 1.0
    return 1.0 - max(abs(x) for x in rest)


def characteristic_polynomial(g: Multigraph) -> List[int]:
    """
    Exact characteristic polynomial det(xI - A) of the integer adjacency
    matrix by the Faddeev-LeVerrier recursion. Coefficients highest degree first.
    """
    n = g.n
    a = np.array([[int(x) for x in row] for row in g.adj], dtype=object)
    identity = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
    coefficients = [1]
    m = np.zeros((n, n), dtype=object)
    c = 1
    for k in range(1, n + 1):
        m = a.dot(m) + c * identity
        trace = sum(a.dot(m)[i, i] for i in range(n))
        # exact: the trace is divisible by k for integer matrices
        c = -trace // k
        coefficients.append(int(c))
    return coefficients
