"""Dense symmetric eigensolver for adjacency matrices.

Householder reduction to tridiagonal form, then implicit-shift QL for the
eigenvalues. The least eigenspace is recovered separately by shifted inverse
iteration on the original matrix followed by a Rayleigh-Ritz step, which
also gives an orthonormal basis when the least eigenvalue is repeated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, eigen_residual

DEFAULT_TOL = 1e-10
DEFAULT_GAP_TOL = 1e-7
MAX_SWEEPS = 64


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: tuple[float, ...]
    least_value: float
    least_vector: np.ndarray
    least_multiplicity: int
    residual: float
    # orthonormal columns spanning the computed least eigenspace
    least_space: np.ndarray

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [_fmt(v) for v in self.eigenvalues],
            "least_value": _fmt(self.least_value),
            "least_vector": [_fmt(v) for v in self.least_vector],
            "least_multiplicity": self.least_multiplicity,
            "residual": float(f"{self.residual:.3e}"),
        }


def _fmt(x: float) -> float:
    # 15 significant digits; also folds -0.0 into 0.0
    return float(f"{x:.15g}") + 0.0


def tridiagonalize(a: np.ndarray, want_q: bool = False):
    """Return (d, e, q) with q^T a q tridiagonal, diagonal d and
    sub-diagonal e (len n - 1). q is None unless requested."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n) if want_q else None
    for k in range(n - 2):
        x = a[k + 1 :, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0 or np.linalg.norm(x[1:]) == 0.0:
            continue
        alpha = -math.copysign(norm_x, x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        # a <- H a H with H = I - 2 v v^T acting on rows/cols k+1..
        a[k + 1 :, :] -= 2.0 * np.outer(v, v @ a[k + 1 :, :])
        a[:, k + 1 :] -= 2.0 * np.outer(a[:, k + 1 :] @ v, v)
        if q is not None:
            q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v)
    d = np.diag(a).copy()
    e = np.diag(a, -1).copy()
    return d, e, q


def tql_implicit(d, e, z: np.ndarray | None = None) -> list[float]:
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    ``e`` is the sub-diagonal. If ``z`` is given its columns are rotated in
    place, so passing the Householder q yields eigenvectors of the original
    matrix. Returns eigenvalues in no particular order.
    """
    d = [float(v) for v in d]
    n = len(d)
    e = [float(v) for v in e] + [0.0]
    eps = np.finfo(float).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_SWEEPS:
                raise ConvergenceError(f"QL iteration exceeded {MAX_SWEEPS} sweeps at index {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi = z[:, i].copy()
                    z[:, i] = c * zi - s * z[:, i + 1]
                    z[:, i + 1] = s * zi + c * z[:, i + 1]
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d


def symmetric_eigvals(a) -> np.ndarray:
    d, e, _ = tridiagonalize(a)
    return np.sort(np.array(tql_implicit(d, e)))


def symmetric_eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ascending and matching orthonormal eigenvector columns."""
    d, e, q = tridiagonalize(a, want_q=True)
    vals = np.array(tql_implicit(d, e, q))
    order = np.argsort(vals, kind="stable")
    return vals[order], q[:, order]


def _least_space(a: np.ndarray, lam: float, k: int, sweeps: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Inverse iteration on a block of k vectors, shifted just below lam,
    then Rayleigh-Ritz. Returns (ritz values, ritz vectors)."""
    n = a.shape[0]
    shift = lam - 1e-10 * max(1.0, abs(lam))
    shifted = a - shift * np.eye(n)
    # fixed seed: output must not depend on call history
    block = np.random.default_rng(20120417).standard_normal((n, k))
    block, _ = np.linalg.qr(block)
    for _ in range(sweeps):
        block = np.linalg.solve(shifted, block)
        block, _ = np.linalg.qr(block)
    h = block.T @ a @ block
    h = (h + h.T) / 2.0
    if k == 1:
        return np.array([h[0, 0]]), block
    vals, vecs = symmetric_eigh(h)
    return vals, block @ vecs


def _orient(x: np.ndarray) -> np.ndarray:
    """Flip sign so the entry of largest modulus is negative (first such
    index wins, ties judged at 1e-9)."""
    mags = np.abs(x)
    idx = int(np.flatnonzero(mags >= mags.max() - 1e-9)[0])
    return -x if x[idx] > 0 else x


def full_spectrum(g: Graph, tol: float = DEFAULT_TOL, gap_tol: float = DEFAULT_GAP_TOL) -> Spectrum:
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = g.adjacency_matrix().astype(float)
    vals = symmetric_eigvals(a)
    lam = float(vals[0])
    k = int(np.sum(vals <= lam + gap_tol))
    space = None
    residual = math.inf
    for sweeps in (3, 6):
        _, space = _least_space(a, lam, k, sweeps)
        residual = max(eigen_residual(g, lam, space[:, j]) for j in range(k))
        if residual <= tol:
            break
    if residual > tol:
        raise ConvergenceError(f"least eigenvector residual {residual:.3e} exceeds tol {tol:.1e}")
    x = _orient(space[:, 0] / np.linalg.norm(space[:, 0]))
    x.flags.writeable = False
    space.flags.writeable = False
    return Spectrum(
        eigenvalues=tuple(float(v) for v in vals),
        least_value=lam,
        least_vector=x,
        least_multiplicity=k,
        residual=float(eigen_residual(g, lam, x)),
        least_space=space,
    )


def least_eigenpair(g: Graph, tol: float = DEFAULT_TOL, gap_tol: float = DEFAULT_GAP_TOL):
    """(least eigenvalue, unit first eigenvector, multiplicity)."""
    s = full_spectrum(g, tol, gap_tol)
    return s.least_value, s.least_vector, s.least_multiplicity


def least_eigenvalue(g: Graph) -> float:
    return float(symmetric_eigvals(g.adjacency_matrix())[0])


def rayleigh(g: Graph, x) -> float:
    """x^T A x / x^T x."""
    x = np.asarray(x, dtype=float)
    if len(x) != g.n:
        raise ValueError(f"vector has length {len(x)}, graph has order {g.n}")
    nn = float(x @ x)
    if nn == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    return float(x @ g.adjacency_matrix() @ x) / nn
