"""Dense symmetric eigendecomposition with deterministic ordering and clustering.

Everything downstream (symmetry groups, Procrustes, probes) is built on the
factorization A = V^T diag(lambda) V computed here, with V stored row-wise:
row i of V is the eigenvector for lambda_i.  Eigenvalues are sorted ascending
and grouped into multiplicity clusters by a greedy gap rule.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .errors import ConvergenceError, DimensionError, SymmetryError

DEFAULT_SYMTOL = 1e-10
JACOBI_CONV_TOL = 1e-12
JACOBI_MAX_SWEEPS = 30


def as_matrix(a) -> np.ndarray:
    """Coerce input (array-like or SymMatrix) to a float ndarray."""
    if isinstance(a, SymMatrix):
        return a.entries
    return np.asarray(a, dtype=float)


def check_symmetric(a, symtol: float = DEFAULT_SYMTOL) -> bool:
    """True iff ||A - A^T||_F <= symtol * max(1, ||A||_F)."""
    m = as_matrix(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return float(np.linalg.norm(m - m.T)) <= symtol * max(1.0, float(np.linalg.norm(m)))


@dataclass(frozen=True)
class SymMatrix:
    """A validated real symmetric matrix.

    Construction rejects non-square or asymmetric inputs (relative to
    ``symtol``).  The stored array is read-only, so instances are freely
    shareable across threads.
    """

    entries: np.ndarray
    symtol: float = DEFAULT_SYMTOL

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        if not check_symmetric(m, self.symtol):
            raise SymmetryError(
                f"matrix is not symmetric within symtol={self.symtol:g}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is not None:
            return self.entries.astype(dtype)
        return self.entries


def as_sym(a, symtol: float = DEFAULT_SYMTOL) -> SymMatrix:
    return a if isinstance(a, SymMatrix) else SymMatrix(as_matrix(a), symtol)


def default_cluster_tol(lambdas) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(lambdas))))


def cluster_eigenvalues(lambdas, cluster_tol: float) -> tuple[int, ...]:
    """Greedy left-to-right grouping of sorted eigenvalues.

    A new cluster starts whenever the gap to the previous eigenvalue exceeds
    ``cluster_tol``.  Returns the multiplicity vector m with sum(m) = n.
    """
    if cluster_tol < 0:
        raise ValueError(f"cluster_tol must be nonnegative, got {cluster_tol:g}")
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise ValueError("expected a nonempty 1-d array of eigenvalues")
    gaps = np.diff(lam)
    if lam.size > 1 and float(np.min(gaps)) < 0:
        raise ValueError("eigenvalues must be nondecreasing")
    m = [1]
    for g in gaps:
        if g > cluster_tol:
            m.append(1)
        else:
            m[-1] += 1
    return tuple(m)


def _borderline_gaps(lam: np.ndarray, cluster_tol: float) -> tuple[int, ...]:
    # A gap within a factor 10 of the tolerance is an ambiguous merge/split
    # decision; callers get the boundary indices instead of a silent choice.
    if lam.size < 2 or cluster_tol == 0.0:
        return ()
    gaps = np.diff(lam)
    lo, hi = 0.1 * cluster_tol, 10.0 * cluster_tol
    return tuple(int(i) for i in np.nonzero((gaps > lo) & (gaps <= hi))[0])


@dataclass(frozen=True)
class SpectralDecomposition:
    """Result of eig_sym: V (rows are eigenvectors), ascending eigenvalues,
    and their clustering into multiplicity blocks.

    Satisfies V A V^T = diag(lambdas) for the decomposed matrix A.
    ``clusters`` holds (representative value, multiplicity) pairs;
    ``borderline`` lists gap indices that fell within a factor 10 of
    ``cluster_tol`` and were therefore ambiguous.
    """

    v: np.ndarray
    lambdas: np.ndarray
    clusters: tuple[tuple[float, int], ...]
    cluster_tol: float
    borderline: tuple[int, ...] = ()

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        lam = np.array(self.lambdas, dtype=float)
        v.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "lambdas", lam)

    @property
    def n(self) -> int:
        return self.v.shape[0]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.clusters)

    @cached_property
    def decomposition_id(self) -> str:
        h = hashlib.sha256()
        h.update(self.v.tobytes())
        h.update(self.lambdas.tobytes())
        return h.hexdigest()[:12]

    def cluster_slices(self) -> list[slice]:
        out, start = [], 0
        for _, m in self.clusters:
            out.append(slice(start, start + m))
            start += m
        return out

    def reconstruct(self) -> np.ndarray:
        """A = V^T diag(lambdas) V."""
        return (self.v.T * self.lambdas) @ self.v

    def reversed(self) -> SpectralDecomposition:
        """The same decomposition with eigenvalues in descending order."""
        lam = self.lambdas[::-1].copy()
        v = self.v[::-1].copy()
        clusters = tuple((rep, m) for rep, m in reversed(self.clusters))
        border = tuple(sorted(self.n - 2 - i for i in self.borderline))
        return SpectralDecomposition(v, lam, clusters, self.cluster_tol, border)


def _offdiag_norm(a: np.ndarray) -> float:
    # direct sum over off-diagonal entries; the ||A||^2 - ||diag||^2 shortcut
    # cancels catastrophically near convergence
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(a: np.ndarray, conv_tol: float, max_sweeps: int):
    """Cyclic Jacobi with row-major sweeps. Returns (diagonal, U) with
    U^T A U diagonal (columns of U are eigenvectors)."""
    n = a.shape[0]
    u = np.eye(n)
    norm_a = float(np.linalg.norm(a))
    if n == 1 or norm_a == 0.0:
        return np.diag(a).copy(), u
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= conv_tol * norm_a:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if 1e14 * abs(apq) <= abs(diff):
                    t = apq / diff  # small-angle limit, avoids theta overflow
                else:
                    theta = diff / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                u_p, u_q = u[:, p].copy(), u[:, q].copy()
                u[:, p] = c * u_p - s * u_q
                u[:, q] = s * u_p + c * u_q
    else:
        off = _offdiag_norm(a)
        if off > conv_tol * norm_a:
            raise ConvergenceError(
                f"Jacobi iteration did not converge after {max_sweeps} sweeps "
                f"(off-diagonal norm {off:.3e})",
                residual=off,
            )
    return np.diag(a).copy(), u


def _fix_signs(u: np.ndarray) -> np.ndarray:
    # sign convention: first entry of largest magnitude in each eigenvector
    # is positive (ties resolved by argmax taking the lowest index)
    for j in range(u.shape[1]):
        k = int(np.argmax(np.abs(u[:, j])))
        if u[k, j] < 0:
            u[:, j] = -u[:, j]
    return u


def eig_sym(
    a,
    cluster_tol: float | None = None,
    symtol: float = DEFAULT_SYMTOL,
    conv_tol: float = JACOBI_CONV_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Deterministic for fixed input: fixed row-major sweep order, ascending
    eigenvalue sort (stable), and a fixed eigenvector sign convention, so two
    calls on identical input produce bit-identical output.

    Raises ConvergenceError (carrying the residual) if the off-diagonal norm
    has not dropped below ``conv_tol * ||A||_F`` after ``max_sweeps`` sweeps.
    """
    sym = as_sym(a, symtol)
    work = (sym.entries + sym.entries.T) / 2.0
    diag, u = _jacobi(work, conv_tol, max_sweeps)
    order = np.argsort(diag, kind="stable")
    lam = diag[order]
    u = _fix_signs(u[:, order])
    tol = default_cluster_tol(lam) if cluster_tol is None else float(cluster_tol)
    m = cluster_eigenvalues(lam, tol)
    clusters, start = [], 0
    for size in m:
        clusters.append((float(np.mean(lam[start : start + size])), size))
        start += size
    return SpectralDecomposition(
        v=u.T,
        lambdas=lam,
        clusters=tuple(clusters),
        cluster_tol=tol,
        borderline=_borderline_gaps(lam, tol),
    )


def align_basis(dec: SpectralDecomposition, target) -> SpectralDecomposition:
    """Re-gauge the eigenbasis to best match ``target`` (rows = vectors).

    Within each multiplicity cluster the eigenbasis is only determined up to
    an orthogonal mixing; this picks, per cluster, the mixing Q minimizing
    ||Q V_c - T_c||_F (a one-sided Procrustes fit).  The result is an exact
    decomposition of the same matrix whose basis is as close as possible to
    the target.  Useful for reproducing reference symmetry elements
    that depend on the basis chosen inside degenerate eigenspaces.
    """
    t = as_matrix(target)
    if t.shape != dec.v.shape:
        raise DimensionError(
            f"target basis shape {t.shape} does not match decomposition "
            f"shape {dec.v.shape}"
        )
    v = dec.v.copy()
    for sl in dec.cluster_slices():
        vc, tc = dec.v[sl, :], t[sl, :]
        uu, _, wt = np.linalg.svd(tc @ vc.T)
        v[sl, :] = (uu @ wt) @ vc
    return replace(dec, v=v)
