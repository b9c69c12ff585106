"""Shared test utilities: seeded generators and independent oracles.

The oracles here (brute-force automorphism enumeration, Newton refinement,
QR-based random orthogonal matrices) deliberately avoid the library code
paths they are used to check.
"""

import itertools

import numpy as np

MASTER_SEED = 20260810


def random_symmetric(rng, n):
    m = rng.standard_normal((n, n))
    return (m + m.T) / 2.0


def haar_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def planted_matrix(rng, reps):
    """Symmetric matrix with prescribed eigenvalues (repeats allowed),
    conjugated by a random orthogonal basis.  Returns (matrix, sorted reps)."""
    lam = np.sort(np.asarray(reps, dtype=float))
    q = haar_orthogonal(rng, lam.size)
    return q @ np.diag(lam) @ q.T, lam


def set_distance(target, elements):
    """Distance from ``target`` to the nearest element (max-abs metric)."""
    return min(float(np.max(np.abs(np.asarray(e) - target))) for e in elements)


def brute_force_automorphisms(adjacency):
    """All automorphisms by checking every one of the n! permutations."""
    a = np.asarray(adjacency)
    n = a.shape[0]
    found = []
    for p in itertools.permutations(range(n)):
        pi = np.array(p)
        if np.array_equal(a[np.ix_(pi, pi)], a):
            found.append(p)
    return sorted(found)


def newton_equilibrium(a, x0, max_iter=100, step_tol=1e-13):
    """Newton refinement for A x - ||x||^2 x = 0 from a given start.

    Uses minimum-norm (least-squares) steps so that neutral directions along
    equilibrium manifolds do not make the iteration wander.  Returns the
    final iterate, or None if it leaves the finite range.
    """
    x = np.asarray(x0, dtype=float).copy()
    n = x.size
    for _ in range(max_iter):
        f = a @ x - (x @ x) * x
        j = a - (2.0 * np.outer(x, x) + (x @ x) * np.eye(n))
        # machine-precision cutoff: a larger rcond truncates the weak
        # curvature directions at degenerate roots and stalls short of them
        dx = np.linalg.lstsq(j, f, rcond=None)[0]
        x = x - dx
        if not np.all(np.isfinite(x)):
            return None
        if np.linalg.norm(dx) < step_tol:
            return x
    return x
