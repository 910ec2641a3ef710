"""Dense 3x3 tensor algebra.

Everything here is closed form. The matrices are tiny and appear in inner
loops, so we avoid LAPACK round trips and keep results bit-reproducible
across runs of the same interpreter.
"""

import math

import numpy as np

from .errors import InvalidParameters, NotSymmetric, SingularMatrix

__all__ = [
    "as_mat3",
    "det",
    "inverse",
    "cofactor",
    "ddot",
    "sym_eigenvalues",
]

#: matrices with |det| at or below this are treated as singular
SINGULAR_TOL = 1e-14

#: max allowed asymmetry |m - m.T| for the eigenvalue routine
SYMMETRY_TOL = 1e-10


def as_mat3(m):
    """Validate and convert to a float64 (3, 3) array."""
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise InvalidParameters("expected a 3x3 matrix, got shape %s" % (a.shape,))
    if not np.all(np.isfinite(a)):
        raise InvalidParameters("matrix entries must be finite")
    return a


def det(m):
    """Determinant by cofactor expansion along the first row."""
    m = np.asarray(m, dtype=float)
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def cofactor(m):
    """Cofactor matrix (signed minors), defined for singular input too.

    Satisfies cof(m).T @ m = det(m) * I and, for invertible m,
    cof(m) = det(m) * inv(m).T.
    """
    m = np.asarray(m, dtype=float)
    c = np.empty((3, 3))
    c[0, 0] = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    c[0, 1] = m[1, 2] * m[2, 0] - m[1, 0] * m[2, 2]
    c[0, 2] = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
    c[1, 0] = m[0, 2] * m[2, 1] - m[0, 1] * m[2, 2]
    c[1, 1] = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    c[1, 2] = m[0, 1] * m[2, 0] - m[0, 0] * m[2, 1]
    c[2, 0] = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    c[2, 1] = m[0, 2] * m[1, 0] - m[0, 0] * m[1, 2]
    c[2, 2] = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return c


def inverse(m):
    """Inverse via the adjugate. Raises SingularMatrix when |det| <= tol."""
    m = np.asarray(m, dtype=float)
    d = det(m)
    if abs(d) <= SINGULAR_TOL:
        raise SingularMatrix("|det| = %.3e <= %.1e" % (abs(d), SINGULAR_TOL))
    return cofactor(m).T / d


def ddot(a, b):
    """Full contraction a : b = sum_ij a_ij b_ij."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.sum(a * b))


def _eig_trig(a):
    # Closed-form eigenvalues of a symmetric 3x3 matrix via the
    # trigonometric solution of the characteristic cubic.
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = (a[0, 0] + a[1, 1] + a[2, 2]) / 3.0
    if p1 == 0.0:
        # already diagonal
        return sorted((a[0, 0], a[1, 1], a[2, 2]), reverse=True)
    p2 = (
        (a[0, 0] - q) ** 2
        + (a[1, 1] - q) ** 2
        + (a[2, 2] - q) ** 2
        + 2.0 * p1
    )
    p = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / p
    r = det(b) / 2.0
    # clamp against roundoff drift outside [-1, 1]
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    eig1 = q + 2.0 * p * math.cos(phi)
    eig3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    eig2 = 3.0 * q - eig1 - eig3
    return [eig1, eig2, eig3]


def _eig_deflate(a):
    # Fallback for nearly degenerate spectra: shift by the Gershgorin
    # bound so the largest root is well separated, then polish each root
    # of the characteristic polynomial with a few Newton steps.
    shift = max(
        abs(a[i, i]) + sum(abs(a[i, j]) for j in range(3) if j != i)
        for i in range(3)
    )
    tr = a[0, 0] + a[1, 1] + a[2, 2]
    c2 = -tr
    c1 = (
        a[0, 0] * a[1, 1]
        + a[0, 0] * a[2, 2]
        + a[1, 1] * a[2, 2]
        - a[0, 1] ** 2
        - a[0, 2] ** 2
        - a[1, 2] ** 2
    )
    c0 = -det(a)

    def f(x):
        return ((x + c2) * x + c1) * x + c0

    def fp(x):
        return (3.0 * x + 2.0 * c2) * x + c1

    roots = []
    for x in _eig_trig(a):
        for _ in range(4):
            d = fp(x)
            if d == 0.0:
                break
            step = f(x) / d
            if abs(step) > shift:
                break
            x -= step
        roots.append(x)
    roots.sort(reverse=True)
    return roots


def sym_eigenvalues(m):
    """Eigenvalues of a symmetric 3x3 matrix, descending.

    Uses the trigonometric closed form; for spectra where the cubic is
    ill conditioned the roots are polished by Newton deflation. Raises
    NotSymmetric when max|m - m.T| exceeds the symmetry tolerance.
    """
    m = np.asarray(m, dtype=float)
    asym = np.max(np.abs(m - m.T))
    if asym > SYMMETRY_TOL:
        raise NotSymmetric("max|m - m.T| = %.3e" % asym)
    a = 0.5 * (m + m.T)
    w = _eig_trig(a)
    # accept the trig solution when it reproduces trace and determinant
    scale = max(1.0, np.max(np.abs(a)))
    tr_err = abs(sum(w) - (a[0, 0] + a[1, 1] + a[2, 2]))
    det_err = abs(w[0] * w[1] * w[2] - det(a))
    if tr_err > 1e-10 * scale or det_err > 1e-9 * scale**3:
        w = _eig_deflate(a)
    return tuple(w)
