"""Sampling helpers shared across the test suite."""

from __future__ import annotations

import numpy as np


def haar_unitary(n, rng):
    """Haar-ish random unitary via QR of a complex Gaussian."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_su2(rng):
    """Uniform SU(2) element from a normalized quaternion."""
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    return np.array(
        [[q[0] - 1j * q[3], -q[2] - 1j * q[1]],
         [q[2] - 1j * q[1], q[0] + 1j * q[3]]]
    )


def random_frame(n, rng):
    """Random orthonormal 2-frame in C^n."""
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    q, _ = np.linalg.qr(z)
    return q[:, :2]


def su_normalize(u):
    """Remove the determinant phase: det of the result is 1."""
    n = u.shape[0]
    return u * np.exp(-1j * np.angle(np.linalg.det(u)) / n)
