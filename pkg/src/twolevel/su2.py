"""SU(2)/U(2) primitives: phase splitting, minimal logarithms, geodesic energy.

The minimal Hilbert-Schmidt logarithm of an SU(2) element with eigenvalues
e^{+-i alpha}, alpha in [0, pi], has norm alpha; it is unique except at the
cut locus alpha = pi.  Geodesic energy is (1/2) * norm^2 in the pairing
<X, Y> = (1/2) Re Tr(X^dag Y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import as_matrix, assert_unitary, operator_norm
from .errors import InvalidInput, NotSpecial

#: Determinant tolerance for SU(2) membership checks.
SU2_DET_TOL = 1e-8

#: Minimal logs stop being unique within this distance of the cut locus.
CUT_LOCUS_TOL = 1e-9

_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
)


@dataclass
class MinLogResult:
    """Minimal-norm anti-Hermitian generator with its HS norm and uniqueness flag."""

    generator: np.ndarray
    hs_norm: float
    unique: bool


def _as_2x2_unitary(v, what: str = "matrix") -> np.ndarray:
    v = as_matrix(v)
    if v.shape != (2, 2):
        raise InvalidInput(f"{what} must be 2x2, got {v.shape}")
    return assert_unitary(v, what=what)


def _check_special(v: np.ndarray, what: str = "matrix") -> None:
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    if abs(det - 1.0) > SU2_DET_TOL:
        raise NotSpecial(f"{what} has det {det:.6g}, not 1")


def rotation(axis, theta: float) -> np.ndarray:
    """SU(2) rotation exp(-i theta (n.sigma) / 2) about the unit Bloch axis ``n``."""
    n = np.asarray(axis, dtype=np.float64)
    norm = np.linalg.norm(n)
    if norm == 0.0:
        raise InvalidInput("rotation axis must be nonzero")
    n = n / norm
    ns = n[0] * _SIGMA[0] + n[1] * _SIGMA[1] + n[2] * _SIGMA[2]
    return np.cos(theta / 2.0) * np.eye(2) - 1.0j * np.sin(theta / 2.0) * ns


def rot_x(theta: float) -> np.ndarray:
    return rotation((1.0, 0.0, 0.0), theta)


def rot_y(theta: float) -> np.ndarray:
    return rotation((0.0, 1.0, 0.0), theta)


def rot_z(theta: float) -> np.ndarray:
    return rotation((0.0, 0.0, 1.0), theta)


def eigen_angle(v) -> float:
    """Principal eigen-angle alpha in [0, pi] of an SU(2) element, from the trace."""
    v = np.asarray(v)
    c = 0.5 * float(np.real(v[0, 0] + v[1, 1]))
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def bloch_components(v) -> tuple[float, np.ndarray]:
    """Decompose V = a I - i (vec . sigma): returns (a, vec) with real entries."""
    v = np.asarray(v)
    a = 0.5 * float(np.real(v[0, 0] + v[1, 1]))
    x = -0.5 * float(np.imag(v[0, 1] + v[1, 0]))
    y = 0.5 * float(np.real(v[1, 0] - v[0, 1]))
    z = 0.5 * float(np.imag(v[1, 1] - v[0, 0]))
    return a, np.array([x, y, z])


def split_phase_u2(v) -> tuple[float, np.ndarray]:
    """Split V in U(2) as e^{i theta} S with S in SU(2).

    e^{i theta} is the principal square root of det(V): theta is half the
    principal argument, so theta lies in (-pi/2, pi/2].
    """
    v = _as_2x2_unitary(v)
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    theta = 0.5 * float(np.angle(det))
    s = np.exp(-1.0j * theta) * v
    return theta, s


def _schur_angles(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unitary eigenbasis and principal eigen-angles of a 2x2 unitary."""
    t, q = scipy.linalg.schur(v, output="complex")
    return np.angle(np.diag(t)), q


def minlog_su2(v) -> MinLogResult:
    """Minimal-norm X in su(2) with exp(X) = V; norm equals the eigen-angle.

    The result is flagged non-unique exactly at the cut locus (alpha = pi,
    within CUT_LOCUS_TOL), where every traceless direction of norm pi works.
    """
    v = _as_2x2_unitary(v)
    _check_special(v)
    theta, q = _schur_angles(v)
    alpha = 0.5 * (abs(theta[0]) + abs(theta[1]))
    # Order the eigenbasis so the first column carries the +alpha angle.
    if theta[1] > theta[0]:
        q = q[:, ::-1]
    x = (q * np.array([1.0j * alpha, -1.0j * alpha])) @ q.conj().T
    x = 0.5 * (x - x.conj().T)
    return MinLogResult(
        generator=x, hs_norm=float(alpha), unique=bool(abs(alpha - np.pi) >= CUT_LOCUS_TOL)
    )


def minlog_u2(v) -> MinLogResult:
    """Minimal-norm X in u(2) with exp(X) = V; norm^2 = (theta1^2 + theta2^2) / 2."""
    v = _as_2x2_unitary(v)
    theta, q = _schur_angles(v)
    x = (q * (1.0j * theta)) @ q.conj().T
    x = 0.5 * (x - x.conj().T)
    norm = float(np.sqrt(0.5 * (theta[0] ** 2 + theta[1] ** 2)))
    unique = bool(np.all(np.abs(theta - np.pi) >= CUT_LOCUS_TOL))
    return MinLogResult(generator=x, hs_norm=norm, unique=unique)


def geodesic_energy(v, special: bool = False) -> float:
    """Minimal geodesic energy (1/2) ||X||_hs^2 over logs in su(2) or u(2)."""
    v = _as_2x2_unitary(v)
    if special:
        _check_special(v)
        res = minlog_su2(v)
    else:
        res = minlog_u2(v)
    return 0.5 * res.hs_norm**2


def su2_distance(v, w) -> float:
    """Operator-norm distance between two SU(2) elements."""
    return operator_norm(np.asarray(v) - np.asarray(w))
