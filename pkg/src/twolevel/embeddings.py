"""Two-level gates: coordinate embeddings, frame realizations, tensor placements.

A two-level unitary acts on a single two-plane and fixes its orthogonal
complement pointwise.  Coordinate planes span{e_p, e_q} are the synthesis
workhorse; arbitrary planes are reached through Stiefel frames via
``I + F (S - I) F^dag``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix, matrix_from_json, matrix_to_json, scaled_tol
from .errors import InvalidFrame, InvalidIndex, InvalidInput

#: Recognition threshold for off-pattern entries (matches reconstruction noise).
RECOGNITION_TOL = 1e-9


@dataclass
class TwoLevelFactor:
    """One Givens factor: a 2x2 unitary block pinned to coordinates (p, q), 1-based."""

    p: int
    q: int
    block: np.ndarray

    def __post_init__(self):
        if not (1 <= self.p < self.q):
            raise InvalidIndex(f"require 1 <= p < q, got ({self.p}, {self.q})")
        self.block = as_matrix(self.block)
        if self.block.shape != (2, 2):
            raise InvalidInput(f"block must be 2x2, got {self.block.shape}")

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "block": matrix_to_json(self.block)}

    @classmethod
    def from_json(cls, obj: dict) -> "TwoLevelFactor":
        try:
            return cls(int(obj["p"]), int(obj["q"]), matrix_from_json(obj["block"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed TwoLevelFactor JSON: {exc}") from exc


def embed_coordinate(p: int, q: int, v, n: int) -> np.ndarray:
    """Place the 2x2 block ``v`` on rows/columns (p, q) of I_n (1-based, p < q)."""
    if not (1 <= p < q <= n):
        raise InvalidIndex(f"require 1 <= p < q <= {n}, got ({p}, {q})")
    v = as_matrix(v)
    if v.shape != (2, 2):
        raise InvalidInput(f"block must be 2x2, got {v.shape}")
    u = np.eye(n, dtype=np.complex128)
    i, j = p - 1, q - 1
    u[i, i] = v[0, 0]
    u[i, j] = v[0, 1]
    u[j, i] = v[1, 0]
    u[j, j] = v[1, 1]
    return u


def embed_frame(f, s, tol: float | None = None) -> np.ndarray:
    """Realize ``s`` on the plane spanned by the frame columns: I + F (S - I) F^dag.

    ``f`` is an N x 2 array with orthonormal columns; the result acts as ``s``
    on Ran(F) and as the identity on its orthogonal complement.
    """
    f = as_matrix(f)
    if f.ndim != 2 or f.shape[1] != 2 or f.shape[0] < 2:
        raise InvalidFrame(f"frame must be N x 2 with N >= 2, got {f.shape}")
    n = f.shape[0]
    defect = float(np.abs(f.conj().T @ f - np.eye(2)).max())
    if defect > scaled_tol(n, tol):
        raise InvalidFrame(f"frame columns are not orthonormal: defect {defect:.3e}")
    s = as_matrix(s)
    if s.shape != (2, 2):
        raise InvalidInput(f"internal action must be 2x2, got {s.shape}")
    return np.eye(n, dtype=np.complex128) + f @ (s - np.eye(2)) @ f.conj().T


def tensor_place(j: int, v, n: int) -> np.ndarray:
    """Kronecker placement of a 2x2 gate at tensor factor j of n (1-based)."""
    if not (1 <= j <= n):
        raise InvalidIndex(f"require 1 <= j <= {n}, got {j}")
    v = as_matrix(v)
    if v.shape != (2, 2):
        raise InvalidInput(f"gate must be 2x2, got {v.shape}")
    left = np.eye(2 ** (j - 1), dtype=np.complex128)
    right = np.eye(2 ** (n - j), dtype=np.complex128)
    return np.kron(np.kron(left, v), right)


def is_two_level(u, tol: float = RECOGNITION_TOL):
    """Recognize a coordinate two-level unitary.

    Returns ``(p, q, block)`` (1-based) if ``u`` differs from the identity
    only inside one coordinate pair, and ``None`` otherwise.  The identity
    (and single-coordinate phases) have no distinguished pair and return
    ``None``.
    """
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return None
    n = u.shape[0]
    dev = np.abs(u - np.eye(n)) > tol
    support = np.flatnonzero(dev.any(axis=0) | dev.any(axis=1))
    if len(support) != 2:
        return None
    i, j = int(support[0]), int(support[1])
    block = u[np.ix_([i, j], [i, j])].copy()
    return (i + 1, j + 1, block)
