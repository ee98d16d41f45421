"""End-to-end compilation: factor, per-block phase split, per-block SK, lift.

The pipeline factors the target exactly into coordinate two-level blocks,
normalizes each block to SU(2) by shuttling determinant phases into the
trailing diagonal, approximates each block over the finite alphabet at
budget eps/K, and lifts the words through the coordinate embeddings.  The
error certificate is the telescoping sum of per-block distances, which the
isometry of coordinate embeddings makes valid in the ambient operator
norm; an independent verifier recomputes the achieved error from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import as_matrix, operator_norm
from .diagonal import DiagonalUnitary, phase_split, synth_special_diagonal
from .errors import AccuracyNotReached, InvalidIndex, InvalidInput
from .givens import Factorization, factor
from .sk import BasicNet, GateSet, GateWord, sk_approximate_with_error
from .su2 import split_phase_u2

#: Relative shave on per-block budgets so the float sum of per-block errors
#: can never creep past the requested eps.
_BUDGET_SHAVE = 1.0 - 1e-12


@dataclass
class LiftedLetter:
    """One alphabet letter tagged with its coordinate two-plane (p, q)."""

    label: str
    inverted: bool
    p: int
    q: int

    def __post_init__(self):
        if not (1 <= self.p < self.q):
            raise InvalidIndex(f"require 1 <= p < q, got ({self.p}, {self.q})")

    def to_json(self) -> dict:
        return {"label": self.label, "inv": bool(self.inverted), "p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, obj: dict) -> "LiftedLetter":
        try:
            return cls(str(obj["label"]), bool(obj["inv"]), int(obj["p"]), int(obj["q"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed LiftedLetter JSON: {exc}") from exc


@dataclass
class CompilationResult:
    """Lifted word, diagonal remainder, global phase, and error accounting."""

    dim: int
    word: list[LiftedLetter] = field(default_factory=list)
    diagonal: DiagonalUnitary = None
    global_phase: float = 0.0
    requested_eps: float = 0.0
    certified_bound: float = 0.0
    achieved_error: float = 0.0
    word_length: int = 0
    block_count: int = 0

    def __post_init__(self):
        if self.diagonal is None:
            self.diagonal = DiagonalUnitary.identity(self.dim)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "word": [l.to_json() for l in self.word],
            "diagonal": [[float(z.real), float(z.imag)] for z in self.diagonal.entries],
            "global_phase": float(self.global_phase),
            "requested_eps": float(self.requested_eps),
            "certified_bound": float(self.certified_bound),
            "achieved_error": float(self.achieved_error),
            "word_length": int(self.word_length),
            "block_count": int(self.block_count),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CompilationResult":
        try:
            diag = DiagonalUnitary(np.angle([complex(re, im) for re, im in obj["diagonal"]]))
            return cls(
                dim=int(obj["dim"]),
                word=[LiftedLetter.from_json(l) for l in obj["word"]],
                diagonal=diag,
                global_phase=float(obj["global_phase"]),
                requested_eps=float(obj["requested_eps"]),
                certified_bound=float(obj["certified_bound"]),
                achieved_error=float(obj["achieved_error"]),
                word_length=int(obj["word_length"]),
                block_count=int(obj["block_count"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed CompilationResult JSON: {exc}") from exc


def lift_word(word: GateWord, p: int, q: int) -> list[LiftedLetter]:
    """Tag every letter of a word with the coordinate pair it acts on."""
    return [LiftedLetter(lab, inv, p, q) for lab, inv in word.letters]


def _specialize_blocks(fact: Factorization) -> tuple[list[tuple[int, int, np.ndarray]], np.ndarray]:
    """Normalize factor blocks to SU(2), shuttling det phases into the diagonal.

    Moving a two-level phase past downstream factors conjugates their
    blocks by the accumulated diagonal restricted to (p, q); determinants
    are unchanged, so the emitted blocks are special unitary.
    """
    n = fact.n_dim
    acc = np.ones(n, dtype=np.complex128)
    blocks: list[tuple[int, int, np.ndarray]] = []
    for f in fact.factors:
        i, j = f.p - 1, f.q - 1
        theta, s = split_phase_u2(f.block)
        d2 = np.array([acc[i], acc[j]])
        s = (d2[:, None] * s) * np.conj(d2)[None, :]
        blocks.append((f.p, f.q, s))
        ph = np.exp(1.0j * theta)
        acc[i] *= ph
        acc[j] *= ph
    return blocks, acc * fact.diagonal


def _check_alphabet(gate_set: GateSet, net: BasicNet) -> None:
    """The net must have been built from the same alphabet it is used with."""
    if gate_set.labels != net.gate_set.labels or any(
        np.abs(a - b).max() > 1e-12
        for a, b in zip(gate_set.matrices, net.gate_set.matrices)
    ):
        raise InvalidInput("net was built from a different gate set")


def _sk_blocks(blocks, budget_each: float, net: BasicNet, depth: int):
    """SK-approximate each SU(2) block; returns (words, errors) or raises with a report."""
    eye = np.eye(2)
    words: list[GateWord] = []
    errors: list[float] = []
    failures = []
    for k, (p, q, s) in enumerate(blocks):
        dist_to_id = operator_norm(s - eye)
        if dist_to_id <= budget_each:
            words.append(GateWord())
            errors.append(dist_to_id)
            continue
        try:
            w, err = sk_approximate_with_error(s, budget_each, net, depth)
            words.append(w)
            errors.append(err)
        except AccuracyNotReached as exc:
            failures.append((k, p, q, budget_each, exc.achieved))
    if failures:
        detail = "; ".join(
            f"block {k} at ({p},{q}): achieved {a:.3e} > budget {b:.3e}"
            for k, p, q, b, a in failures
        )
        raise AccuracyNotReached(
            f"{len(failures)} block(s) missed the SK budget: {detail}", blocks=failures
        )
    return words, errors


def compile(u, eps: float, gate_set: GateSet, net: BasicNet, depth: int = 5) -> CompilationResult:
    """Compile ``u`` to a lifted word and diagonal with ||U - W D|| <= eps.

    The per-block budget is eps/K for the K emitted factors; blocks already
    within budget of the identity compile to the empty word.  The certified
    bound is the telescoping sum of per-block achieved errors, and the
    achieved error is recomputed by the independent verifier.
    """
    u = as_matrix(u)
    if not (0.0 < eps < 1.0):
        raise InvalidInput(f"eps must lie in (0, 1), got {eps}")
    _check_alphabet(gate_set, net)
    fact = factor(u)
    blocks, diag = _specialize_blocks(fact)
    k = len(blocks)
    lifted: list[LiftedLetter] = []
    errors: list[float] = []
    if k:
        delta = eps / k * _BUDGET_SHAVE
        words, errors = _sk_blocks(blocks, delta, net, depth)
        for (p, q, _), w in zip(blocks, words):
            lifted.extend(lift_word(w, p, q))
    result = CompilationResult(
        dim=fact.n_dim,
        word=lifted,
        diagonal=DiagonalUnitary(np.angle(diag)),
        global_phase=0.0,
        requested_eps=eps,
        certified_bound=float(sum(errors)),
        word_length=len(lifted),
        block_count=k,
    )
    result.achieved_error = verify(u, result, gate_set)
    return result


def compile_pure(u, eps: float, gate_set: GateSet, net: BasicNet, depth: int = 5) -> CompilationResult:
    """Compile to a pure word and global phase: ||U - e^{i theta} W|| <= eps.

    Half of eps covers the Givens blocks, half the diagonal synthesis: the
    diagonal remainder is split off its global phase, expressed through
    gamma_1j rotations, and each rotation's SU(2) block is SK-approximated
    and lifted on the (1, j) plane.
    """
    u = as_matrix(u)
    if not (0.0 < eps < 1.0):
        raise InvalidInput(f"eps must lie in (0, 1), got {eps}")
    _check_alphabet(gate_set, net)
    fact = factor(u)
    blocks, diag = _specialize_blocks(fact)
    k = len(blocks)
    lifted: list[LiftedLetter] = []
    errors: list[float] = []
    if k:
        words, errors = _sk_blocks(blocks, (eps / 2.0) / k * _BUDGET_SHAVE, net, depth)
        for (p, q, _), w in zip(blocks, words):
            lifted.extend(lift_word(w, p, q))
    theta, d0 = phase_split(DiagonalUnitary(np.angle(diag)))
    prog = synth_special_diagonal(d0)
    gamma_blocks = [
        (1, j, np.diag([np.exp(1.0j * t / 2.0), np.exp(-1.0j * t / 2.0)]))
        for j, t in prog.rotations
    ]
    if gamma_blocks:
        budget = (eps / 2.0) / len(gamma_blocks) if k else eps / len(gamma_blocks)
        g_words, g_errors = _sk_blocks(gamma_blocks, budget * _BUDGET_SHAVE, net, depth)
        errors = list(errors) + list(g_errors)
        for (p, q, _), w in zip(gamma_blocks, g_words):
            lifted.extend(lift_word(w, p, q))
    result = CompilationResult(
        dim=fact.n_dim,
        word=lifted,
        diagonal=DiagonalUnitary.identity(fact.n_dim),
        global_phase=theta,
        requested_eps=eps,
        certified_bound=float(sum(errors)),
        word_length=len(lifted),
        block_count=k,
    )
    result.achieved_error = verify(u, result, gate_set)
    return result


def evaluate_lifted(word, gate_set: GateSet, n: int) -> np.ndarray:
    """Left-to-right product of embedded letters as a dense N x N matrix."""
    m = np.eye(n, dtype=np.complex128)
    for letter in word:
        if letter.q > n:
            raise InvalidIndex(f"lifted letter ({letter.p},{letter.q}) exceeds dim {n}")
        x = gate_set.matrices[gate_set.index_of(letter.label)]
        if letter.inverted:
            x = x.conj().T
        cols = [letter.p - 1, letter.q - 1]
        m[:, cols] = m[:, cols] @ x
    return m


def verify(u, result: CompilationResult, gate_set: GateSet) -> float:
    """Recompute ||U - e^{i theta} W D|| from the word alone (no bookkeeping)."""
    u = as_matrix(u)
    if u.shape != (result.dim, result.dim):
        raise InvalidInput(f"dimension mismatch: matrix {u.shape} vs result dim {result.dim}")
    m = evaluate_lifted(result.word, gate_set, result.dim)
    m = m * result.diagonal.entries[None, :]
    m = np.exp(1.0j * result.global_phase) * m
    return operator_norm(u - m)
