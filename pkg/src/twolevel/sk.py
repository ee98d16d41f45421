"""Finite-alphabet approximation of SU(2): epsilon nets and Solovay-Kitaev.

The net enumerates all words up to a length bound over the letters and
their inverses (with immediate back-tracking pruned), deduplicates by
proximity, and supports exact nearest-neighbor lookup in the operator
norm.  Lookup exploits that for U, V in SU(2)

    ||U - V|| = sqrt(2 - Re Tr(U^dag V)),

so distance-to-identity values ("s") give a one-dimensional lower bound
|s_U - s_V| <= ||U - V|| used to prune the scan window.  Nets are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix, assert_unitary, matrix_from_json, matrix_to_json
from .errors import (
    AccuracyNotReached,
    InvalidInput,
    NetTooLarge,
    OutOfRegime,
    UnknownLetter,
)
from .su2 import bloch_components, rotation, su2_distance

#: Net entries closer than this (operator norm) are merged, keeping the shorter word.
DEDUP_TOL = 1e-6

#: Determinant slack accepted for gate-set letters.
LETTER_DET_TOL = 1e-8

DEFAULT_NET_CAP = 2_000_000


@dataclass(frozen=True)
class GateSet:
    """Ordered, labeled SU(2) alphabet."""

    labels: tuple[str, ...]
    matrices: tuple

    def __post_init__(self):
        if len(self.labels) == 0:
            raise InvalidInput("gate set must have at least one letter")
        if len(self.labels) != len(self.matrices):
            raise InvalidInput("one matrix per label required")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("gate-set labels must be unique")
        mats = []
        for lab, m in zip(self.labels, self.matrices):
            m = as_matrix(m)
            if m.shape != (2, 2):
                raise InvalidInput(f"letter {lab!r} must be 2x2, got {m.shape}")
            m = assert_unitary(m, what=f"letter {lab!r}")
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det - 1.0) > LETTER_DET_TOL:
                raise InvalidInput(f"letter {lab!r} is not special unitary (det {det:.6g})")
            mats.append(m)
        object.__setattr__(self, "matrices", tuple(mats))

    @classmethod
    def from_letters(cls, letters) -> "GateSet":
        labels, mats = zip(*letters)
        return cls(tuple(str(s) for s in labels), tuple(mats))

    @property
    def inverse_closed(self) -> bool:
        """True if every letter's inverse is itself a letter (within 1e-12)."""
        for m in self.matrices:
            inv = m.conj().T
            if not any(np.abs(other - inv).max() <= 1e-12 for other in self.matrices):
                return False
        return True

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLetter(f"unknown letter {label!r}") from None

    def to_json(self) -> dict:
        return {
            "letters": [
                {"label": lab, "matrix": matrix_to_json(m)}
                for lab, m in zip(self.labels, self.matrices)
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GateSet":
        try:
            letters = [(str(e["label"]), matrix_from_json(e["matrix"])) for e in obj["letters"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed GateSet JSON: {exc}") from exc
        return cls.from_letters(letters)


@dataclass(frozen=True)
class GateWord:
    """A word over the alphabet: sequence of (label, inverted) pairs."""

    letters: tuple = ()

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "GateWord":
        return GateWord(tuple((lab, not inv) for lab, inv in reversed(self.letters)))

    def __add__(self, other: "GateWord") -> "GateWord":
        return GateWord(self.letters + other.letters)

    def to_json(self) -> dict:
        return {"letters": [{"label": lab, "inv": bool(inv)} for lab, inv in self.letters]}

    @classmethod
    def from_json(cls, obj: dict) -> "GateWord":
        try:
            return cls(tuple((str(e["label"]), bool(e["inv"])) for e in obj["letters"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed GateWord JSON: {exc}") from exc


def evaluate_word(word: GateWord, gate_set: GateSet) -> np.ndarray:
    """Left-to-right product of the word's letters (inverted ones as daggers)."""
    m = np.eye(2, dtype=np.complex128)
    for lab, inv in word.letters:
        x = gate_set.matrices[gate_set.index_of(lab)]
        m = m @ (x.conj().T if inv else x)
    return m


def _s_values(mats: np.ndarray) -> np.ndarray:
    """Operator-norm distance to the identity, sqrt(2 - Re Tr), per entry."""
    tr = np.real(mats[:, 0, 0] + mats[:, 1, 1])
    return np.sqrt(np.clip(2.0 - tr, 0.0, 4.0))


def _su2_dist_formula(v: np.ndarray, w: np.ndarray) -> float:
    tr = float(np.real(np.vdot(v, w)))
    return float(np.sqrt(max(2.0 - tr, 0.0)))


class BasicNet:
    """Immutable enumeration of short words with their evaluated matrices.

    Words are stored as parent-pointer chains: entry i extends entry
    ``parent[i]`` by the extended letter ``code[i]`` (2 * letter_index + inv).
    Entry 0 is the empty word.
    """

    def __init__(self, gate_set: GateSet, max_word_length: int, mats, parent, code, length):
        self.gate_set = gate_set
        self.max_word_length = int(max_word_length)
        self.mats = np.ascontiguousarray(mats, dtype=np.complex128)
        self.parent = np.asarray(parent, dtype=np.int64)
        self.code = np.asarray(code, dtype=np.int16)
        self.length = np.asarray(length, dtype=np.int32)
        # Flat real view: row i is (re, im) interleaved, so that
        # row . row' == Re Tr(A^dag B) for the corresponding matrices.
        self._flat = self.mats.reshape(len(self.mats), 4).view(np.float64)
        s = _s_values(self.mats)
        self._s_order = np.argsort(s, kind="stable")
        self._s_sorted = s[self._s_order]

    def __len__(self) -> int:
        return len(self.mats)

    def word_at(self, i: int) -> GateWord:
        letters = []
        while i > 0:
            c = int(self.code[i])
            letters.append((self.gate_set.labels[c >> 1], bool(c & 1)))
            i = int(self.parent[i])
        return GateWord(tuple(reversed(letters)))

    def entries(self):
        """Iterate (word, matrix) pairs; intended for small nets and tests."""
        for i in range(len(self)):
            yield self.word_at(i), self.mats[i]

    def nearest(self, v: np.ndarray) -> tuple[int, float]:
        """Exact operator-norm nearest entry: (index, distance).

        A probe window seeds the best distance; the final window
        |s_entry - s_target| <= best provably contains the true argmin.
        """
        v = np.asarray(v, dtype=np.complex128)
        v8 = v.reshape(4).view(np.float64)
        s_t = float(np.sqrt(np.clip(2.0 - np.real(v[0, 0] + v[1, 1]), 0.0, 4.0)))
        pos = int(np.searchsorted(self._s_sorted, s_t))
        lo0, hi0 = max(0, pos - 64), min(len(self), pos + 64)
        probe = self._s_order[lo0:hi0]
        d2 = 2.0 - self._flat[probe] @ v8
        best = float(np.sqrt(max(float(d2.min()), 0.0)))
        lo = int(np.searchsorted(self._s_sorted, s_t - best))
        hi = int(np.searchsorted(self._s_sorted, s_t + best, side="right"))
        window = self._s_order[lo:hi]
        if len(window) == 0:
            window = probe
        d2 = 2.0 - self._flat[window] @ v8
        dmin = float(d2.min())
        ties = window[d2 <= dmin]
        if len(ties) > 1:
            # Shorter word first, then lexicographic letter sequence.
            def key(i):
                w = self.word_at(int(i))
                return (len(w), w.letters)

            idx = int(min(ties, key=key))
        else:
            idx = int(ties[0])
        return idx, float(np.sqrt(max(dmin, 0.0)))

    def covering_radius(self, samples: int = 200, seed: int = 0) -> float:
        """Sampled estimate of the worst base-approximation distance."""
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(samples):
            q = rng.standard_normal(4)
            q /= np.linalg.norm(q)
            v = np.array(
                [[q[0] - 1.0j * q[3], -q[2] - 1.0j * q[1]],
                 [q[2] - 1.0j * q[1], q[0] + 1.0j * q[3]]]
            )
            worst = max(worst, self.nearest(v)[1])
        return worst

    def save(self, path) -> None:
        import json

        np.savez(
            path,
            mats=self.mats,
            parent=self.parent,
            code=self.code,
            length=self.length,
            max_word_length=np.array([self.max_word_length]),
            gate_set=np.array([json.dumps(self.gate_set.to_json(), sort_keys=True)]),
        )

    @classmethod
    def load(cls, path) -> "BasicNet":
        import json

        with np.load(path, allow_pickle=False) as z:
            gs = GateSet.from_json(json.loads(str(z["gate_set"][0])))
            return cls(
                gs,
                int(z["max_word_length"][0]),
                z["mats"],
                z["parent"],
                z["code"],
                z["length"],
            )


def _round_keys(mats: np.ndarray) -> np.ndarray:
    """Quantized byte keys for exact-collision dedup at DEDUP_TOL resolution."""
    flat = mats.reshape(len(mats), 4).view(np.float64)
    q = np.ascontiguousarray(np.round(flat / DEDUP_TOL).astype(np.int64))
    return q.view(np.dtype((np.void, q.dtype.itemsize * q.shape[1]))).reshape(-1)


def build_net(gate_set: GateSet, max_len: int, cap: int = DEFAULT_NET_CAP) -> BasicNet:
    """Enumerate all words of length <= max_len over letters and inverses.

    Immediate back-tracking (a letter followed by its own inverse) is
    pruned; remaining exact collisions are removed by quantized-key
    dedup and near-collisions (< 1e-6 in operator norm) by a
    distance-to-identity window pass, always keeping the earlier
    (shorter) word.  Raises NetTooLarge beyond ``cap`` entries.
    """
    if max_len < 0:
        raise InvalidInput("max_len must be >= 0")
    n_letters = len(gate_set.labels)
    ext = np.empty((2 * n_letters, 2, 2), dtype=np.complex128)
    for i, m in enumerate(gate_set.matrices):
        ext[2 * i] = m
        ext[2 * i + 1] = m.conj().T

    mats = [np.eye(2, dtype=np.complex128)[None, :, :]]
    parent = [np.array([-1], dtype=np.int64)]
    code = [np.array([-1], dtype=np.int16)]
    length = [np.array([0], dtype=np.int32)]
    keys = [_round_keys(mats[0])]
    total = 1

    frontier = np.array([0], dtype=np.int64)
    for level in range(1, max_len + 1):
        if len(frontier) == 0:
            break
        prev_mats = np.concatenate(mats)[frontier]
        prev_codes = np.concatenate(code)[frontier]
        # Parent-major extension keeps enumeration in prefix order.
        cand = np.einsum("mij,ejk->meik", prev_mats, ext)
        cand = cand.reshape(-1, 2, 2)
        cand_parent = np.repeat(frontier, 2 * n_letters)
        cand_code = np.tile(np.arange(2 * n_letters, dtype=np.int16), len(frontier))
        keep = prev_codes[:, None] != (np.arange(2 * n_letters, dtype=np.int16) ^ 1)[None, :]
        keep = keep.reshape(-1)
        cand, cand_parent, cand_code = cand[keep], cand_parent[keep], cand_code[keep]

        acc_keys = np.concatenate(keys)
        cand_keys = _round_keys(cand)
        all_keys = np.concatenate([acc_keys, cand_keys])
        _, first = np.unique(all_keys, return_index=True)
        survive = np.zeros(len(all_keys), dtype=bool)
        survive[first] = True
        survive = survive[len(acc_keys):]
        cand, cand_parent, cand_code, cand_keys = (
            cand[survive], cand_parent[survive], cand_code[survive], cand_keys[survive],
        )

        if len(cand):
            acc_mats = np.concatenate(mats)
            acc_s = _s_values(acc_mats)
            order = np.argsort(acc_s, kind="stable")
            s_sorted = acc_s[order]
            cand_s = _s_values(cand)
            lo = np.searchsorted(s_sorted, cand_s - DEDUP_TOL)
            hi = np.searchsorted(s_sorted, cand_s + DEDUP_TOL, side="right")
            counts = hi - lo
            hit = np.flatnonzero(counts > 0)
            drop = np.zeros(len(cand), dtype=bool)
            if len(hit):
                reps = counts[hit]
                pair_c = np.repeat(hit, reps)
                offs = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
                pair_a = order[np.repeat(lo[hit], reps) + offs]
                cf = cand.reshape(len(cand), 4).view(np.float64)
                af = acc_mats.reshape(len(acc_mats), 4).view(np.float64)
                d2 = 2.0 - np.einsum("ij,ij->i", cf[pair_c], af[pair_a])
                close = d2 < DEDUP_TOL**2
                if close.any():
                    drop[np.unique(pair_c[close])] = True
            if drop.any():
                keep2 = ~drop
                cand, cand_parent, cand_code, cand_keys = (
                    cand[keep2], cand_parent[keep2], cand_code[keep2], cand_keys[keep2],
                )

        if total + len(cand) > cap:
            raise NetTooLarge(
                f"net would exceed the cap of {cap} entries at word length {level}"
            )
        start = total
        total += len(cand)
        mats.append(cand)
        parent.append(cand_parent)
        code.append(cand_code)
        length.append(np.full(len(cand), level, dtype=np.int32))
        keys.append(cand_keys)
        frontier = np.arange(start, total, dtype=np.int64)

    return BasicNet(
        gate_set,
        max_len,
        np.concatenate(mats),
        np.concatenate(parent),
        np.concatenate(code),
        np.concatenate(length),
    )


def base_approx(v, net: BasicNet) -> GateWord:
    """Net entry minimizing the operator-norm distance to ``v`` (special unitary)."""
    idx, _ = net.nearest(as_matrix(v))
    return net.word_at(idx)


def _rotation_angle(delta: np.ndarray) -> float:
    """Rotation parameter (twice the eigen-angle) of an SU(2) element."""
    c = 0.5 * float(np.real(delta[0, 0] + delta[1, 1]))
    return 2.0 * float(np.arccos(np.clip(c, -1.0, 1.0)))


def _balanced_pair(delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Axis-angle balanced commutator construction (no regime check)."""
    a, vec = bloch_components(delta)
    alpha = float(np.arccos(np.clip(a, -1.0, 1.0)))
    vnorm = float(np.linalg.norm(vec))
    if alpha < 1e-12 or vnorm < 1e-15:
        eye = np.eye(2, dtype=np.complex128)
        return eye.copy(), eye.copy()
    axis = vec / vnorm
    phi = 2.0 * float(np.arcsin(np.sqrt(np.clip(np.sin(alpha / 2.0), 0.0, 1.0))))
    a0 = rotation((1.0, 0.0, 0.0), phi)
    b0 = rotation((0.0, 1.0, 0.0), phi)
    w = a0 @ b0 @ a0.conj().T @ b0.conj().T
    _, wvec = bloch_components(w)
    wnorm = float(np.linalg.norm(wvec))
    waxis = wvec / wnorm
    dot = float(np.clip(np.dot(waxis, axis), -1.0, 1.0))
    if dot >= 1.0 - 1e-15:
        s = np.eye(2, dtype=np.complex128)
    elif dot <= -1.0 + 1e-15:
        # Opposite axes: rotate by pi about anything perpendicular to the target.
        perp = np.cross(axis, (1.0, 0.0, 0.0))
        if np.linalg.norm(perp) < 1e-9:
            perp = np.cross(axis, (0.0, 1.0, 0.0))
        s = rotation(perp, np.pi)
    else:
        k = np.cross(waxis, axis)
        s = rotation(k / np.linalg.norm(k), float(np.arccos(dot)))
    return s @ a0 @ s.conj().T, s @ b0 @ s.conj().T


def group_commutator_decompose(delta) -> tuple[np.ndarray, np.ndarray]:
    """Balanced A, B in SU(2) with A B A^-1 B^-1 = delta.

    Requires the small-step regime (rotation angle <= pi/2); the returned
    rotations have angle O(sqrt(angle(delta))), axes fixed to the x/y pair
    conjugated onto the target axis.
    """
    delta = _as_su2(delta)
    if _rotation_angle(delta) > np.pi / 2.0 + 1e-12:
        raise OutOfRegime(
            f"rotation angle {_rotation_angle(delta):.4f} exceeds pi/2"
        )
    return _balanced_pair(delta)


def _as_su2(v) -> np.ndarray:
    v = as_matrix(v)
    if v.shape != (2, 2):
        raise InvalidInput(f"expected a 2x2 matrix, got {v.shape}")
    return v


class _SkSession:
    """One sk_approximate run: memoized fixed-depth recursion over the net."""

    def __init__(self, net: BasicNet):
        self.net = net
        self.memo: dict = {}

    def run(self, target: np.ndarray, eps: float, depth: int):
        best = None
        for d in range(depth + 1):
            res = self._go(target, d)
            if best is None or res[2] < best[2]:
                best = res
            if best[2] <= eps:
                break
        return best

    def _go(self, target: np.ndarray, d: int):
        key = (target.tobytes(), d)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if d == 0:
            idx, err = self.net.nearest(target)
            res = (self.net.word_at(idx), self.net.mats[idx], err)
        else:
            prev_w, prev_m, prev_e = self._go(target, d - 1)
            delta = target @ prev_m.conj().T
            if _rotation_angle(delta) > np.pi / 2.0:
                res = (prev_w, prev_m, prev_e)
            else:
                a, b = _balanced_pair(delta)
                wa, ma, _ = self._go(a, d - 1)
                wb, mb, _ = self._go(b, d - 1)
                m = ma @ mb @ ma.conj().T @ mb.conj().T @ prev_m
                e = _su2_dist_formula(target, m)
                if e < prev_e:
                    res = (wa + wb + wa.inverse() + wb.inverse() + prev_w, m, e)
                else:
                    res = (prev_w, prev_m, prev_e)
        self.memo[key] = res
        return res


def sk_approximate(v, eps: float, net: BasicNet, depth: int = 5) -> GateWord:
    """Word over the net's alphabet within ``eps`` of ``v`` in operator norm.

    Iteratively deepens the commutator recursion up to ``depth``, stopping
    as soon as the target accuracy is met; raises AccuracyNotReached (with
    the best achieved distance and word) if the budget cannot be met.
    """
    word, err = sk_approximate_with_error(v, eps, net, depth)
    return word


def sk_approximate_with_error(v, eps: float, net: BasicNet, depth: int = 5):
    """Like sk_approximate, also returning the verified achieved distance."""
    v = _as_su2(v)
    if not (0.0 < eps < 1.0):
        raise InvalidInput(f"eps must lie in (0, 1), got {eps}")
    if depth < 0:
        raise InvalidInput("depth must be >= 0")
    word, _, _ = _SkSession(net).run(v, eps, depth)
    achieved = su2_distance(v, evaluate_word(word, net.gate_set))
    if achieved > eps:
        raise AccuracyNotReached(
            f"achieved {achieved:.3e} > requested {eps:.3e} at depth {depth}",
            achieved=achieved,
            word=word,
        )
    return word, achieved
