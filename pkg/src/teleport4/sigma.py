"""Transformation operators of a four-qubit channel and the teleportation verdict.

For Bell outcomes ``i`` on qubits (1,3) and ``j`` on (2,4), the operator
``σ^ij`` is the 4x4 matrix sending the input amplitudes ``(x0, x1, x2, x3)``
of qubits (1,2) to Bob's unnormalized state on (5,6), scaled so that

    |χ>_12 ⊗ |φ>_3456 = 1/4 Σ_ij |g^ij>_1234 ⊗ (σ^ij |χ>)_56.

A channel teleports every two-qubit state perfectly when the operators are
unitary, probabilistically when they are merely invertible, and not at all
when they are singular.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import channel as _channel
from .bellkit import BELL_INDICES, check_index, g_state
from .channel import BOB_LABELS, Channel
from .config import DEFAULT
from .qmath import StateVector, as_matrix, basis_state, determinant, partial_inner, singular_values

INPUT_LABELS = (1, 2)
PAIRS = tuple(itertools.product(BELL_INDICES, BELL_INDICES))


@dataclass(frozen=True, eq=False)
class TransformOp:
    i: int
    j: int
    m: np.ndarray

    def __call__(self, chi) -> np.ndarray:
        return self.m @ np.asarray(chi, dtype=np.complex128)


class Verdict(str, enum.Enum):
    PERFECT = "Perfect"
    PROBABILISTIC = "Probabilistic"
    IMPOSSIBLE = "Impossible"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    success_probability: float
    det_magnitude: float
    singular_values: tuple[float, float, float, float]
    borderline: bool = False  # within one decade outside a decision boundary


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    channel_name: str
    sigma11: np.ndarray
    classification: Classification
    completeness_defect: float
    pauli_relation_defect: float
    tol: float = DEFAULT.classify


def extract_sigma(c: Channel, i: int, j: int) -> TransformOp:
    """Column ``k`` is ``4 <g^ij|_1234 (|k>_12 ⊗ |φ>_3456)`` expressed over qubits (5,6)."""
    i, j = check_index(i), check_index(j)
    g = g_state(i, j)
    cols = []
    for k in range(4):
        psi = basis_state(INPUT_LABELS, k).tensor(c.state)
        bob = partial_inner(g, psi)
        assert bob.labels == BOB_LABELS
        cols.append(4.0 * bob.amps)
    return TransformOp(i, j, as_matrix(np.stack(cols, axis=1)))


def extract_all(c: Channel) -> dict[tuple[int, int], TransformOp]:
    return {(i, j): extract_sigma(c, i, j) for i, j in PAIRS}


def completeness_defect(ops: dict[tuple[int, int], TransformOp]) -> float:
    """Max-entry deviation of ``Σ σ†σ`` from ``16 I``."""
    total = sum(op.m.conj().T @ op.m for op in ops.values())
    return float(np.max(np.abs(total - 16.0 * np.eye(4))))


def reconstruction_defect(c: Channel, chi, ops: dict[tuple[int, int], TransformOp] | None = None) -> float:
    """Max-entry deviation between ``χ ⊗ φ`` and the resummed operator series."""
    ops = extract_all(c) if ops is None else ops
    target = StateVector(INPUT_LABELS, chi).tensor(c.state)
    acc = np.zeros(64, dtype=np.complex128)
    for (i, j), op in ops.items():
        term = g_state(i, j).tensor(StateVector(BOB_LABELS, op(chi)))
        acc += term.amps  # labels (1,2,3,4,5,6) already in target order
    return float(np.max(np.abs(acc / 4.0 - target.amps)))


# -- Pauli relation ----------------------------------------------------------

_CANDIDATES = {
    "I": np.eye(2, dtype=np.complex128),
    "Z": np.diag([1.0, -1.0]).astype(np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "iY": np.array([[0, 1], [-1, 0]], dtype=np.complex128),
    "-iY": np.array([[0, -1], [1, 0]], dtype=np.complex128),
}


@lru_cache(maxsize=None)
def pauli_assignment() -> tuple[tuple[str, np.ndarray], ...]:
    """Right factors ``W_1..W_4`` with ``σ^ij = σ^11 (W_i ⊗ W_j)`` for every channel.

    Fixed by direct extraction on the two-Bell-pair channel, whose ``σ^11``
    is the identity, so ``σ^i1 = W_i ⊗ I`` and ``σ^1j = I ⊗ W_j`` can be read
    off and matched against ``{I, σz, σx, ±iσy}``.
    """
    ref = extract_all(_channel.bell_pairs(1, 1))
    eye2 = np.eye(2)
    if not np.allclose(ref[1, 1].m, np.eye(4), atol=1e-12):
        raise AssertionError("two-Bell-pair channel should have identity σ^11")
    chosen = []
    for i in BELL_INDICES:
        hits = [
            name
            for name, w in _CANDIDATES.items()
            if np.allclose(ref[i, 1].m, np.kron(w, eye2), atol=1e-12)
            and np.allclose(ref[1, i].m, np.kron(eye2, w), atol=1e-12)
        ]
        if len(hits) != 1:
            raise AssertionError(f"no unique Pauli factor for index {i}: {hits}")
        chosen.append((hits[0], _CANDIDATES[hits[0]]))
    return tuple(chosen)


def pauli_relation_defect(ops: dict[tuple[int, int], TransformOp]) -> float:
    w = [mat for _, mat in pauli_assignment()]
    s11 = ops[1, 1].m
    return max(
        float(np.max(np.abs(op.m - s11 @ np.kron(w[i - 1], w[j - 1])))) for (i, j), op in ops.items()
    )


def verify_pauli_relation(c: Channel) -> float:
    """Largest entry deviation of ``σ^ij`` from ``σ^11 (W_i ⊗ W_j)`` over all 16 outcomes."""
    return pauli_relation_defect(extract_all(c))


# -- classification ------------------------------------------------------------


def classify_operator(m, tol: float = DEFAULT.classify) -> Classification:
    s = singular_values(m)
    det = abs(determinant(m))
    flat_gap = float(np.max(np.abs(s - 1.0)))
    s_min = float(s[-1])
    sv = tuple(float(x) for x in s)
    if flat_gap < tol:
        return Classification(Verdict.PERFECT, 1.0, det, sv)
    if s_min < tol:
        return Classification(Verdict.IMPOSSIBLE, 0.0, det, sv)
    borderline = flat_gap <= 10.0 * tol or s_min <= 10.0 * tol
    return Classification(Verdict.PROBABILISTIC, s_min**2, det, sv, borderline)


def classify(c: Channel, tol: float = DEFAULT.classify) -> Classification:
    """Verdict from ``σ^11`` alone; the other fifteen are ``σ^11`` times a unitary."""
    return classify_operator(extract_sigma(c, 1, 1).m, tol)


def analyze(c: Channel, tol: float = DEFAULT.classify) -> AnalysisReport:
    ops = extract_all(c)
    s11 = ops[1, 1].m
    return AnalysisReport(
        channel_name=c.label,
        sigma11=s11,
        classification=classify_operator(s11, tol),
        completeness_defect=completeness_defect(ops),
        pauli_relation_defect=pauli_relation_defect(ops),
        tol=tol,
    )
