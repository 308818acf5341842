"""Bell states, the sixteen two-pair Bell products, and the Pauli factors.

Bell indices run 1..4 in the order ``Φ+, Φ-, Ψ+, Ψ-``. Pauli factors use the
same indexing: ``I, σz, σx, -iσy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Sequence

import numpy as np

from .qmath import StateVector, as_matrix

BELL_INDICES = (1, 2, 3, 4)

_R = 1.0 / np.sqrt(2.0)
_BELL_AMPS = {
    1: (_R, 0.0, 0.0, _R),
    2: (_R, 0.0, 0.0, -_R),
    3: (0.0, _R, _R, 0.0),
    4: (0.0, _R, -_R, 0.0),
}
_PAULI = {
    1: ((1, 0), (0, 1)),
    2: ((1, 0), (0, -1)),
    3: ((0, 1), (1, 0)),
    4: ((0, -1), (1, 0)),
}
PAULI_NAMES = {1: "I", 2: "Z", 3: "X", 4: "-iY"}

# measured pair (1,3) and (2,4); Alice's input qubits come first
G_LABELS = (1, 2, 3, 4)


def check_index(i: int) -> int:
    if isinstance(i, bool) or int(i) != i or i not in BELL_INDICES:
        raise ValueError(f"Bell index must be one of 1..4, got {i!r}")
    return int(i)


def bell_state(i: int, labels: Sequence[Hashable] = ("a", "b")) -> StateVector:
    return StateVector(tuple(labels), _BELL_AMPS[check_index(i)])


@lru_cache(maxsize=None)
def g_state(i: int, j: int) -> StateVector:
    """``φ^i`` on qubits (1,3) times ``φ^j`` on qubits (2,4), in label order (1,2,3,4)."""
    pair13 = bell_state(i, labels=(1, 3))
    pair24 = bell_state(j, labels=(2, 4))
    return pair13.tensor(pair24).reorder(G_LABELS)


@dataclass(frozen=True, eq=False)
class PauliFactor:
    index: int
    matrix: np.ndarray

    @property
    def name(self) -> str:
        return PAULI_NAMES[self.index]


def pauli_factor(i: int) -> PauliFactor:
    i = check_index(i)
    return PauliFactor(i, as_matrix(_PAULI[i]))


def _sign_table() -> dict[int, int]:
    # (F_i ⊗ I) φ^1 = sign_i φ^i
    phi1 = np.array(_BELL_AMPS[1])
    table = {}
    for i in BELL_INDICES:
        image = np.kron(pauli_factor(i).matrix, np.eye(2)) @ phi1
        overlap = np.vdot(_BELL_AMPS[i], image)
        if not np.isclose(abs(overlap), 1.0, atol=1e-12) or abs(overlap.imag) > 1e-12:
            raise AssertionError(f"Pauli factor {i} does not map φ^1 onto ±φ^{i}")
        table[i] = int(round(overlap.real))
    return table


BELL_SIGNS: dict[int, int] = _sign_table()
