"""Small dense complex linear algebra on labeled qubit registers.

Matrices are plain ``numpy`` ``complex128`` arrays. Multi-qubit states are
:class:`StateVector` values carrying an ordered tuple of qubit labels; the
first label is the most significant bit of the amplitude index, so over
labels ``(5, 6)`` index ``2`` is ``|10>`` (qubit 5 set).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .config import DEFAULT
from .errors import ConvergenceError, LabelMismatch, NormExceeded, SingularMatrix

Label = Hashable


def as_matrix(entries, *, square: bool = False) -> np.ndarray:
    """Validate ``entries`` as a finite 2-D complex matrix (copied, read-only)."""
    m = np.array(entries, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over an ordered list of distinct qubit labels."""

    labels: tuple[Label, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise LabelMismatch(f"duplicate qubit labels in {labels}")
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2 ** len(labels):
            raise ValueError(
                f"{len(labels)} labels need {2 ** len(labels)} amplitudes, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amps", amps)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = DEFAULT.normalization) -> bool:
        return abs(float(np.vdot(self.amps, self.amps).real) - 1.0) <= tol

    def tensor(self, other: StateVector) -> StateVector:
        """``self ⊗ other`` with labels concatenated."""
        return StateVector(self.labels + other.labels, np.kron(self.amps, other.amps))

    def reorder(self, labels: Sequence[Label]) -> StateVector:
        """Same state, amplitudes permuted into the given label order."""
        labels = tuple(labels)
        if len(labels) != len(self.labels) or set(labels) != set(self.labels):
            raise LabelMismatch(f"cannot reorder {self.labels} as {labels}")
        axes = [self.labels.index(lab) for lab in labels]
        t = self.amps.reshape((2,) * self.num_qubits).transpose(axes)
        return StateVector(labels, t.reshape(-1))

    def relabel(self, labels: Sequence[Label]) -> StateVector:
        """Same amplitudes under new names (no permutation)."""
        return StateVector(tuple(labels), self.amps)

    def to_dict(self, tol: float = 0.0) -> dict[str, complex]:
        """Bitstring -> amplitude, dropping entries with ``|amp| <= tol``."""
        n = self.num_qubits
        return {
            format(k, f"0{n}b") if n else "": complex(a)
            for k, a in enumerate(self.amps)
            if abs(a) > tol
        }


def basis_state(labels: Sequence[Label], index: int) -> StateVector:
    labels = tuple(labels)
    amps = np.zeros(2 ** len(labels), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(labels, amps)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def inner(bra: StateVector, ket: StateVector) -> complex:
    """Full inner product ``<bra|ket>``; ket is reordered to bra's labels."""
    return complex(np.vdot(bra.amps, ket.reorder(bra.labels).amps))


def partial_inner(bra: StateVector, psi: StateVector) -> StateVector:
    """Project ``psi`` onto ``bra`` over bra's qubits, leaving the rest.

    The result lives on psi's labels minus bra's labels, in psi's order, and
    is generally unnormalized. If bra covers every qubit of psi the result is
    a 0-qubit state whose single amplitude is ``<bra|psi>``.
    """
    missing = [lab for lab in bra.labels if lab not in psi.labels]
    if missing:
        raise LabelMismatch(f"labels {missing} of the bra are not in {psi.labels}")
    k = bra.num_qubits
    psi_axes = [psi.labels.index(lab) for lab in bra.labels]
    out = np.tensordot(
        bra.amps.conj().reshape((2,) * k),
        psi.amps.reshape((2,) * psi.num_qubits),
        axes=(list(range(k)), psi_axes),
    )
    rest = tuple(lab for lab in psi.labels if lab not in bra.labels)
    return StateVector(rest, np.asarray(out).reshape(-1))


def apply(m, state: StateVector, targets: Sequence[Label] | None = None) -> StateVector:
    """Apply matrix ``m`` to the qubits ``targets`` (default: all, in order)."""
    m = as_matrix(m, square=True)
    targets = state.labels if targets is None else tuple(targets)
    if m.shape[0] != 2 ** len(targets):
        raise ValueError(f"{m.shape} operator does not act on {len(targets)} qubits")
    rest = [lab for lab in state.labels if lab not in targets]
    ordered = state.reorder(tuple(targets) + tuple(rest))
    t = ordered.amps.reshape(2 ** len(targets), -1)
    return StateVector(ordered.labels, (m @ t).reshape(-1)).reorder(state.labels)


# -- 4x4 analysis -----------------------------------------------------------


def determinant(m) -> complex:
    """Determinant: closed form for n <= 3, LU with partial pivoting above."""
    a = np.array(as_matrix(m, square=True))
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return complex(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    det = 1.0 + 0.0j
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if a[pivot, col] == 0:
            return 0.0j
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
    return complex(det)


def singular_values(m, tol: float = DEFAULT.jacobi, max_sweeps: int = DEFAULT.jacobi_max_sweeps):
    """Singular values in descending order.

    Cyclic Jacobi diagonalization of ``m†m`` carried out in one-sided form:
    each rotation is chosen from the Gram entries ``(m†m)[p,q]`` and applied
    to the columns of ``m``, so tiny singular values keep full absolute
    accuracy instead of passing through a square root of rounding noise.
    Stops once every off-diagonal Gram entry is below ``tol`` (scaled by
    the Frobenius norm squared when that exceeds one).
    """
    a = np.array(as_matrix(m), dtype=np.complex128)
    n = a.shape[1]
    threshold = tol * max(1.0, float(np.vdot(a, a).real))
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                gamma = np.vdot(a[:, p], a[:, q])
                g = abs(gamma)
                off = max(off, g)
                if g == 0.0:
                    continue
                alpha = np.vdot(a[:, p], a[:, p]).real
                beta = np.vdot(a[:, q], a[:, q]).real
                # tan of the rotation angle, written so a subnormal g cannot overflow
                d = beta - alpha
                t = math.copysign(2.0 * g, d) / (abs(d) + math.hypot(d, 2.0 * g))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                ap = a[:, p].copy()
                aq = a[:, q] * np.exp(-1j * np.angle(gamma))  # makes the Gram entry real
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
        if off < threshold:
            return np.sort(np.linalg.norm(a, axis=0))[::-1]
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def is_unitary(m, tol: float = DEFAULT.identity) -> bool:
    m = as_matrix(m, square=True)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) <= tol


def inverse(m, singular_tol: float = DEFAULT.singular) -> np.ndarray:
    m = as_matrix(m, square=True)
    s = singular_values(m)
    if s.size == 0 or s[-1] <= singular_tol:
        raise SingularMatrix(f"smallest singular value {s[-1] if s.size else 0:.3e} <= {singular_tol}")
    out = np.linalg.solve(m, np.eye(m.shape[0], dtype=np.complex128))
    out.setflags(write=False)
    return out


def dilation_unitary(m, slack: float = DEFAULT.singular) -> np.ndarray:
    """Unitary ``U`` of twice the size whose top-left block is ``m``.

    ``U = [[m, (I - m m†)^½], [(I - m†m)^½, -m†]]`` with both square roots
    taken through the SVD ``m = W Σ V†``. With the ancilla as the most
    significant qubit and prepared in ``|0>``, the ancilla-``|0>`` branch of
    ``U (|0> ⊗ v)`` is ``m v``.
    """
    m = as_matrix(m, square=True)
    n = m.shape[0]
    w, sig, vh = np.linalg.svd(m)
    if sig.size and sig[0] > 1.0 + slack:
        raise NormExceeded(f"operator norm {sig[0]:.12g} exceeds 1")
    root = np.sqrt(np.clip(1.0 - np.clip(sig, 0.0, 1.0) ** 2, 0.0, 1.0))
    left = (w * root) @ w.conj().T
    right = (vh.conj().T * root) @ vh
    u = np.empty((2 * n, 2 * n), dtype=np.complex128)
    u[:n, :n] = m
    u[:n, n:] = left
    u[n:, :n] = right
    u[n:, n:] = -m.conj().T
    u.setflags(write=False)
    return u
