"""Brute-force simulation of two-qubit teleportation through a four-qubit channel.

Alice holds the unknown state on qubits (1, 2) and channel qubits (3, 4);
she measures (1,3) and (2,4) in the Bell basis and sends the two outcome
indices to Bob, who holds (5, 6). Everything here works on the explicit
64-amplitude state so that it can serve as an independent check on the
operator algebra in :mod:`teleport4.sigma`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bellkit import g_state
from .channel import Channel, random_amplitudes
from .config import DEFAULT
from .errors import NormalizationError, NotUnitary, OracleMismatch, SingularOperator
from .qmath import StateVector, dilation_unitary, inverse, is_unitary, partial_inner, singular_values
from .sigma import PAIRS, INPUT_LABELS, TransformOp, Verdict, classify_operator, extract_all

SYSTEM_LABELS = (1, 2, 3, 4, 5, 6)
ORACLE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class InputState:
    """The unknown two-qubit state ``x0|00> + x1|01> + x2|10> + x3|11>`` on qubits (1,2)."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape != (4,) or not np.all(np.isfinite(amps)):
            raise ValueError("an input state has 4 finite complex amplitudes")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def checked(cls, amps, tol: float = DEFAULT.normalization) -> InputState:
        state = cls(amps)
        norm2 = float(np.vdot(state.amps, state.amps).real)
        if abs(norm2 - 1.0) > tol:
            raise NormalizationError(f"input state squared norm {norm2:.12g} is not 1 within {tol:g}")
        return state

    @classmethod
    def random(cls, seed: int) -> InputState:
        return cls(random_amplitudes(seed, 4))

    @property
    def vector(self) -> StateVector:
        return StateVector(INPUT_LABELS, self.amps)


class Mode(str, enum.Enum):
    INVERSE = "inverse"
    FILTER = "filter"


@dataclass(frozen=True, eq=False)
class Correction:
    state: np.ndarray | None  # None when the filter failed
    success_probability: float


@dataclass(frozen=True, eq=False)
class OutcomeRecord:
    i: int
    j: int
    probability: float
    bob_state_raw: np.ndarray
    bob_state_corrected: np.ndarray | None
    fidelity: float
    filter_success_probability: float
    status: str  # "inverse", "filter" or "skipped"
    verdict: Verdict


@dataclass(frozen=True, eq=False)
class RunStats:
    trials: int
    seed: int
    outcome_counts: np.ndarray  # shape (4, 4), indexed [i-1, j-1]
    successes: int
    empirical_success_rate: float
    mean_fidelity_on_success: float | None
    verdict: Verdict


def fidelity(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return float(min(1.0, abs(np.vdot(a, b)) ** 2))


def compose_system(chi: InputState, c: Channel) -> StateVector:
    return chi.vector.tensor(c.state)


def project_outcome(psi: StateVector, i: int, j: int) -> StateVector:
    """``<g^ij|psi>`` over qubits (5,6); squared norm is the outcome probability."""
    return partial_inner(g_state(i, j), psi)


def outcome_probabilities(
    chi: InputState, c: Channel, ops: dict[tuple[int, int], TransformOp] | None = None
) -> np.ndarray:
    """4x4 table of Bell-outcome probabilities, computed twice and cross-checked."""
    ops = extract_all(c) if ops is None else ops
    psi = compose_system(chi, c)
    via_ops = np.empty((4, 4))
    direct = np.empty((4, 4))
    for i, j in PAIRS:
        via_ops[i - 1, j - 1] = np.linalg.norm(ops[i, j](chi.amps)) ** 2 / 16.0
        direct[i - 1, j - 1] = project_outcome(psi, i, j).norm() ** 2
    gap = float(np.max(np.abs(via_ops - direct)))
    if gap > ORACLE_TOL:
        raise OracleMismatch(f"operator and projection probabilities differ by {gap:.3e}")
    if abs(direct.sum() - 1.0) > ORACLE_TOL:
        raise OracleMismatch(f"outcome probabilities sum to {direct.sum():.15g}")
    return direct


def bob_correction(op: TransformOp, bob_state_raw, mode: Mode | str) -> Correction:
    """Undo ``op`` on Bob's normalized post-measurement state.

    ``inverse`` applies ``op⁻¹`` and always succeeds; it needs a unitary
    operator. ``filter`` applies ``M = s_min op⁻¹`` through a unitary on
    Bob's qubits plus an ancilla prepared in ``|0>``; reading the ancilla
    as ``|0>`` (probability ``‖M raw‖²``) leaves the input state, anything
    else is a failed run.
    """
    mode = Mode(mode)
    raw = np.asarray(bob_state_raw, dtype=np.complex128)
    if mode is Mode.INVERSE:
        if not is_unitary(op.m):
            raise NotUnitary(f"σ^{op.i}{op.j} is not unitary; use the filter mode")
        return Correction(inverse(op.m) @ raw, 1.0)

    s_min = float(singular_values(op.m)[-1])
    if s_min <= DEFAULT.singular:
        raise SingularOperator(f"σ^{op.i}{op.j} is singular (s_min = {s_min:.3e})")
    u = dilation_unitary(s_min * inverse(op.m))
    # ancilla is the most significant qubit: index = 4 * a + k
    out = u @ np.concatenate([raw, np.zeros(4, dtype=np.complex128)])
    branch = out[:4]
    p = float(np.vdot(branch, branch).real)
    if p <= 0.0:
        return Correction(None, 0.0)
    return Correction(branch / np.sqrt(p), min(p, 1.0))


def _mode_for(verdict: Verdict) -> Mode | None:
    return {Verdict.PERFECT: Mode.INVERSE, Verdict.PROBABILISTIC: Mode.FILTER}.get(verdict)


def run_deterministic(
    chi: InputState, c: Channel, tol: float = DEFAULT.classify
) -> list[OutcomeRecord]:
    """Enumerate all 16 Bell outcomes and correct each one.

    The correction mode follows the channel's classification: inverse for
    Perfect, ancilla filter for Probabilistic, none for Impossible. Skipped
    records report the fidelity of Bob's uncorrected state.
    """
    ops = extract_all(c)
    verdict = classify_operator(ops[1, 1].m, tol).verdict
    mode = _mode_for(verdict)
    probs = outcome_probabilities(chi, c, ops)
    psi = compose_system(chi, c)
    records = []
    for i, j in PAIRS:
        proj = project_outcome(psi, i, j).amps
        norm = float(np.linalg.norm(proj))
        raw = proj / norm if norm > 0.0 else np.zeros(4, dtype=np.complex128)
        if mode is None:
            corrected, fid, p_filter, status = None, fidelity(chi.amps, raw), 0.0, "skipped"
        else:
            fix = bob_correction(ops[i, j], raw, mode)
            corrected = fix.state
            fid = 0.0 if corrected is None else fidelity(chi.amps, corrected)
            p_filter, status = fix.success_probability, mode.value
        records.append(
            OutcomeRecord(
                i=i,
                j=j,
                probability=float(probs[i - 1, j - 1]),
                bob_state_raw=raw,
                bob_state_corrected=corrected,
                fidelity=fid,
                filter_success_probability=p_filter,
                status=status,
                verdict=verdict,
            )
        )
    return records


def total_success_probability(records: list[OutcomeRecord]) -> float:
    return float(sum(r.probability * r.filter_success_probability for r in records))


def run_sampled(
    chi: InputState, c: Channel, seed: int, trials: int, tol: float = DEFAULT.classify
) -> RunStats:
    """Monte Carlo replay of the protocol.

    Outcomes are drawn by inverse CDF over the 16-entry probability table
    and the ancilla reading as an independent Bernoulli trial per shot. The
    two streams are spawned from ``SeedSequence(seed)`` so the result depends
    only on ``seed`` and ``trials``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    records = run_deterministic(chi, c, tol)
    probs = np.array([r.probability for r in records])
    p_ok = np.array([r.filter_success_probability for r in records])
    fids = np.array([r.fidelity for r in records])

    outcome_seq, ancilla_seq = np.random.SeedSequence(seed).spawn(2)
    u = np.random.default_rng(outcome_seq).random(trials)
    v = np.random.default_rng(ancilla_seq).random(trials)
    cdf = np.cumsum(probs)
    idx = np.minimum(np.searchsorted(cdf, u * cdf[-1], side="right"), 15)
    ok = v < p_ok[idx]

    counts = np.bincount(idx, minlength=16).reshape(4, 4)
    n_ok = int(ok.sum())
    mean_fid = float(fids[idx[ok]].mean()) if n_ok else None
    return RunStats(
        trials=trials,
        seed=seed,
        outcome_counts=counts,
        successes=n_ok,
        empirical_success_rate=n_ok / trials,
        mean_fidelity_on_success=mean_fid,
        verdict=records[0].verdict,
    )


def oracle_equivalence_defect(chi: InputState, c: Channel) -> float:
    """Worst phase-aligned gap between projected and operator-predicted Bob states."""
    ops = extract_all(c)
    psi = compose_system(chi, c)
    worst = 0.0
    for i, j in PAIRS:
        proj = project_outcome(psi, i, j).amps
        pred = ops[i, j](chi.amps)
        np_, nq = np.linalg.norm(proj), np.linalg.norm(pred)
        if np_ == 0.0 or nq == 0.0:
            worst = max(worst, abs(np_ - nq / 4.0))
            continue
        a, b = proj / np_, pred / nq
        phase = np.vdot(b, a)
        phase = phase / abs(phase) if abs(phase) > 0 else 1.0
        worst = max(worst, float(np.max(np.abs(a - phase * b))))
    return worst
