"""Numerical tolerances.

All thresholds live here so that tests, library code and the CLI agree.
The classification tolerance can be overridden for the CLI through the
``TELEPORT4_TOL`` environment variable (a decimal real).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

TOL_ENV_VAR = "TELEPORT4_TOL"


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-9  # algebraic identities (unitarity, inverse, completeness)
    singular: float = 1e-10  # smallest singular value below this => singular
    jacobi: float = 1e-14  # off-diagonal stop for the Jacobi sweeps
    classify: float = 1e-9  # Perfect / Impossible decision band
    normalization: float = 1e-9  # normalized-state check
    file_normalization: float = 1e-6  # channel files and CLI input states
    jacobi_max_sweeps: int = 100


DEFAULT = Tolerances()


def from_env(base: Tolerances = DEFAULT) -> Tolerances:
    """Return ``base`` with ``classify`` replaced by ``$TELEPORT4_TOL`` if set."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return base
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOL_ENV_VAR} must be a decimal real, got {raw!r}") from exc
    if not (value > 0.0 and value < 1.0):
        raise ValueError(f"{TOL_ENV_VAR} must lie in (0, 1), got {raw!r}")
    return replace(base, classify=value)
