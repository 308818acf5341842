"""Four-qubit channel states shared between Alice (qubits 3, 4) and Bob (5, 6).

Channel file format (UTF-8 text)::

    # comment lines start with '#'; blank lines are ignored
    0000 0.7071067811865476 0.0
    0001 0.0 0.0
    ...

Exactly sixteen data lines, one per bitstring over qubits (3, 4, 5, 6) in
that order, each followed by the real and imaginary amplitude.

Random channels and random input states come from numpy's PCG64 generator
(``numpy.random.default_rng(seed)``): ``2n`` standard normals, the first
``n`` taken as real parts and the next ``n`` as imaginary parts, then
normalized.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bellkit import bell_state, check_index
from .config import DEFAULT
from .errors import BadParameter, NormalizationError, ParseError, UnknownName
from .qmath import StateVector

CHANNEL_LABELS = (3, 4, 5, 6)
ALICE_LABELS = (3, 4)
BOB_LABELS = (5, 6)


@dataclass(frozen=True, eq=False)
class Channel:
    state: StateVector
    name: str | None = None

    def __post_init__(self) -> None:
        if self.state.labels != CHANNEL_LABELS:
            raise ValueError(f"channel must be over qubits {CHANNEL_LABELS}, got {self.state.labels}")

    @classmethod
    def from_amplitudes(cls, amps, name=None, *, norm_tol: float = DEFAULT.normalization):
        """Build a channel, rejecting amplitudes whose squared norm is off by more than ``norm_tol``."""
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if amps.shape != (16,):
            raise ValueError(f"a four-qubit channel has 16 amplitudes, got {amps.shape[0]}")
        norm2 = float(np.vdot(amps, amps).real)
        if not abs(norm2 - 1.0) <= norm_tol:
            raise NormalizationError(f"squared norm {norm2:.12g} is not 1 within {norm_tol:g}")
        return cls(StateVector(CHANNEL_LABELS, amps), name)

    @property
    def amps(self) -> np.ndarray:
        return self.state.amps

    @property
    def label(self) -> str:
        return self.name or "<unnamed>"


def _from_terms(terms: dict[str, complex], scale: float, name: str) -> Channel:
    amps = np.zeros(16, dtype=np.complex128)
    for bits, coeff in terms.items():
        amps[int(bits, 2)] = coeff * scale
    return Channel.from_amplitudes(amps, name, norm_tol=1e-12)


def yeo_chua() -> Channel:
    terms = {"0000": 1, "0011": -1, "0101": -1, "0110": 1, "1001": 1, "1010": 1, "1100": 1, "1111": 1}
    return _from_terms(terms, 1.0 / (2.0 * math.sqrt(2.0)), "yeo-chua")


def ghz4() -> Channel:
    # normalized with 1/sqrt(2); this is what reproduces diag(√2, 0, 0, √2)
    return _from_terms({"0000": 1, "1111": 1}, math.sqrt(0.5), "ghz4")


def w4() -> Channel:
    return _from_terms({"0001": 1, "0010": 1, "0100": 1, "1000": 1}, 0.5, "w4")


def cnot_channel() -> Channel:
    return _from_terms({"0000": 1, "0101": 1, "1011": 1, "1110": 1}, 0.5, "cnot-channel")


def bell_pairs(i: int = 1, j: int = 1) -> Channel:
    """``φ^i`` on (3,5) times ``φ^j`` on (4,6): the reducible two-pair channel."""
    try:
        i, j = check_index(i), check_index(j)
    except ValueError as exc:
        raise BadParameter(str(exc)) from exc
    state = bell_state(i, (3, 5)).tensor(bell_state(j, (4, 6))).reorder(CHANNEL_LABELS)
    return Channel(state, f"bell-pairs:i={i},j={j}")


def partial_pair(theta: float = math.pi / 6) -> Channel:
    """``cosθ|00> + sinθ|11>`` on (3,5) times ``φ^1`` on (4,6), for θ in (0, π/2)."""
    theta = float(theta)
    if not (0.0 < theta < math.pi / 2):
        raise BadParameter(f"theta must lie in (0, pi/2), got {theta!r}")
    pair35 = StateVector((3, 5), (math.cos(theta), 0.0, 0.0, math.sin(theta)))
    state = pair35.tensor(bell_state(1, (4, 6))).reorder(CHANNEL_LABELS)
    return Channel(state, f"partial-pair:theta={theta!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[..., Channel]
    params: tuple[str, ...]
    description: str


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("yeo-chua", yeo_chua, (), "Yeo-Chua genuine four-qubit channel (Eq. 6); perfect"),
        CatalogEntry("ghz4", ghz4, (), "four-qubit GHZ state (Eq. 9); impossible"),
        CatalogEntry("w4", w4, (), "four-qubit W state (Eq. 10); impossible"),
        CatalogEntry("cnot-channel", cnot_channel, (), "new channel with C-NOT operator (Eq. 11); perfect"),
        CatalogEntry("bell-pairs", bell_pairs, ("i", "j"), "two Bell pairs on (3,5),(4,6); i,j in 1..4 (default 1,1)"),
        CatalogEntry(
            "partial-pair",
            partial_pair,
            ("theta",),
            "partially entangled pair on (3,5) with a Bell pair on (4,6); theta in (0,pi/2) (default pi/6)",
        ),
    )
}


def catalog(name: str, **params) -> Channel:
    """Build a named channel; ``bell-pairs`` takes ``i, j`` and ``partial-pair`` takes ``theta``."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown channel {name!r}; known: {', '.join(CATALOG)}") from None
    extra = set(params) - set(entry.params)
    if extra:
        raise BadParameter(f"{name} does not take parameters {sorted(extra)}")
    return entry.build(**params)


_REF_RE = re.compile(r"^(?P<name>[a-z0-9-]+)(?::(?P<params>.*))?$")


def parse_catalog_ref(ref: str) -> Channel:
    """Resolve ``name`` or ``name:key=value,...`` (e.g. ``partial-pair:theta=0.5``)."""
    match = _REF_RE.match(ref.strip())
    if not match:
        raise UnknownName(f"malformed channel name {ref!r}")
    name = match.group("name")
    params: dict[str, float | int] = {}
    if match.group("params"):
        for item in match.group("params").split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or not key:
                raise BadParameter(f"expected key=value in {ref!r}, got {item!r}")
            try:
                params[key] = int(value) if key in ("i", "j") else float(value)
            except ValueError:
                raise BadParameter(f"bad value for {key} in {ref!r}: {value!r}") from None
    return catalog(name, **params)


# -- file format --------------------------------------------------------------


def parse_channel(text: str, *, normalize: bool = False, name: str | None = None) -> Channel:
    amps = np.zeros(16, dtype=np.complex128)
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"line {lineno}: expected 'BBBB RE IM', got {raw!r}")
        bits, re_s, im_s = fields
        if len(bits) != 4 or set(bits) - {"0", "1"}:
            raise ParseError(f"line {lineno}: bad basis label {bits!r}")
        if bits in seen:
            raise ParseError(f"line {lineno}: duplicate basis label {bits}")
        try:
            value = complex(float(re_s), float(im_s))
        except ValueError:
            raise ParseError(f"line {lineno}: amplitudes must be decimal reals, got {raw!r}") from None
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ParseError(f"line {lineno}: non-finite amplitude")
        seen.add(bits)
        amps[int(bits, 2)] = value
    if len(seen) != 16:
        raise ParseError(f"expected 16 basis lines, found {len(seen)}")
    if normalize:
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        amps = amps / norm
    return Channel.from_amplitudes(amps, name, norm_tol=DEFAULT.file_normalization)


def serialize_channel(c: Channel) -> str:
    lines = [f"# channel: {c.label}", "# qubits 3 4 5 6 | columns: bits re im"]
    for k, a in enumerate(c.amps):
        lines.append(f"{k:04b} {float(a.real)!r} {float(a.imag)!r}")
    return "\n".join(lines) + "\n"


# -- seeded randomness --------------------------------------------------------


def random_amplitudes(seed: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(2 * n)
    amps = z[:n] + 1j * z[n:]
    return amps / np.linalg.norm(amps)


def random_channel(seed: int) -> Channel:
    return Channel.from_amplitudes(random_amplitudes(seed, 16), f"random:{seed}")
