"""Command-line front end.

    teleport4 catalog
    teleport4 analyze REF
    teleport4 operators REF [--all]
    teleport4 teleport REF --state S [--enumerate | --trials N --seed K]
    teleport4 verify REF|random:N

REF is a catalog name, optionally with parameters (``partial-pair:theta=0.5``,
``bell-pairs:i=2,j=3``), or ``@path`` to a channel file. Every command accepts
``--json``. Exit codes: 0 ok, 1 parse error, 2 validation error,
3 verification failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .channel import CATALOG, Channel, parse_catalog_ref, parse_channel, random_channel
from .config import DEFAULT, TOL_ENV_VAR, from_env
from .errors import BadParameter, NormalizationError, ParseError, Teleport4Error, UnknownName
from .protocol import (
    InputState,
    oracle_equivalence_defect,
    run_deterministic,
    run_sampled,
    total_success_probability,
)
from .sigma import PAIRS, analyze, completeness_defect, extract_all, pauli_assignment, pauli_relation_defect
from .sigma import reconstruction_defect

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_VERIFY, EXIT_INTERNAL = 0, 1, 2, 3, 4

VERIFY_TOLS = {
    "completeness": DEFAULT.identity,
    "pauli_relation": 1e-10,
    "reconstruction": 1e-10,
    "oracle_equivalence": 1e-10,
}
VERIFY_STATES_PER_CHANNEL = 4


class CliParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise CliParseError(message)


# -- formatting -----------------------------------------------------------------


def fnum(x: float, signed: bool = True) -> str:
    s = f"{x:+.12f}" if signed else f"{x:.12f}"
    if s.lstrip("+-") == "0.000000000000":
        s = "+0.000000000000" if signed else "0.000000000000"
    return s


def fcomplex(z: complex) -> str:
    return f"{fnum(z.real)}{fnum(z.imag)}i"


def format_matrix(m: np.ndarray, indent: str = "  ") -> str:
    return "\n".join(indent + " ".join(fcomplex(z) for z in row) for row in m)


def jcomplex(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def jmatrix(m: np.ndarray) -> list:
    return [[jcomplex(z) for z in row] for row in m]


def jvector(v) -> list | None:
    return None if v is None else [jcomplex(z) for z in v]


# -- argument resolution ----------------------------------------------------------


def resolve_channel(ref: str) -> Channel:
    if ref.startswith("@"):
        path = Path(ref[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read channel file {path}: {exc.strerror}") from None
        return parse_channel(text, name=path.name)
    if ref.startswith("random:"):
        return random_channel(_int_suffix(ref))
    return parse_catalog_ref(ref)


def _int_suffix(text: str) -> int:
    try:
        return int(text.split(":", 1)[1])
    except ValueError:
        raise ParseError(f"expected an integer after ':' in {text!r}") from None


def parse_state(text: str) -> InputState:
    if text.startswith("random:"):
        return InputState.random(_int_suffix(text))
    parts = text.split(",")
    if len(parts) != 8:
        raise ParseError(f"--state needs 8 comma-separated reals (4 re,im pairs), got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"--state values must be decimal reals: {text!r}") from None
    amps = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    state = InputState.checked(amps, tol=DEFAULT.file_normalization)
    return InputState(state.amps / np.linalg.norm(state.amps))


def channel_json(c: Channel) -> dict:
    return {"name": c.label, "amplitudes": jvector(c.amps)}


# -- commands ---------------------------------------------------------------------


def cmd_catalog(args) -> tuple[dict, str]:
    entries = [{"name": e.name, "params": list(e.params), "description": e.description} for e in CATALOG.values()]
    width = max(len(e["name"]) for e in entries)
    text = "\n".join(f"{e['name']:<{width}}  {e['description']}" for e in entries)
    return {"catalog": entries}, text


def cmd_analyze(args) -> tuple[dict, str]:
    c = resolve_channel(args.ref)
    r = analyze(c, args.tol)
    cl = r.classification
    payload = {
        "channel": channel_json(c),
        "tol": r.tol,
        "verdict": cl.verdict.value,
        "success_probability": cl.success_probability,
        "det_magnitude": cl.det_magnitude,
        "singular_values": list(cl.singular_values),
        "borderline": cl.borderline,
        "sigma11": jmatrix(r.sigma11),
        "defects": {"completeness": r.completeness_defect, "pauli_relation": r.pauli_relation_defect},
    }
    lines = [
        f"channel: {c.label}",
        "sigma11:",
        format_matrix(r.sigma11),
        "singular values: " + " ".join(fnum(s, signed=False) for s in cl.singular_values),
        f"|det|: {fnum(cl.det_magnitude, signed=False)}",
        f"verdict: {cl.verdict.value}" + ("  (borderline)" if cl.borderline else ""),
        f"success probability: {fnum(cl.success_probability, signed=False)}",
        f"completeness defect: {r.completeness_defect:.3e}",
        f"pauli relation defect: {r.pauli_relation_defect:.3e}",
    ]
    return payload, "\n".join(lines)


def cmd_operators(args) -> tuple[dict, str]:
    c = resolve_channel(args.ref)
    ops = extract_all(c)
    pairs = PAIRS if args.all else ((1, 1),)
    factors = [name for name, _ in pauli_assignment()]
    payload = {
        "channel": channel_json(c),
        "sigma11": jmatrix(ops[1, 1].m),
        "operators": [{"i": i, "j": j, "matrix": jmatrix(ops[i, j].m)} for i, j in pairs],
        "pauli_factors": factors,
        "defects": {"pauli_relation": pauli_relation_defect(ops)},
    }
    lines = [f"channel: {c.label}"]
    for i, j in pairs:
        lines += [f"sigma{i}{j}:", format_matrix(ops[i, j].m)]
    if args.all:
        lines.append(f"pauli factors W1..W4: {' '.join(factors)}")
        lines.append(f"pauli relation defect: {payload['defects']['pauli_relation']:.3e}")
    return payload, "\n".join(lines)


def cmd_teleport(args) -> tuple[dict, str]:
    c = resolve_channel(args.ref)
    chi = parse_state(args.state)
    head = {"channel": channel_json(c), "input_state": jvector(chi.amps)}
    if args.enumerate:
        records = run_deterministic(chi, c, args.tol)
        verdict = records[0].verdict.value
        total = total_success_probability(records)
        outcomes = [
            {
                "i": r.i,
                "j": r.j,
                "probability": r.probability,
                "fidelity": r.fidelity,
                "filter_success_probability": r.filter_success_probability,
                "status": r.status,
                "bob_state_raw": jvector(r.bob_state_raw),
                "bob_state_corrected": jvector(r.bob_state_corrected),
            }
            for r in records
        ]
        payload = {**head, "verdict": verdict, "total_success_probability": total, "outcomes": outcomes}
        lines = [f"channel: {c.label}", f"verdict: {verdict}", " i j  probability     fidelity        filter_p        status"]
        for r in records:
            lines.append(
                f" {r.i} {r.j}  {fnum(r.probability, False)}  {fnum(r.fidelity, False)}  "
                f"{fnum(r.filter_success_probability, False)}  {r.status}"
            )
        lines.append(f"total success probability: {fnum(total, False)}")
        return payload, "\n".join(lines)

    if args.trials < 1:
        raise BadParameter("--trials must be at least 1")
    st = run_sampled(chi, c, args.seed, args.trials, args.tol)
    stats = {
        "trials": st.trials,
        "seed": st.seed,
        "verdict": st.verdict.value,
        "empirical_outcome_counts": st.outcome_counts.reshape(-1).tolist(),
        "successes": st.successes,
        "empirical_success_rate": st.empirical_success_rate,
        "mean_fidelity_on_success": st.mean_fidelity_on_success,
    }
    mean_fid = "n/a" if st.mean_fidelity_on_success is None else fnum(st.mean_fidelity_on_success, False)
    lines = [
        f"channel: {c.label}",
        f"verdict: {st.verdict.value}",
        f"trials: {st.trials}  seed: {st.seed}",
        "outcome counts (rows i=1..4, cols j=1..4):",
        *("  " + " ".join(f"{n:>8d}" for n in row) for row in st.outcome_counts),
        f"empirical success rate: {fnum(st.empirical_success_rate, False)}",
        f"mean fidelity on success: {mean_fid}",
    ]
    return {**head, "stats": stats}, "\n".join(lines)


def cmd_verify(args) -> tuple[dict, str]:
    if args.ref.startswith("random:"):
        n = _int_suffix(args.ref)
        if n < 1:
            raise BadParameter("random:N needs N >= 1")
        channels = [random_channel(s) for s in range(n)]
    else:
        channels = [resolve_channel(args.ref)]

    worst = dict.fromkeys(VERIFY_TOLS, 0.0)
    for idx, c in enumerate(channels):
        ops = extract_all(c)
        worst["completeness"] = max(worst["completeness"], completeness_defect(ops))
        worst["pauli_relation"] = max(worst["pauli_relation"], pauli_relation_defect(ops))
        for k in range(VERIFY_STATES_PER_CHANNEL):
            chi = InputState.random(1000 * idx + k)
            worst["reconstruction"] = max(worst["reconstruction"], reconstruction_defect(c, chi.amps, ops))
            worst["oracle_equivalence"] = max(worst["oracle_equivalence"], oracle_equivalence_defect(chi, c))
    checks = [
        {"name": name, "max_defect": worst[name], "tol": tol, "ok": worst[name] <= tol}
        for name, tol in VERIFY_TOLS.items()
    ]
    ok = all(ch["ok"] for ch in checks)
    label = args.ref if len(channels) > 1 else channels[0].label
    payload = {"channels": len(channels), "target": label, "defects": {c["name"]: c["max_defect"] for c in checks},
               "checks": checks, "ok": ok}
    lines = [f"verify: {label} ({len(channels)} channel{'s' if len(channels) != 1 else ''})"]
    for ch in checks:
        lines.append(f"  {'PASS' if ch['ok'] else 'FAIL'}  {ch['name']:<20} max defect {ch['max_defect']:.3e}  tol {ch['tol']:.0e}")
    return payload, "\n".join(lines)


COMMANDS = {
    "catalog": cmd_catalog,
    "analyze": cmd_analyze,
    "operators": cmd_operators,
    "teleport": cmd_teleport,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON document")
    common.add_argument("--tol", type=float, default=None,
                        help=f"classification tolerance (default ${TOL_ENV_VAR} or {DEFAULT.classify:g})")

    p = _Parser(prog="teleport4", description="Two-qubit teleportation through four-qubit channels.")
    p.add_argument("--version", action="version", version=f"teleport4 {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", parents=[common], help="list builtin channels")
    a = sub.add_parser("analyze", parents=[common], help="operator, singular values, verdict")
    a.add_argument("ref")
    o = sub.add_parser("operators", parents=[common], help="print transformation operators")
    o.add_argument("ref")
    o.add_argument("--all", action="store_true", help="all 16 operators")
    t = sub.add_parser("teleport", parents=[common], help="simulate the protocol")
    t.add_argument("ref")
    t.add_argument("--state", required=True, help="x0re,x0im,...,x3re,x3im or random:SEED")
    t.add_argument("--enumerate", action="store_true", help="list all 16 outcome branches")
    t.add_argument("--trials", type=int, default=10000)
    t.add_argument("--seed", type=int, default=0)
    v = sub.add_parser("verify", parents=[common], help="run invariant checks")
    v.add_argument("ref", help="channel reference or random:N")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.tol is None:
            args.tol = from_env().classify
        elif not 0.0 < args.tol < 1.0:
            raise BadParameter("--tol must lie in (0, 1)")
        payload, text = COMMANDS[args.command](args)
    except (CliParseError, ParseError, UnknownName) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except (NormalizationError, BadParameter, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    except (Teleport4Error, Exception) as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL

    if args.json:
        report = {"command": argv, "version": f"teleport4 {__version__}", **payload}
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(text + "\n")
    if args.command == "verify" and not payload["ok"]:
        return EXIT_VERIFY
    return EXIT_OK


def main() -> None:
    sys.exit(run())
