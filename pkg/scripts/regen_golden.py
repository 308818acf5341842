"""Rewrite the CLI golden files under tests/golden/.

Run after an intentional change to the text rendering:

    python scripts/regen_golden.py
"""

import io
from pathlib import Path

from teleport4.cli import run

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"
CHANNELS = ["yeo-chua", "ghz4", "w4", "cnot-channel"]
COMMANDS = {
    "analyze": lambda ref: ["analyze", ref],
    "operators": lambda ref: ["operators", ref],
    "teleport": lambda ref: ["teleport", ref, "--state", "1,0,0,0,0,0,0,0", "--enumerate"],
}


def golden_cases():
    for cmd, argv in COMMANDS.items():
        for ref in CHANNELS:
            yield GOLDEN / f"{cmd}_{ref}.txt", argv(ref)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for path, argv in golden_cases():
        out = io.StringIO()
        code = run(argv, stdout=out)
        if code != 0:
            raise SystemExit(f"{' '.join(argv)} exited with {code}")
        path.write_text(out.getvalue(), encoding="utf-8")
        print(f"wrote {path.relative_to(GOLDEN.parent.parent)}")


if __name__ == "__main__":
    main()
