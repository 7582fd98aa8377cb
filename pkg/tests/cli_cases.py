"""CLI invocations covered by golden files, and a renderer shared by the tests.

Run ``python3 tests/cli_cases.py`` from the repository root to rewrite tests/golden/.
"""

from __future__ import annotations

import io
import sys
from pathlib import Path

from eqcross.cli import run_command

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"

I = "instances/"
CASES: dict[str, list[str]] = {
    "validate-conj-z3": ["validate", I + "conj-z3.json"],
    "validate-z3-inversion": ["validate", I + "z3-inversion.json"],
    "validate-swap-query": ["validate", I + "swap-query.json"],
    "validate-bad-assoc": ["validate", I + "bad-assoc.json"],
    "validate-bad-assoc-witness": ["validate", "--witness", I + "bad-assoc.json"],
    "validate-bad-latin": ["validate", "--witness", I + "bad-latin.json"],
    "validate-bad-syntax": ["validate", I + "bad-syntax.json"],
    "pi-conj-z3": ["pi", "--labels", I + "conj-z3.json"],
    "pi-conj-z3-inversion": ["pi", I + "conj-z3-inversion.json"],
    "pi-central-z2-gamma": ["pi", "--labels", I + "central-z2-gamma-z2.json"],
    "h2-central-z2": ["h2", "--q", I + "z2.json", I + "central-z2.json"],
    "h2-central-z2-brute": ["h2", "--method", "brute", "--q", I + "z2.json", I + "central-z2.json"],
    "h2-s3-query-linear": ["h2", "--method", "linear", I + "s3-query.json"],
    "h2-swap-query": ["h2", I + "swap-query.json"],
    "functors-central-z2": ["functors", "--q", I + "z2.json", I + "central-z2.json"],
    "functors-s3-query": ["functors", I + "s3-query.json"],
    "functors-budget": ["functors", "--max-search", "1", "--q", I + "z2.json", I + "central-z2.json"],
    "classify-s3": ["classify", "--labels", I + "s3-query.json"],
    "classify-z6": ["classify", "--labels", I + "z6-query.json"],
    "classify-swap": ["classify", "--labels", I + "swap-query.json"],
    "classify-central-z2": ["classify", "--labels", "--q", I + "z2.json", I + "central-z2.json"],
    "classify-psi-list": ["classify", "--labels", "--psi", "0,1", "--q", I + "z2.json", I + "conj-z3.json"],
    "obstruction-s3": ["obstruction", I + "s3-query.json"],
    "obstruction-default-q": ["obstruction", I + "conj-z3-inversion.json"],
    "torsor-central-z2": ["torsor-check", "--q", I + "z2.json", I + "central-z2.json"],
    "torsor-central-z2-gamma": ["torsor-check", "--q", I + "q-z2-gamma-z2.json", I + "central-z2-gamma-z2.json"],
    "ext-gamma-z3": ["ext-gamma", "--labels", "--q", I + "z2.json", I + "z3.json"],
    "ext-gamma-z2": ["ext-gamma", "--labels", "--q", I + "z2.json", I + "z2.json"],
    "ext-gamma-z3-inversion": ["ext-gamma", "--labels", "--q", I + "q-z2-gamma-z2.json", I + "z3-inversion.json"],
    "oracle-s3": ["oracle-check", I + "s3-query.json"],
    "oracle-swap": ["oracle-check", I + "swap-query.json"],
    "oracle-cap": ["oracle-check", "--max-order", "4", I + "z6-query.json"],
    "error-bad-psi": ["classify", "--psi", "x", I + "s3-query.json"],
    "error-psi-not-hom": ["classify", "--psi", "1,1", "--q", I + "z2.json", I + "conj-z3.json"],
    "error-missing-file": ["validate", I + "missing.json"],
}


def render(argv: list[str]) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    text = "$ eqcross " + " ".join(argv) + "\n" + out.getvalue()
    if err.getvalue():
        text += "[stderr]\n" + err.getvalue()
    return text + f"[exit {code}]\n"


def regenerate() -> None:
    import os
    os.chdir(ROOT)
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.txt").write_text(render(argv), encoding="utf-8")


if __name__ == "__main__":
    sys.path.insert(0, str(ROOT / "src"))
    regenerate()
