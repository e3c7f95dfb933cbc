"""Regenerate tests/golden/*.txt from tests/golden/cases.json.

Each golden holds the exit status on the first line followed by stdout.
Commands run with the fixtures directory as working directory.
"""

import contextlib
import io
import json
import os
import sys
from pathlib import Path

from polarities.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def run_case(argv: list[str]) -> str:
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = main(argv)
    finally:
        os.chdir(cwd)
    return f"exit {status}\n{out.getvalue()}"


def cases() -> list[tuple[str, list[str]]]:
    return [tuple(c) for c in json.loads((GOLDEN / "cases.json").read_text())]


def main_regen() -> int:
    for name, argv in cases():
        (GOLDEN / f"{name}.txt").write_text(run_case(argv))
        print(f"wrote {name}.txt")
    return 0


if __name__ == "__main__":
    sys.exit(main_regen())
