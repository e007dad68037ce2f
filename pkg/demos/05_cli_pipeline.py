"""The command-line tool end to end: generate, analyze, solve, verify.

Runs the same steps as

    tmpsolve generate --template nine-point --atoms 9 --seed 1 --out p.json --measure-out truth.json
    tmpsolve analyze p.json
    tmpsolve solve p.json --measure-out found.json
    tmpsolve verify p.json found.json

inside a temporary directory and prints each exit code.
"""

import json
import os
import tempfile

from tmpsolve.cli import main

with tempfile.TemporaryDirectory() as tmp:
    p, truth, found = (os.path.join(tmp, n) for n in ("p.json", "truth.json", "found.json"))
    steps = [
        ["generate", "--template", "nine-point", "--atoms", "9", "--seed", "1", "--out", p, "--measure-out", truth],
        ["analyze", p],
        ["solve", p, "--measure-out", found],
        ["verify", p, found],
        ["verify", p, truth],
    ]
    for argv in steps:
        print("$ tmpsolve", " ".join(os.path.basename(a) if a.startswith(tmp) else a for a in argv))
        code = main(argv)
        print(f"[exit {code}]\n")
    with open(found) as fh:
        print("measure file keys:", sorted(json.load(fh)))
