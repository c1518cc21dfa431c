"""Runs the coherence CLI against golden outputs and exit codes."""

import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
DATA = HERE.parent / "data"
GOLDEN = HERE.parent / "golden"

# (golden name, arguments, expected exit code); paths are relative to tests/data
CASES = [
    ("analyze_genus2", ["analyze", "genus2.pres"], 0),
    ("analyze_p1", ["analyze", "p1.pres"], 0),
    ("analyze_p2", ["analyze", "p2.pres"], 0),
    ("certify_genus2", ["certify", "genus2.pres", "--class", "dehn"], 0),
    ("certify_p1_c4t4p", ["certify", "p1.pres", "--class", "c4t4p"], 0),
    ("certify_ab_squared", ["certify", "ab_squared.pres", "--class", "power"], 0),
    ("certify_x5y_squared", ["certify", "x5y_squared.pres", "--class", "power"], 2),
    ("matching_k14", ["matching", "k14.graph"], 2),
    ("matching_k13", ["matching", "k13.graph"], 0),
    ("missing_torus_edge", ["missing-weight", "torus.cx", "--map", "torus_a.map"], 0),
    ("missing_torus_identity", ["missing-weight", "torus.cx", "--map", "torus_id.map"], 0),
    ("missing_t3_square", ["missing-weight", "t3.cx", "--map", "t3_square.map"], 0),
    ("missing_tri3_disc", ["missing-weight", "tri3.cx", "--map", "tri3_disc.map"], 0),
    ("missing_tri3_packed", ["missing-weight", "tri3.cx", "--map", "tri3_boundary_packed.map"], 0),
    ("word_genus2_trivial", ["word", "genus2.pres", "a b a- b- c d c- d- a b a- b- c d c- d-"], 0),
    ("word_genus2_conjugate", ["word", "genus2.pres", "a a b a- b- c d c- d- a-"], 0),
    ("word_genus2_stuck", ["word", "genus2.pres", "a b a- b-"], 2),
    ("subgroup_x4", ["subgroup", "x4.pres", "--gens", "x", "--bound", "6", "--log", "{tmp}/log.json"], 0),
    ("subgroup_genus2_ab", ["subgroup", "genus2.pres", "--gens", "a,b", "--bound", "8", "--log", "{tmp}/log.json"], 0),
]

# (arguments, expected exit code) for errors; only the code is checked
ERRORS = [
    (["certify", "p1.pres", "--class", "dehn"], 1),
    (["certify", "genus2.pres", "--class", "bogus"], 1),
    (["analyze", "missing.pres"], 1),
    (["word", "genus2.pres", "a z"], 1),
    (["subgroup", "p1.pres", "--gens", "a"], 1),
    (["matching"], 1),
]


def run(binary, args, tmp):
    args = [a.replace("{tmp}", tmp) for a in args]
    return subprocess.run([binary, *args], cwd=DATA, capture_output=True, text=True)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("binary")
    parser.add_argument("--update", action="store_true", help="rewrite the golden files")
    opts = parser.parse_args()
    opts.binary = str(Path(opts.binary).resolve())

    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, args, code in CASES:
            proc = run(opts.binary, args, tmp)
            golden = GOLDEN / f"{name}.out"
            if opts.update:
                golden.write_text(proc.stdout)
            if proc.returncode != code:
                failures.append(f"{name}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
            elif proc.stdout != golden.read_text():
                failures.append(f"{name}: output differs from {golden.name}")

        for args, code in ERRORS:
            proc = run(opts.binary, args, tmp)
            if proc.returncode != code:
                failures.append(f"{' '.join(args)}: exit {proc.returncode}, expected {code}")

        # certificates emitted by one process verify in another; edits are caught
        cert = Path(tmp) / "genus2.json"
        proc = run(opts.binary, ["certify", "genus2.pres", "--class", "dehn", "-o", str(cert)], tmp)
        if proc.returncode != 0 or run(opts.binary, ["verify", "genus2.pres", str(cert)], tmp).returncode != 0:
            failures.append("cross-process verification failed")
        if run(opts.binary, ["verify", "p1.pres", str(cert)], tmp).returncode == 0:
            failures.append("certificate verified against the wrong presentation")
        doc = json.loads(cert.read_text())
        doc["multiplicities"]["r0"] = 2
        cert.write_text(json.dumps(doc, indent=2, sort_keys=True))
        if run(opts.binary, ["verify", "genus2.pres", str(cert)], tmp).returncode != 1:
            failures.append("tampered certificate was accepted")

        # the run log is sorted JSON with the trajectory
        run(opts.binary, ["subgroup", "x4.pres", "--gens", "x", "--log", f"{tmp}/x4.json"], tmp)
        log = json.loads(Path(tmp, "x4.json").read_text())
        if log["trajectory"] != [1, 0] or log["status"] != "stable-at-bound":
            failures.append(f"unexpected subgroup log: {log['trajectory']} {log['status']}")

        # fuzz commands reproduce under a fixed seed
        a = run(opts.binary, ["fuzz-matching", "--seed", "7", "--count", "300"], tmp)
        b = run(opts.binary, ["--seed", "7", "fuzz-matching", "--count", "300"], tmp)
        if a.returncode != 0 or a.stdout != b.stdout:
            failures.append("seeded fuzz run failed or did not reproduce")

    for f in failures:
        print("FAIL", f)
    total = len(CASES) + len(ERRORS) + 4
    print(f"{total - len(failures)}/{total} CLI checks passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
