"""The recorded claim experiment: five graphs, full pipeline, verdicts.

Regenerates results/claim_experiment.json (the committed record the
acceptance suite compares against). The harness records MATCH, MISMATCH or
INCONCLUSIVE as data; nothing here asserts which one comes out.
"""

import json
import os
import tempfile

from hamspec.cli import run_experiment
from hamspec.schedule import desk_profile

GRAPHS = {
    "four_cluster": (4, [(1, 2), (1, 3), (2, 3), (1, 4), (4, 3)]),
    "p3": (3, [(1, 2), (2, 3)]),
    "c4": (4, [(1, 2), (2, 3), (3, 4), (4, 1)]),
    "c5": (5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]),
    "k4": (4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]),
}

here = os.path.dirname(os.path.abspath(__file__))
out_path = os.path.join(here, "..", "results", "claim_experiment.json")

reports = {}
print(f"{'graph':>14} {'n_p':>5} {'paths':>6} {'recovered':>12} {'verdict':>14}")
for name, (n, edges) in GRAPHS.items():
    with tempfile.NamedTemporaryFile("w", suffix=".graph", delete=False) as fh:
        fh.write(f"n {n}\n" + "".join(f"e {a} {b}\n" for a, b in edges))
        path = fh.name
    try:
        report = run_experiment(path, desk_profile(n))
    finally:
        os.unlink(path)
    d = report.to_json_dict(timings=False)
    d["graph"]["file"] = name
    reports[name] = d
    rec = d["extraction"].get("n_h_rounded", "-")
    rec_s = str(rec) if abs(int(rec)) < 10 ** 6 else f"~10^{len(str(abs(int(rec)))) - 1}"
    print(
        f"{name:>14} {d['oracle']['n_p']:>5} {d['oracle']['n_h_directed']:>6} "
        f"{rec_s:>12} {d['verdict']:>14}"
    )

os.makedirs(os.path.dirname(out_path), exist_ok=True)
with open(out_path, "w") as fh:
    json.dump(reports, fh, indent=2)
    fh.write("\n")
print()
print("record written to", os.path.normpath(out_path))
print()
print("reading the verdicts: the pipeline output reaches the solver either")
print("swamped by rounding of the huge high-frequency coefficients (flagged")
print("INCONCLUSIVE via the imaginary part) or misassigned to the decay")
print("channel (clean-looking but wrong: MISMATCH); see demo 04 for why")
