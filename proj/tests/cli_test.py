"""Exit codes, CSV layout and JSON schema conformance of the pmono CLI."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

PMONO, ROOT = sys.argv[1], sys.argv[2]
SCHEMA = json.load(open(os.path.join(ROOT, "schemas", "report.schema.json")))
failures = []


def run(*args):
    p = subprocess.run([PMONO, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def check_json(args, expect_rc=0):
    rc, out, err = run(*args, "--format", "json")
    check(rc == expect_rc, f"{' '.join(args)} exit {rc}, wanted {expect_rc}: {err.strip()}")
    try:
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(False, f"{' '.join(args)}: {str(e).splitlines()[0]}")
        return None
    return doc


# Schema conformance for every command.
doc = check_json(["verify", "--g", "2", "--s", "1..2"])
if doc:
    check(doc["pass"] is True, "verify (2,1..2) passes")
    check(all("timing" not in r for r in doc["reports"]), "no timing unless asked")
    sl = [r for r in doc["reports"] if r["params"]["case"] == "SL2R" and r["params"]["s"] == 2][0]
    check(len(sl["orbits"]["discrepancy"]) > 0, "per-stratum diff present")
doc = check_json(["verify", "--g", "2", "--s", "1", "--timing", "--case", "gl2r"])
if doc:
    check("timing" in doc["reports"][0], "timing when asked")
check_json(["orbits", "--g", "2", "--s", "1"])
check_json(["census", "--g", "2..3", "--s", "1..2"])
check_json(["cover-check", "--g", "1..2", "--s", "1..2", "--allow-low-genus"])
check_json(["sweep", "--g", "2", "--s", "1..2"])

# Sweep CSV.
rc, out, _ = run("sweep", "--g", "2..3", "--s", "1..2", "--case", "all")
rows = list(csv.DictReader(io.StringIO(out)))
check(rc == 0 and len(rows) == 12, f"sweep grid gives 12 rows (got {len(rows)})")
check(out.splitlines()[0] == "g,s,case,component,orbit,min,census,orbit_dim,orbit_total,orbit_reason,closed_total,match",
      "sweep column order")
sl21 = [r for r in rows if r["case"] == "SL2R" and r["g"] == "2" and r["s"] == "1"][0]
check(sl21["component"] == "36" and sl21["census"] == "36", "SL2R(2,1) row: formula 36, census 36")

rc, out, _ = run("sweep", "--g", "4", "--s", "3", "--case", "gl2r")
row = list(csv.DictReader(io.StringIO(out)))[0]
check(rc == 0 and row["orbit_total"] == "" and row["orbit_reason"] == "over_cap", "over-cap row has reason code")

# Exit codes.
check(run("verify", "--g", "2", "--s", "1")[0] == 0, "verify (2,1) exits 0")
check(run("verify", "--g", "1", "--s", "1")[0] == 2, "low genus without override exits 2")
check(run("verify", "--g", "3..2")[0] == 2, "empty range exits 2")
check(run("verify", "--case", "so3")[0] == 2, "unknown case exits 2")
check(run("verify", "--format", "xml")[0] == 2, "unknown format exits 2")
check(run("verify", "--bo-convention", "half")[0] == 2, "unknown convention exits 2")
check(run("frobnicate")[0] == 2, "unknown command exits 2")
check(run("verify", "--out", "/nonexistent/dir/report.json")[0] == 2, "unwritable output exits 2")
check(run("verify", "--include-involution", "/nonexistent/matrix.txt", "--case", "gl2r")[0] == 2,
      "missing matrix file exits 2")

with tempfile.TemporaryDirectory() as tmp:
    # Identity on the GL lattice storage at (2,1): 14 coordinates.
    path = os.path.join(tmp, "id.txt")
    with open(path, "w") as f:
        f.write("# identity\n")
        for i in range(14):
            f.write("".join("1" if j == i else "0" for j in range(14)) + "\n")
    check(run("verify", "--g", "2", "--s", "1", "--case", "gl2r", "--include-involution", path)[0] == 0,
          "identity involution keeps verify green")
    check(run("verify", "--g", "2", "--s", "1", "--include-involution", path)[0] == 2,
          "involution with several cases exits 2")
    check(run("verify", "--g", "2", "--s", "2", "--case", "gl2r", "--include-involution", path)[0] == 2,
          "involution of the wrong size exits 2")

    out = os.path.join(tmp, "r.json")
    check(run("verify", "--g", "2", "--s", "1", "--format", "json", "--out", out)[0] == 0, "verify --out")
    jsonschema.validate(json.load(open(out)), SCHEMA)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
