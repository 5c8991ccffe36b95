"""Validates the corpus, its canonical forms and --json reports against the published schemas."""
import glob
import json
import subprocess
import sys

import jsonschema

root, tool = sys.argv[1], sys.argv[2]
V = jsonschema.Draft202012Validator
doc = V(json.load(open(f"{root}/schemas/v1/document.schema.json")))
rep = V(json.load(open(f"{root}/schemas/v1/report.schema.json")))
bad = 0


def report(where, errs):
    global bad
    for e in errs[:1]:
        print(f"FAIL {where}: {e.message}")
        bad += 1


for f in sorted(glob.glob(f"{root}/corpus/*.json")):
    report(f, list(doc.iter_errors(json.load(open(f)))))
    canon = subprocess.run([tool, "canon", f], capture_output=True, text=True, check=True).stdout
    report(f"canon {f}", list(doc.iter_errors(json.loads(canon))))
    for cmd in ("check", "inf"):
        out = subprocess.run([tool, cmd, "--json", f], capture_output=True, text=True).stdout
        report(f"{cmd} {f}", list(rep.iter_errors(json.loads(out))))

if list(doc.iter_errors({"kind": "monoid", "ambient_rank": 2, "generators": [[1, "x"]]})):
    print("ok malformed integer rejected")
else:
    print("FAIL malformed integer accepted")
    bad += 1
print("schema validation:", "PASS" if bad == 0 else f"FAIL ({bad})")
sys.exit(1 if bad else 0)
