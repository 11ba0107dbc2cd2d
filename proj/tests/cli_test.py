"""End-to-end checks of the ladderlab CLI: exit codes, JSON schemas, determinism."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

BINARY = Path(sys.argv[1])
ROOT = Path(sys.argv[2])
GROUPS = ROOT / "data" / "groups"
SCHEMAS = ROOT / "docs" / "schemas"

failures = []


def check(cond, what):
    if not cond:
        failures.append(what)
        print(f"FAIL  {what}")
    else:
        print(f"ok    {what}")


def run(*args):
    proc = subprocess.run([str(BINARY), *map(str, args)], capture_output=True, text=True,
                          timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def groups(*names):
    return ["--groups", *(GROUPS / f"{n}.json" for n in names)]


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = load_registry()


def validate(doc, schema_name, what):
    schema = REGISTRY.contents(f"ladderlab/{schema_name}.schema.json")
    validator = jsonschema.Draft202012Validator(schema, registry=REGISTRY)
    errors = list(validator.iter_errors(doc))
    for e in errors[:3]:
        print(f"      {list(e.absolute_path)}: {e.message[:200]}")
    check(not errors, f"{what} matches {schema_name} schema")


def json_of(what, *args, expect=0):
    code, out, err = run(*args, "--json")
    check(code == expect, f"{what} exits {expect} (got {code}: {err.strip()[:120]})")
    try:
        return json.loads(out)
    except json.JSONDecodeError:
        check(False, f"{what} prints JSON")
        return None


def without_timings(doc):
    return {k: v for k, v in doc.items() if k != "timings_ms"}


Z2Z2 = groups("z2", "z2")

# reduce
code, out, _ = run("reduce", *Z2Z2, "--word", "f0:1 f1:1 f1:1")
check(code == 0 and out.strip() == "f0:1", "reduce cancels f1:1 f1:1")
code, out, _ = run("reduce", *Z2Z2, "--word", "")
check(code == 0 and out.strip() == "ε", "reduce of the empty word is ε")
code, _, _ = run("reduce", *Z2Z2, "--word", "f7:1")
check(code == 2, "reduce rejects an unknown factor with exit 2")

# ball
doc = json_of("ball r=2", "ball", *Z2Z2, "--radius", 2)
if doc:
    validate(doc, "ball", "ball r=2")
    check(doc["count"] == 5 == len(doc["members"]), "Z2*Z2 ball of radius 2 has 5 members")
code, _, _ = run("ball", *Z2Z2, "--radius", 3, "--cap", 2)
check(code == 3, "ball above the cap exits 3")

# index
for extra in ([], ["--negate"], ["--factor", 0]):
    doc = json_of(f"index {extra}", "index", *Z2Z2, "--word", "x1 y1", "--radius", 2, *extra)
    if doc:
        validate(doc, "index-report", f"index {extra}")

# bound
for names, word, radius in [(("z2", "z2"), "x1 y1 x1^-1 y1^-1", 1),
                            (("z2", "z3"), "x1 y1", 2),
                            (("stub", "z2"), "x1 y1", 1),
                            (("z2", "s3", "z3"), "x1 x2 y1", 1)]:
    doc = json_of(f"bound {names} {word!r} r={radius}", "bound", *groups(*names), "--word", word,
                  "--radius", radius)
    if doc:
        validate(doc, "certificate", f"bound {names} {word!r}")
        ids = [s["id"] for s in doc["trace"]]
        check(ids == list(range(len(ids))), "trace ids are consecutive")
        check(all(c < s["id"] for s in doc["trace"] for c in s["children"]),
              "trace lists children before parents")
        check(doc["root"] == ids[-1] and doc["bound"] == doc["trace"][-1]["value"],
              "root is the last step and carries the bound")

# verify
doc = json_of("verify verified", "verify", *Z2Z2, "--word", "x1 y1", "--radius", 1)
if doc:
    validate(doc, "verification-report", "verify")
    check(doc["verdict"] == "VERIFIED", "verify x1 y1 over Z2*Z2 is VERIFIED")
doc = json_of("verify cutoff 1", "verify", *Z2Z2, "--word", "x1 y1", "--radius", 1,
              "--cutoff", 1, expect=4)
if doc:
    validate(doc, "verification-report", "verify cutoff 1")
    check(doc["verdict"] == "CUTOFF_INCONCLUSIVE", "cutoff 1 is inconclusive")
doc = json_of("verify forced bound", "verify", *Z2Z2, "--word", "x1 y1", "--radius", 1,
              "--debug-force-bound", 0, expect=5)
if doc:
    validate(doc, "verification-report", "verify forced bound")
    check(doc["verdict"] == "VIOLATION" and doc["witness"] is not None,
          "forced bound 0 is a VIOLATION with a witness")
code, _, _ = run("verify", *groups("stub", "z2"), "--word", "x1 y1", "--radius", 1)
check(code == 1, "verify on an infinite factor exits 1")

# determinism
runs = [json_of(f"verify threads={t}", "verify", *groups("z2", "z3"), "--word",
                "x1 y1 x1^-1 y1^-1", "--radius", 1, "--threads", t) for t in (1, 1, 4)]
if all(runs):
    check(len({json.dumps(without_timings(r), sort_keys=True) for r in runs}) == 1,
          "verify output is identical across runs and thread counts")
d1 = json_of("verify z2*z3", "verify", *groups("z2", "z3"), "--word", "x1 y1", "--radius", 1)
d2 = json_of("verify z3*z2", "verify", *groups("z3", "z2"), "--word", "x1 y1", "--radius", 1)
if d1 and d2:
    check(d1["config_digest"] != d2["config_digest"], "digest depends on the factor order")

# ramsey
doc = json_of("ramsey", "ramsey", "--colors", 3, "--target", 3)
if doc:
    validate(doc, "ramsey", "ramsey")
    check(doc["value"] == "17", "R(3;3,3,3) bound is 17")
doc = json_of("ramsey large", "ramsey", "--colors", 16, "--target", 40)
if doc:
    validate(doc, "ramsey", "ramsey large")

# parse errors
for args in (["bogus"], ["index", *Z2Z2, "--word", "x0", "--radius", 1],
             ["index", "--groups", ROOT / "CMakeLists.txt", "--word", "x1 y1", "--radius", 1],
             ["ball", *Z2Z2, "--radius", "-1"]):
    code, _, _ = run(*args)
    check(code == 2, f"{[str(a) for a in args][:3]} exits 2 (got {code})")

print(f"\n{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
