"""Defining your own map: the manifest document surface.

A manifest is a plain JSON-able dict naming a chart and a map. Validation is
strict (unknown keys, dimension mismatches and bad expressions are rejected
with positions), and the serialized classification report is byte-stable:
the same manifest always produces the same bytes.
"""

from bieigen import build_map
from bieigen.classify import classify, verify
from bieigen.manifest import ManifestError
from bieigen.report import classification_dict, to_json

# a twice-wound small circle: constant density 2, buckling constant 4 = 2c
manifest = {
    "name": "double_small_circle",
    "chart": {
        "params": ["t"],
        "domain": [[0, "pi"]],
        "periodic": [True],
        "metric": {"mode": "explicit", "g": [["1"]]},
    },
    "map": {
        "target": "sphere",
        "radius": 1.0,
        "components": ["cos(2*t)/sqrt(2)", "sin(2*t)/sqrt(2)", "1/sqrt(2)"],
    },
}

name, smap = build_map(manifest)
report = classify(smap, sample_count=64)
c = report.constants
print(f"{name}: c_hat = {c.c_hat:g}, rho_hat = {c.rho_hat:g}, "
      f"biharmonic = {report.is_biharmonic}, harmonic = {report.is_harmonic}")
print(verify(report, "t4"))

# the JSON report is deterministic down to the byte
doc = classification_dict(name, report)
blob = to_json(doc)
print(f"\nreport is {len(blob)} bytes; stable:",
      blob == to_json(classification_dict(name, report)))

# validation fails loudly, with positions for expression errors
broken = dict(manifest, map={"target": "sphere", "components": ["cos("]})
try:
    build_map(broken)
except ManifestError as err:
    print("\nrejected manifest:", err)
