#!/usr/bin/env python3
"""Walkthrough: batch certification of a field list plus the plane drawing.

Writes certificates and an SVG drawing into ./demo_output/.
"""

from pathlib import Path

from zformcert import ingest_field_list, parse_polynomial, scan
from zformcert.fields import NumberField
from zformcert.plotting import plot_plane_H

HERE = Path(__file__).parent
OUT = HERE / "demo_output"
SAMPLE = HERE.parent / "tests" / "data" / "cubic_fields_sample.txt"

print(f"=== scanning {SAMPLE.name} with 4 workers ===")
report = scan(ingest_field_list(SAMPLE), out_dir=OUT / "certs", workers=4)
print(report.summary())
print("certificates written to", OUT / "certs")

print("\n=== drawing the trace-zero plane of the exceptional field ===")
field = NumberField.from_polynomial(parse_polynomial("x^3+x^2-2x-1"))
path = plot_plane_H(field, str(OUT / "plane_exceptional.svg"))
print("wrote", path)
