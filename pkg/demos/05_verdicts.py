"""
Smoothness verdicts across the catalog
======================================

An entry is not smooth when some relation has a linear term in a third
generator.  Otherwise the forced twists are checked directly; if every check
passes the verdict is smooth, and if not it is left undetermined.
"""

from biquad import analyze, catalog_get
from biquad.catalog import DEFAULT_ENTRIES

for name in DEFAULT_ENTRIES:
    v = analyze(catalog_get(name))
    note = ""
    if v.obstruction:
        note = "a%s != 0" % (v.obstruction,)
    elif v.failed_conditions:
        note = "; ".join(f"{c.label} = {c.lhs.render()}" for c in v.failed_conditions[:2])
    print(f"{name:24s} {v.status:13s} {note}")
