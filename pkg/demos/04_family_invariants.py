# Invariants of all 22 families, recomputed, with the published value next to each.

from weierfano.catalog import builtin_table, regenerate_and_diff
from weierfano.construct import full_report

print(f"{'#':>2}  {'pair':45s} {'K^4':>4} {'K2c2':>5} {'h0':>3}  nu  Abar^4")
for rec in builtin_table():
    r = full_report(rec.input)
    flag = "" if r.k2c2 == rec.expected.k2c2 else f"  (table: {rec.expected.k2c2})"
    abar = "-" if r.abar4 is None else r.abar4
    print(f"{rec.id:>2}  {rec.label:45s} {r.k4:>4} {r.k2c2:>5} {r.h0:>3}  {r.nd_zeta:>2}  {abar!s:>6}{flag}")

diff = regenerate_and_diff()
print(diff.summary())
for line in diff.lines():
    print("  ", line)
