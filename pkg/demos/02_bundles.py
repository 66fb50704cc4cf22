# Rank-2 bundles by presentation and the h0 that fills the last table column.

import json

from weierfano import BundleSpec, surface
from weierfano.bundle import bundle_from_json, dual_twist_by_minus_K, h0_routes, is_globally_generated

P2 = surface("P2")
H = P2.divisor(1)
O = P2.zero()

bundles = {
    "O+O(1)": BundleSpec.split(O, H),
    "T(-1)": BundleSpec.tangent_twist(),
    "coker(O(-2) -> O^3)": BundleSpec.quotient([-2 * H], [O] * 3),
    "coker(O -> T(-1)+O(1))": BundleSpec.quotient([O], [BundleSpec.tangent_twist(), H]),
}
for name, B in bundles.items():
    print(name, "c1 =", B.c1, "c2 =", B.c2, "gg:", is_globally_generated(B))
    c1, c2 = dual_twist_by_minus_K(B)
    print(f"   twisted dual: c1 = {c1}, c2 = {c2}; h0 routes: {h0_routes(B)}")

# every route that applies has to agree; a pullback to F1 adds one more
g = BundleSpec.pullback(BundleSpec.split(O, H))
print(g.label(), h0_routes(g))

# the same bundles from JSON, as the CLI reads them
spec = {"quotient": {"sub": [[-1, -1]], "middle": [[0, 0], [0, 0], [0, 0]]}}
B = bundle_from_json(surface("P1xP1"), spec)
print(json.dumps(spec), "->", B.label(), (str(B.c1), B.c2))
