# Which split bundles pass the positivity filters, and how that depends on the box.

from weierfano import search_split, surface

Q = surface("P1xP1")
for box in range(0, 5):
    found = search_split(Q, box, {"nef", "ruling_type_01", "chern_ineq"})
    print("P1xP1 box", box, [b.label() for b in found])

P2 = surface("P2")
found = search_split(P2, 4, {"gg", "adjoint_ample", "adjoint_gg"})
print("P2", [b.label() for b in found])

# without adjoint_ample the bundles with c1 = 3H get in
print("P2 gg only, box 3:", [b.label() for b in search_split(P2, 3, {"gg"})][:8], "...")
print("P2 gg + adjoint_gg:", [b.label() for b in search_split(P2, 3, {"gg", "adjoint_gg"})])
