# Picard lattices of the del Pezzo surfaces and their (-1)-curves.

from weierfano import minus_one_curves, surface
from weierfano.surface import SURFACE_NAMES, h0_line, is_ample, rr_line

for name in SURFACE_NAMES:
    S = surface(name)
    K = S.canonical
    print(f"{name:6s} rho={S.picard_rank:2d}  K^2={K.dot(K)}  (-1)-curves={len(minus_one_curves(S))}")

# the 27 lines on a cubic surface, grouped by degree in the plane model
S3 = surface("S3")
by_degree = {}
for C in minus_one_curves(S3):
    by_degree.setdefault(C.coeffs[0], []).append(str(C))
for d, curves in sorted(by_degree.items()):
    print(d, len(curves), curves[:3])

# -K is ample everywhere, and sections of multiples of -K follow Riemann-Roch
S2 = surface("S2")
print(is_ample(S2, -S2.canonical))
for m in range(1, 4):
    D = -m * S2.canonical
    print(m, rr_line(S2, D), h0_line(S2, D))

# a non-nef class loses sections to its fixed part
F1 = surface("F1")
D = F1.divisor(1, 2)  # H + 2E1, with 2E1 fixed
print(D, rr_line(F1, D), h0_line(F1, D))
