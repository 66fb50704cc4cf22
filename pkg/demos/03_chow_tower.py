# The Chow ring of P(W) -> T = P(F) -> V and a few integrals on it.

from weierfano import BundleSpec, normalize, surface, weierstrass_tower
from weierfano.chowtower import exceptional_divisor, integrate, integrate_on_xprime, pushforward

P2 = surface("P2")
H = P2.divisor(1)
R = weierstrass_tower(BundleSpec.split(P2.zero(), 2 * H))
T = R.parent
print(R)
print(T)

zT, zW = R.taut(0), R.taut(1)
print("zT^2     =", normalize(T, T.taut(0) ** 2))
print("zW^3     =", normalize(R, zW ** 3))
print("int zT^3 =", integrate(T, T.taut(0) ** 3))  # c1^2 - c2 = 4

# pushing down one level replaces zW^(2+k) by the Segre class s_k of W
for k in range(3):
    print(f"pi_* zW^{2 + k} =", pushforward(R, zW ** (2 + k)))

# the Weierstrass hypersurface X' = 3 zW + 6 zT and its section E = zW / 3
E = exceptional_divisor(R)
antiK = zT + R.divisor(-P2.canonical - 2 * H)
print("(-K_X')^4     =", integrate_on_xprime(R, antiK ** 4))
print("(-K_X' + E)^4 =", integrate_on_xprime(R, (antiK + E) ** 4))
print("E^2 zT H      =", integrate_on_xprime(R, E * E * zT * R.divisor(H)))
