'''
Sub-level sets of the height function on a standing torus, computed on an
8 x 4 grid triangulation. Heights are grouped into six bands t0..t5: bottom,
below the lower saddle, lower saddle, between saddles, upper saddle, top.
'''
import math

from simprep import SimplicialComplex, barcode, betti_numbers, lower_star_filtration
from simprep.persistence import barcodes_to_csv

n, k = 8, 4

def vid(a, b):
    return (a % n) * k + (b % k)

tris = []
for a in range(n):
    for b in range(k):
        tris += [(vid(a, b), vid(a + 1, b), vid(a + 1, b + 1)), (vid(a, b), vid(a, b + 1), vid(a + 1, b + 1))]
T = SimplicialComplex(tris)
print(len(T), "simplices, betti", betti_numbers(T, 2))

#
def band(z):
    for level, cut in enumerate([-3, -1, 0, 1, 3]):
        if z < cut or (z == cut and cut in (-3, 0)):
            return level
    return 5

height = {}
for a in range(n):
    for b in range(k):
        u, v = 2 * math.pi * a / n - math.pi / 2, 2 * math.pi * b / k
        height[vid(a, b)] = band(round((2 + math.cos(v)) * math.sin(u), 3))

F = lower_star_filtration(T, height)
for i, K in enumerate(F.complexes):
    print(f"t{i}", betti_numbers(K, 2))

#
print(barcodes_to_csv(barcode(F, 2)))
