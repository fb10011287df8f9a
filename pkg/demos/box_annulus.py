'''
A ring of eight unit squares split into two L-shaped halves. The halves
meet in two separate boxes, so the cover is not Leray: compare the nerve,
the replacement and the homology of the union itself.
'''
from simprep import (TupleOfFormulas, betti_numbers, box_cover_oracle, intersection_nonempty, load_scene,
                     nerve, simplicial_replacement)

scene = load_scene({
    "dim": 2,
    "sets": {
        "L": [[[0, 0], [2, 1]], [[0, 0], [1, 2]]],
        "R": [[[2, 0], [3, 3]], [[0, 2], [3, 3]]],
    },
})

oracle = box_cover_oracle(scene)
print("L & R ->", [oracle.box_of(m) for m in oracle.cover(0, ("L", "R"))])

#
N, _ = nerve(sorted(scene), lambda ls: intersection_nonempty(scene, ls))
print("nerve betti      ", betti_numbers(N, 1))

res = simplicial_replacement(TupleOfFormulas.of(sorted(scene)), 1, oracle)
print("replacement betti", betti_numbers(res.complex, 1), "with", len(res.poset), "poset elements")

ring = scene["L"].union(scene["R"])
print("cubical betti    ", ring.betti()[:2])
