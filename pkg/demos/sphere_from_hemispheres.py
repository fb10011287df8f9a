'''
Two hemispheres a, b cover the sphere. They meet in a circle, which is
covered by two arcs c, d; the arcs meet in two points e, f, which are
disjoint. That is all the cover data the construction needs.
'''
from simprep import (TupleOfFormulas, betti_numbers, declared_cover_oracle,
                     simplicial_replacement)

catalog = {
    ("a", "b"): ["c", "d"],
    ("c", "d"): ["e", "f"],
    ("e", "f"): [],
}
oracle = declared_cover_oracle(catalog)

#
res = simplicial_replacement(TupleOfFormulas.of("ab"), 2, oracle)
P = res.poset

for i, e in enumerate(P.elements):
    print(i, e)

# lower index -> upper index
print("hasse:", P.hasse())

#
K = res.complex
print("f-vector:", K.f_vector())
print("betti:", betti_numbers(K, 2))     # a 2-sphere: 1 0 1

# the piece over {a} alone is a single vertex, i.e. a contractible hemisphere
print("over a:", res.sub_complexes[{"a"}].f_vector())
