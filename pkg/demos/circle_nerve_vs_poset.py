'''
A circle covered by two closed semicircles. The nerve only sees that the
two pieces meet and reports a contractible space; refining the intersection
(two points) restores the loop.
'''
from simprep import (TupleOfFormulas, betti_numbers, build_poset, declared_cover_oracle, nerve,
                     order_complex)

#
K, labels = nerve(["phi0", "phi1"], lambda s: True)
print("nerve:", K.f_vector(), "betti", betti_numbers(K, 1))

#
oracle = declared_cover_oracle({("0", "1"): ["p", "q"], ("p", "q"): []})
P = build_poset(TupleOfFormulas.of("01"), 2, 0, oracle)
for e in P.elements:
    print("  ", e)

D = order_complex(P)
print("order complex:", D.f_vector(), "betti", betti_numbers(D, 1))
