'''
Sub-level sets of P = X^4 - 2X^2 on S = [-2, 2], and of a cubic whose
critical values are irrational. Births and deaths come back as exact
algebraic numbers.
'''
from simprep import SubLevelProblem, critical_values_1d, parse_formula, parse_polynomial, sa_barcode_1d
from simprep.persistence import barcodes_to_csv

prob = SubLevelProblem(parse_formula("X^2 <= 4"), parse_polynomial("X^4 - 2*X^2"), ell=1)
print(critical_values_1d(prob))

# two wells born at -1, one dies when they merge at 0
print(barcodes_to_csv(sa_barcode_1d(prob), approx=True))

#
cubic = SubLevelProblem(parse_formula("X^2 <= 4"), parse_polynomial("X^3 - 2*X"), ell=0)
for v in critical_values_1d(cubic):
    print(" ", v)
print(barcodes_to_csv(sa_barcode_1d(cubic), approx=True))
